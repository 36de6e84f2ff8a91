"""Frobenius trace, field and angle statistics over elliptic-curve families."""

from ._core import (
    ConfigError,
    DegenerateFamily,
    HypothesisViolation,
    additive_energy_V,
    chebyshev_U,
    coincidence_count_Q,
    farey_count,
    farey_expsum,
    fiber_census,
    frobenius_angle,
    frobenius_field_disc,
    isqrt,
    legendre,
    michel_sum,
    mobius,
    mod_inverse,
    pi_angle,
    pi_field,
    pi_trace,
    preset_names,
    primes,
    run_config,
    run_preset,
    run_suite,
    semicircle_G,
    squarefree_part,
    st_density,
    trace,
    trace_naive,
)

J_FAMILY = {"preset": "j-family"}

__all__ = [name for name in dir() if not name.startswith("_")]
