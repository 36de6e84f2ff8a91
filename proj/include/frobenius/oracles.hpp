#pragma once

// Independent reference computations used by the test and acceptance suites.
// Nothing here shares a code path with the histogram/census routes it checks.

#include <cstdint>
#include <functional>
#include <vector>

#include "frobenius/family.hpp"
#include "frobenius/statistics.hpp"

namespace frobenius::oracle {

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

/// (2/pi) int_alpha^beta sin^2.
double st_density_quadrature(double alpha, double beta);

/// (2/pi) int_a^b sqrt(1 - z^2).
double semicircle_quadrature(double a, double b);

/// sin((n + 1) theta) / sin(theta).
double chebyshev_U_trig(int n, double theta);

/// z_i with G(-1, z_i) = (i - 1/2)/m, by bisection.
std::vector<double> semicircle_quantiles(std::size_t m);

/// Max |A - mG| over intervals whose endpoints sit at sample values, just
/// inside or outside them, or at +-1. O(m^2 log m).
double discrepancy_brute(const std::vector<double>& sample);

/// Pairs of F(T) fractions with p !| v1 v2 and u1 v2 = u2 v1 mod p.
std::int64_t coincidence_pairs(std::int64_t T, std::int64_t p);

/// Quadruples of F(T) fractions with p !| v1v2v3v4 and r1 + r2 = r3 + r4 mod p.
std::int64_t energy_quadruples(std::int64_t T, std::int64_t p);

/// Angle counters by specializing every parameter separately (no census, no histogram).
std::int64_t counter_B_brute(const CurveFamily& family, std::int64_t T, std::int64_t p, const AngleWindow& window);
std::int64_t counter_C_brute(const CurveFamily& family, std::int64_t T, std::int64_t p, const AngleWindow& window);
std::int64_t counter_D_brute(const CurveFamily& family, const std::vector<std::int64_t>& U,
                             const std::vector<std::int64_t>& V, std::int64_t p, const AngleWindow& window);

}  // namespace frobenius::oracle
