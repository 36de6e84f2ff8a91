#pragma once

#include <cstdint>

#include "frobenius/arith.hpp"

namespace frobenius {

/// Short Weierstrass curve Y^2 = X^3 + a X + b over F_p, p an odd prime.
/// Coefficients are stored as residues in [0, p).
struct CurveModP {
    std::int64_t p = 0;
    std::int64_t a = 0;
    std::int64_t b = 0;

    /// 4a^3 + 27b^2 == 0 mod p.
    bool singular() const;

    friend bool operator==(const CurveModP&, const CurveModP&) = default;
};

/// Normalizes coefficients into [0, p).
CurveModP make_curve(std::int64_t p, std::int64_t a, std::int64_t b);

/// Frobenius trace p + 1 - #E(F_p) as minus the character sum of x^3 + ax + b.
/// Throws std::invalid_argument on a singular curve or an even modulus.
std::int64_t trace(const CurveModP& curve);

/// Same, reusing a character table for `curve.p` across many curves.
std::int64_t trace(const CurveModP& curve, const QuadraticCharacter& chi);

/// Point-enumeration oracle for `trace`: O(p^2).
std::int64_t trace_naive(const CurveModP& curve);

/// psi in [0, pi] with cos psi = a / (2 sqrt p). Throws if a^2 > 4p.
double frobenius_angle(std::int64_t a, std::int64_t p);

/// Squarefree part of a^2 - 4p, identifying the Frobenius field Q(sqrt(a^2 - 4p)).
/// Throws for a = 0 or a^2 > 4p.
std::int64_t frobenius_field_disc(std::int64_t a, std::int64_t p);

}  // namespace frobenius
