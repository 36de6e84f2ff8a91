#include "frobenius/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace frobenius {

namespace {

void require_nonsingular(const CurveModP& c) {
    if (c.p < 3 || c.p % 2 == 0)
        throw std::invalid_argument("curve modulus " + std::to_string(c.p) + " must be an odd prime");
    if (c.singular())
        throw std::invalid_argument("singular curve: 4a^3 + 27b^2 = 0 mod " + std::to_string(c.p));
}

inline std::int64_t add_mod(std::int64_t x, std::int64_t y, std::int64_t p) {
    x += y;
    return x >= p ? x - p : x;
}

}  // namespace

bool CurveModP::singular() const {
    const std::int64_t a3 = mul_mod(mul_mod(a, a, p), a, p);
    const std::int64_t b2 = mul_mod(b, b, p);
    return mod(4 * a3 + 27 * b2, p) == 0;
}

CurveModP make_curve(std::int64_t p, std::int64_t a, std::int64_t b) {
    if (p < 3) throw std::invalid_argument("make_curve: modulus must be an odd prime");
    return CurveModP{p, mod(a, p), mod(b, p)};
}

std::int64_t trace(const CurveModP& curve) {
    require_nonsingular(curve);
    return trace(curve, QuadraticCharacter(curve.p));
}

std::int64_t trace(const CurveModP& curve, const QuadraticCharacter& chi) {
    require_nonsingular(curve);
    if (chi.prime() != curve.p) throw std::invalid_argument("trace: character table is for a different prime");
    const std::int64_t p = curve.p;
    // Walk v(x) = x^3 + a x + b with forward differences: only additions mod p in the loop.
    std::int64_t v = curve.b;
    std::int64_t d1 = mod(1 + curve.a, p);  // v(x+1) - v(x) at x = 0
    std::int64_t d2 = 6 % p;                // second difference at x = 0
    const std::int64_t d3 = 6 % p;
    std::int64_t sum = 0;
    for (std::int64_t x = 0; x < p; ++x) {
        sum += chi(v);
        v = add_mod(v, d1, p);
        d1 = add_mod(d1, d2, p);
        d2 = add_mod(d2, d3, p);
    }
    return -sum;
}

std::int64_t trace_naive(const CurveModP& curve) {
    require_nonsingular(curve);
    const std::int64_t p = curve.p;
    std::int64_t points = 1;  // point at infinity
    for (std::int64_t x = 0; x < p; ++x) {
        const std::int64_t rhs = mod(mul_mod(mul_mod(x, x, p), x, p) + mul_mod(curve.a, x, p) + curve.b, p);
        for (std::int64_t y = 0; y < p; ++y)
            if (mul_mod(y, y, p) == rhs) ++points;
    }
    return p + 1 - points;
}

double frobenius_angle(std::int64_t a, std::int64_t p) {
    if (a * a > 4 * p)
        throw std::invalid_argument("frobenius_angle: a^2 > 4p for a = " + std::to_string(a) + ", p = " + std::to_string(p));
    const double c = static_cast<double>(a) / (2.0 * std::sqrt(static_cast<double>(p)));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

std::int64_t frobenius_field_disc(std::int64_t a, std::int64_t p) {
    if (a == 0) throw std::invalid_argument("frobenius_field_disc: trace 0 has no Frobenius field in the counter");
    if (a * a > 4 * p) throw std::invalid_argument("frobenius_field_disc: a^2 > 4p");
    return squarefree_part(a * a - 4 * p);
}

}  // namespace frobenius
