#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "frobenius/curve.hpp"

namespace frobenius {

/// Integer polynomial, coefficients in ascending degree, trailing zeros trimmed.
/// Arithmetic throws std::overflow_error when a coefficient leaves int64.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(std::vector<std::int64_t> coeffs);
    IntPoly(std::initializer_list<std::int64_t> coeffs) : IntPoly(std::vector<std::int64_t>(coeffs)) {}

    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::int64_t coeff(int i) const;

    std::int64_t eval_mod(std::int64_t w, std::int64_t p) const;
    /// Floating-point evaluation, for diagnostics only.
    double eval(double z) const;
    /// Exact test for num/den being a root (den != 0), by evaluating the homogenized
    /// form modulo enough 61-bit primes to exceed its magnitude.
    bool has_root_at(std::int64_t num, std::int64_t den) const;
    /// Exact sign-free check that this == c * other for some rational c.
    bool proportional_to(const IntPoly& other) const;

    friend IntPoly operator+(const IntPoly& x, const IntPoly& y);
    friend IntPoly operator*(const IntPoly& x, const IntPoly& y);
    friend IntPoly operator*(std::int64_t c, const IntPoly& x);
    friend bool operator==(const IntPoly&, const IntPoly&) = default;

    std::string to_string() const;

private:
    std::vector<std::int64_t> coeffs_;
};

/// Reduced positive fraction u/v.
struct RationalParam {
    std::int64_t u = 1;
    std::int64_t v = 1;

    /// Reduces; throws std::invalid_argument when v == 0.
    static RationalParam make(std::int64_t u, std::int64_t v);
    friend bool operator==(const RationalParam&, const RationalParam&) = default;
};

/// Y^2 = X^3 + f(Z) X + g(Z) over Q(Z), with derived Delta(Z) and j(Z) = j_num / j_den.
struct CurveFamily {
    std::string id;
    IntPoly f;
    IntPoly g;
    IntPoly delta;  // -16 (4 f^3 + 27 g^2)
    IntPoly j_num;  // -1728 (4 f)^3
    IntPoly j_den;  // Delta
    bool nondegenerate = false;

    static CurveFamily from_polys(IntPoly f, IntPoly g, std::string id = {});

    /// Throws DegenerateFamily unless nondegenerate.
    void require_nondegenerate() const;

    /// j(w) mod p, or nullopt when Delta(w) == 0 mod p.
    std::optional<std::int64_t> j_invariant_mod(std::int64_t w, std::int64_t p) const;
};

IntPoly discriminant_poly(const IntPoly& f, const IntPoly& g);
bool is_nondegenerate(const IntPoly& f, const IntPoly& g);

/// f(Z) = 3Z(1728 - Z), g(Z) = 2Z(1728 - Z)^2, for which j(Z) = Z.
CurveFamily j_family();

enum class BadReduction { denominator, discriminant };

using Specialization = std::variant<CurveModP, BadReduction>;

/// u * v^{-1} mod p, or nullopt when p | v.
std::optional<std::int64_t> reduce_mod_p(std::int64_t u, std::int64_t v, std::int64_t p);

/// E(w) over F_p, or nullopt when Delta(w) == 0 mod p.
std::optional<CurveModP> fiber_curve(const CurveFamily& family, std::int64_t w, std::int64_t p);

/// Reduction of E(t) at p. Throws std::invalid_argument for p = 2 (after the
/// denominator check, which is meaningful for every prime).
Specialization specialize_mod_p(const CurveFamily& family, const RationalParam& t, std::int64_t p);

/// A single curve over Q: either a fixed Y^2 = X^3 + A X + B or a family member E(t).
class CurveSource {
public:
    static CurveSource fixed(std::int64_t a, std::int64_t b);
    static CurveSource member(CurveFamily family, RationalParam t);

    /// Good reduction at p (odd), as a curve over F_p; nullopt otherwise.
    std::optional<CurveModP> reduce(std::int64_t p) const;
    std::string describe() const;

private:
    struct Fixed {
        std::int64_t a;
        std::int64_t b;
    };
    struct Member {
        CurveFamily family;
        RationalParam t;
    };
    explicit CurveSource(std::variant<Fixed, Member> v) : source_(std::move(v)) {}
    std::variant<Fixed, Member> source_;
};

}  // namespace frobenius
