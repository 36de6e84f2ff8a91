#include "frobenius/family.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "frobenius/errors.hpp"

namespace frobenius {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("IntPoly: coefficient exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

i128 checked_add(i128 x, i128 y) {
    i128 r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("IntPoly: intermediate overflow");
    return r;
}

// Deterministic Miller-Rabin for n < 2^64.
bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
        if (n % q == 0) return n == q;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mulm = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
    };
    for (std::uint64_t base : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = 1, b = base % n, e = d;
        while (e) {
            if (e & 1) x = mulm(x, b);
            b = mulm(b, b);
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulm(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Primes just below 2^61, found on first use.
const std::vector<std::int64_t>& large_primes(std::size_t count) {
    static std::vector<std::int64_t> cache;
    static std::mutex guard;
    std::lock_guard lock(guard);
    std::int64_t candidate = cache.empty() ? (std::int64_t{1} << 61) - 1 : cache.back() - 2;
    while (cache.size() < count) {
        if (is_prime_u64(static_cast<std::uint64_t>(candidate))) cache.push_back(candidate);
        candidate -= 2;
    }
    return cache;
}

}  // namespace

IntPoly::IntPoly(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::int64_t IntPoly::coeff(int i) const {
    return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(i)] : 0;
}

std::int64_t IntPoly::eval_mod(std::int64_t w, std::int64_t p) const {
    std::int64_t acc = 0;
    w = mod(w, p);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = mod(mul_mod(acc, w, p) + mod(*it, p), p);
    return acc;
}

double IntPoly::eval(double z) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + static_cast<double>(*it);
    return acc;
}

bool IntPoly::has_root_at(std::int64_t num, std::int64_t den) const {
    if (den == 0) throw std::invalid_argument("has_root_at: zero denominator");
    if (is_zero()) return true;
    const int d = degree();
    // |sum c_i num^i den^(d-i)| <= (sum |c_i|) * max(|num|, |den|)^d
    double bits = 0.0;
    {
        double coeff_sum = 0.0;
        for (auto c : coeffs_) coeff_sum += std::fabs(static_cast<double>(c));
        const double base = std::max(std::fabs(static_cast<double>(num)), std::fabs(static_cast<double>(den)));
        bits = std::log2(coeff_sum) + d * std::log2(std::max(base, 1.0)) + 2.0;
    }
    const auto needed = static_cast<std::size_t>(std::ceil(bits / 60.0)) + 1;
    const auto& primes = large_primes(needed);
    for (std::size_t k = 0; k < needed; ++k) {
        const std::int64_t q = primes[k];
        const std::int64_t n = mod(num, q);
        const std::int64_t m = mod(den, q);
        // Homogenized Horner: acc_i = acc_{i+1} * num + c_i * den^(d-i).
        std::int64_t acc = 0;
        std::int64_t den_pow = 1;
        for (int i = d; i >= 0; --i) {
            acc = mod(mul_mod(acc, n, q) + mul_mod(mod(coeffs_[i], q), den_pow, q), q);
            den_pow = mul_mod(den_pow, m, q);
        }
        if (acc != 0) return false;
    }
    return true;
}

bool IntPoly::proportional_to(const IntPoly& other) const {
    if (other.is_zero()) return is_zero();
    const int k = other.degree();
    const i128 qk = other.coeffs_.back();
    const i128 pk = coeff(k);
    const int top = std::max(degree(), other.degree());
    for (int i = 0; i <= top; ++i)
        if (static_cast<i128>(coeff(i)) * qk != static_cast<i128>(other.coeff(i)) * pk) return false;
    return true;
}

IntPoly operator+(const IntPoly& x, const IntPoly& y) {
    std::vector<std::int64_t> out(std::max(x.coeffs_.size(), y.coeffs_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = narrow(static_cast<i128>(x.coeff(static_cast<int>(i))) + y.coeff(static_cast<int>(i)));
    return IntPoly(std::move(out));
}

IntPoly operator*(const IntPoly& x, const IntPoly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<i128> acc(x.coeffs_.size() + y.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < y.coeffs_.size(); ++j)
            acc[i + j] = checked_add(acc[i + j], static_cast<i128>(x.coeffs_[i]) * y.coeffs_[j]);
    std::vector<std::int64_t> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = narrow(acc[i]);
    return IntPoly(std::move(out));
}

IntPoly operator*(std::int64_t c, const IntPoly& x) {
    std::vector<std::int64_t> out(x.coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = narrow(static_cast<i128>(c) * x.coeffs_[i]);
    return IntPoly(std::move(out));
}

std::string IntPoly::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
    os << ']';
    return os.str();
}

RationalParam RationalParam::make(std::int64_t u, std::int64_t v) {
    if (v == 0) throw std::invalid_argument("RationalParam: zero denominator");
    if (v < 0) {
        u = -u;
        v = -v;
    }
    const std::int64_t g = std::gcd(u, v);
    return RationalParam{u / g, v / g};
}

IntPoly discriminant_poly(const IntPoly& f, const IntPoly& g) {
    return -16 * (4 * (f * f * f) + 27 * (g * g));
}

bool is_nondegenerate(const IntPoly& f, const IntPoly& g) {
    const IntPoly delta = discriminant_poly(f, g);
    if (delta.is_zero()) return false;
    const IntPoly four_f = 4 * f;
    const IntPoly j_num = -1728 * (four_f * four_f * four_f);
    return !j_num.proportional_to(delta);
}

CurveFamily CurveFamily::from_polys(IntPoly f, IntPoly g, std::string id) {
    CurveFamily fam;
    fam.id = id.empty() ? "f=" + f.to_string() + ";g=" + g.to_string() : std::move(id);
    fam.delta = discriminant_poly(f, g);
    const IntPoly four_f = 4 * f;
    fam.j_num = -1728 * (four_f * four_f * four_f);
    fam.j_den = fam.delta;
    fam.nondegenerate = !fam.delta.is_zero() && !fam.j_num.proportional_to(fam.j_den);
    fam.f = std::move(f);
    fam.g = std::move(g);
    return fam;
}

void CurveFamily::require_nondegenerate() const {
    if (!nondegenerate)
        throw DegenerateFamily("family " + id + " is degenerate: Delta(Z) vanishes or j(Z) is constant");
}

std::optional<std::int64_t> CurveFamily::j_invariant_mod(std::int64_t w, std::int64_t p) const {
    const std::int64_t den = j_den.eval_mod(w, p);
    if (den == 0) return std::nullopt;
    return mul_mod(j_num.eval_mod(w, p), mod_inverse(den, p), p);
}

CurveFamily j_family() {
    const IntPoly z_term{0, 1};
    const IntPoly t{1728, -1};
    return CurveFamily::from_polys(3 * (z_term * t), 2 * (z_term * t * t), "j-family");
}

std::optional<std::int64_t> reduce_mod_p(std::int64_t u, std::int64_t v, std::int64_t p) {
    if (mod(v, p) == 0) return std::nullopt;
    return mul_mod(u, mod_inverse(v, p), p);
}

std::optional<CurveModP> fiber_curve(const CurveFamily& family, std::int64_t w, std::int64_t p) {
    if (family.delta.eval_mod(w, p) == 0) return std::nullopt;
    return CurveModP{p, family.f.eval_mod(w, p), family.g.eval_mod(w, p)};
}

Specialization specialize_mod_p(const CurveFamily& family, const RationalParam& t, std::int64_t p) {
    family.require_nondegenerate();
    if (!is_prime(p)) throw std::invalid_argument("specialize_mod_p: " + std::to_string(p) + " is not prime");
    const auto w = reduce_mod_p(t.u, t.v, p);
    if (!w) return BadReduction::denominator;
    if (p < 3) throw std::invalid_argument("specialize_mod_p: short Weierstrass reduction needs an odd prime");
    const auto curve = fiber_curve(family, *w, p);
    if (!curve) return BadReduction::discriminant;
    return *curve;
}

CurveSource CurveSource::fixed(std::int64_t a, std::int64_t b) {
    const i128 disc = 4 * static_cast<i128>(a) * a * a + 27 * static_cast<i128>(b) * b;
    if (disc == 0) throw DegenerateFamily("curve Y^2 = X^3 + AX + B is singular over Q");
    return CurveSource(Fixed{a, b});
}

CurveSource CurveSource::member(CurveFamily family, RationalParam t) {
    family.require_nondegenerate();
    if (family.delta.has_root_at(t.u, t.v))
        throw std::invalid_argument("CurveSource: Delta vanishes at the chosen parameter");
    return CurveSource(Member{std::move(family), t});
}

std::optional<CurveModP> CurveSource::reduce(std::int64_t p) const {
    if (p < 3) return std::nullopt;
    if (const auto* fx = std::get_if<Fixed>(&source_)) {
        const CurveModP c = make_curve(p, fx->a, fx->b);
        if (c.singular()) return std::nullopt;
        return c;
    }
    const auto& m = std::get<Member>(source_);
    const auto w = reduce_mod_p(m.t.u, m.t.v, p);
    if (!w) return std::nullopt;
    return fiber_curve(m.family, *w, p);
}

std::string CurveSource::describe() const {
    if (const auto* fx = std::get_if<Fixed>(&source_))
        return "Y^2 = X^3 + " + std::to_string(fx->a) + "X + " + std::to_string(fx->b);
    const auto& m = std::get<Member>(source_);
    return m.family.id + " at t=" + std::to_string(m.t.u) + "/" + std::to_string(m.t.v);
}

}  // namespace frobenius
