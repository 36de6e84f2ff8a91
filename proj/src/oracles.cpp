#include "frobenius/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "frobenius/param_set.hpp"

namespace frobenius::oracle {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

bool in_window(std::int64_t a, std::int64_t p, const AngleWindow& w) {
    const double psi = frobenius_angle(a, p);
    return psi >= w.alpha() - 1e-12 && psi <= w.beta() + 1e-12;
}

// Window membership of E(num/den) at p by direct specialization; false on bad reduction.
bool member_in_window(const CurveFamily& family, std::int64_t num, std::int64_t den, std::int64_t p,
                      const AngleWindow& w) {
    if (mod(den, p) == 0) return false;
    const std::int64_t residue = mod(mod(num, p) * mod_inverse(den, p), p);
    const auto curve = fiber_curve(family, residue, p);
    return curve && in_window(trace(*curve), p, w);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

double st_density_quadrature(double alpha, double beta) {
    return integrate([](double t) { return 2.0 / std::numbers::pi * std::sin(t) * std::sin(t); }, alpha, beta);
}

double semicircle_quadrature(double a, double b) {
    // z = cos(theta)
    const double ta = std::acos(std::clamp(b, -1.0, 1.0));
    const double tb = std::acos(std::clamp(a, -1.0, 1.0));
    return st_density_quadrature(ta, tb);
}

double chebyshev_U_trig(int n, double theta) { return std::sin((n + 1) * theta) / std::sin(theta); }

std::vector<double> semicircle_quantiles(std::size_t m) {
    auto cdf = [](double z) { return (z * std::sqrt(1.0 - z * z) + std::asin(z)) / std::numbers::pi + 0.5; };
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double target = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
        double lo = -1.0, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            (cdf(mid) < target ? lo : hi) = mid;
        }
        out[i] = 0.5 * (lo + hi);
    }
    return out;
}

double discrepancy_brute(const std::vector<double>& sample) {
    const double m = static_cast<double>(sample.size());
    std::vector<double> ends{-1.0, 1.0};
    for (double v : sample)
        for (double e : {v - 1e-9, v, v + 1e-9}) ends.push_back(std::clamp(e, -1.0, 1.0));
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    auto G = [](double a, double b) { return semicircle_quadrature(a, b); };
    double best = 0.0;
    for (std::size_t i = 0; i < ends.size(); ++i)
        for (std::size_t j = i + 1; j < ends.size(); ++j) {
            const double a = ends[i], b = ends[j];
            const auto count = std::count_if(sample.begin(), sample.end(), [&](double v) { return v >= a && v <= b; });
            best = std::max(best, std::fabs(static_cast<double>(count) - m * G(a, b)));
        }
    return best;
}

std::int64_t coincidence_pairs(std::int64_t T, std::int64_t p) {
    const auto fr = farey_enumerate(T);
    std::int64_t n = 0;
    for (const auto& r : fr)
        for (const auto& s : fr) {
            if (r.v % p == 0 || s.v % p == 0) continue;
            if (mod(r.u * s.v - s.u * r.v, p) == 0) ++n;
        }
    return n;
}

std::int64_t energy_quadruples(std::int64_t T, std::int64_t p) {
    std::vector<RationalParam> fr;
    for (const auto& r : farey_enumerate(T))
        if (r.v % p != 0) fr.push_back(r);
    std::int64_t n = 0;
    for (const auto& a : fr)
        for (const auto& b : fr)
            for (const auto& c : fr)
                for (const auto& d : fr) {
                    // a + b - c - d = 0 mod p, cleared of denominators
                    const std::int64_t lhs = (a.u * b.v + b.u * a.v) * (c.v * d.v);
                    const std::int64_t rhs = (c.u * d.v + d.u * c.v) * (a.v * b.v);
                    if (mod(lhs - rhs, p) == 0) ++n;
                }
    return n;
}

std::int64_t counter_B_brute(const CurveFamily& family, std::int64_t T, std::int64_t p, const AngleWindow& window) {
    const auto fr = farey_enumerate(T);
    std::int64_t n = 0;
    for (const auto& r : fr)
        for (const auto& s : fr)
            if (member_in_window(family, r.u * s.v + s.u * r.v, r.v * s.v, p, window)) ++n;
    return n;
}

std::int64_t counter_C_brute(const CurveFamily& family, std::int64_t T, std::int64_t p, const AngleWindow& window) {
    std::int64_t n = 0;
    for (std::int64_t t = 1; t <= T; ++t)
        if (member_in_window(family, t, 1, p, window)) ++n;
    return n;
}

std::int64_t counter_D_brute(const CurveFamily& family, const std::vector<std::int64_t>& U,
                             const std::vector<std::int64_t>& V, std::int64_t p, const AngleWindow& window) {
    std::int64_t n = 0;
    for (auto u : U)
        for (auto v : V)
            if (member_in_window(family, u + v, 1, p, window)) ++n;
    return n;
}

}  // namespace frobenius::oracle
