#include "frobenius/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "frobenius/errors.hpp"

namespace frobenius {

double chebyshev_U(int n, double z) {
    if (n < 0) throw std::invalid_argument("chebyshev_U: negative order");
    if (std::fabs(z) > 1.0 + 1e-12) throw std::invalid_argument("chebyshev_U: |z| > 1");
    double prev = 1.0;  // U_0
    if (n == 0) return prev;
    double cur = 2.0 * z;  // U_1
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

// G(-1, z), continuous and increasing on [-1, 1].
double semicircle_cdf(double z) {
    z = std::clamp(z, -1.0, 1.0);
    return (z * std::sqrt(1.0 - z * z) + std::asin(z)) / std::numbers::pi + 0.5;
}

}  // namespace

double semicircle_G(double a, double b) {
    if (!(a >= -1.0 && a < b && b <= 1.0)) throw std::invalid_argument("semicircle_G: need -1 <= a < b <= 1");
    return semicircle_cdf(b) - semicircle_cdf(a);
}

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_)
        if (!(v >= -1.0 && v <= 1.0)) throw std::invalid_argument("Sample: value outside [-1, 1]");
}

std::int64_t interval_count_A(const Sample& sample, double a, double b) {
    if (!(a >= -1.0 && a <= b && b <= 1.0)) throw std::invalid_argument("interval_count_A: need -1 <= a <= b <= 1");
    return std::count_if(sample.values().begin(), sample.values().end(), [&](double v) { return v >= a && v <= b; });
}

DiscrepancyReport discrepancy(const Sample& sample, int k) {
    if (sample.empty()) throw std::invalid_argument("discrepancy: empty sample");
    if (k < 1) throw std::invalid_argument("discrepancy: k must be >= 1");
    const auto m = static_cast<double>(sample.size());

    std::vector<double> sorted = sample.values();
    std::sort(sorted.begin(), sorted.end());
    // Distinct values v_j with N(< v_j) and N(<= v_j).
    struct Point {
        double v;
        double below;     // N(< v)
        double at_most;   // N(<= v)
        double mass;      // m G(-1, v)
    };
    std::vector<Point> pts;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        pts.push_back({sorted[i], static_cast<double>(i), static_cast<double>(j), m * semicircle_cdf(sorted[i])});
        i = j;
    }

    // Excess A - mG on [a, b]: maximize (N(<=b) - F(b)) - (N(<a) - F(a)), a <= b, endpoints at
    // sample values or -1.
    double excess = 0.0;
    {
        double best_a = 0.0;  // a = -1: N(< -1) - F(-1) = 0
        for (const auto& pt : pts) {
            best_a = std::min(best_a, pt.below - pt.mass);
            excess = std::max(excess, (pt.at_most - pt.mass) - best_a);
        }
    }
    // Deficit mG - A on [a, b]: endpoints approach sample values from inside the gaps,
    // a -> v_i^+ (or a = -1) and b -> v_j^- (or b = 1) with i < j.
    double deficit = 0.0;
    {
        double best_a = 0.0;  // a = -1: F(-1) - N(< -1) = 0
        for (const auto& pt : pts) {
            deficit = std::max(deficit, (pt.mass - pt.below) - best_a);
            best_a = std::min(best_a, pt.mass - pt.at_most);
        }
        deficit = std::max(deficit, (m - m) - best_a);  // b = 1
    }

    DiscrepancyReport r;
    r.k = k;
    r.lhs = std::max(excess, deficit);
    r.rhs = m / k;
    r.rhs_terms.assign(static_cast<std::size_t>(k), 0.0);
    // U_n(w_i) for all n at once per sample value via the recurrence.
    std::vector<double> sums(static_cast<std::size_t>(k) + 1, 0.0);
    for (double w : sample.values()) {
        double prev = 1.0, cur = 2.0 * w;
        sums[1] += cur;
        for (int n = 2; n <= k; ++n) {
            const double next = 2.0 * w * cur - prev;
            prev = cur;
            cur = next;
            sums[n] += cur;
        }
    }
    for (int n = 1; n <= k; ++n) {
        r.rhs_terms[n - 1] = std::fabs(sums[n]);
        r.rhs += r.rhs_terms[n - 1] / n;
    }
    r.ratio = r.lhs / r.rhs;
    return r;
}

std::complex<double> michel_sum(const FiberCensus& census, int n, std::int64_t m) {
    if (n < 1) throw std::invalid_argument("michel_sum: n must be >= 1");
    const std::int64_t p = census.p;
    const double root_p = std::sqrt(static_cast<double>(p));
    const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
    std::complex<double> acc{0.0, 0.0};
    for (std::int64_t w = 0; w < p; ++w) {
        const auto& a = census.traces[w];
        if (!a) continue;
        const double z = std::clamp(static_cast<double>(*a) / (2.0 * root_p), -1.0, 1.0);
        acc += chebyshev_U(n, z) * std::polar(1.0, step * static_cast<double>(mul_mod(m, w, p)));
    }
    return acc;
}

std::complex<double> michel_sum(const CurveFamily& family, std::int64_t p, int n, std::int64_t m) {
    return michel_sum(*CensusCache::shared().get(family, p), n, m);
}

namespace {

void check_regime(std::int64_t p, std::int64_t T, bool allow_small_p, const char* who) {
    if (p <= T && !allow_small_p)
        throw HypothesisViolation(std::string(who) + ": requires p > T (p = " + std::to_string(p) +
                                  ", T = " + std::to_string(T) + ")");
}

std::int64_t count_window(const FiberCensus& census, const std::vector<std::int64_t>& weights,
                          const AngleWindow& window) {
    std::int64_t total = 0;
    for (std::int64_t w = 0; w < census.p; ++w) {
        if (weights[w] == 0) continue;
        const auto& a = census.traces[w];
        if (a && window.contains(*a, census.p)) total += weights[w];
    }
    return total;
}

}  // namespace

std::int64_t angle_counter_B(const CurveFamily& family, std::int64_t T, std::int64_t p, const AngleWindow& window,
                             bool allow_small_p) {
    check_regime(p, T, allow_small_p, "angle_counter_B");
    const auto census = CensusCache::shared().get(family, p);
    const auto pair_sums = self_convolution(residue_histogram(ParamSet::farey(T), p));
    return count_window(*census, pair_sums, window);
}

std::int64_t angle_counter_C(const CurveFamily& family, std::int64_t T, std::int64_t p, const AngleWindow& window,
                             bool allow_small_p) {
    check_regime(p, T, allow_small_p, "angle_counter_C");
    const auto census = CensusCache::shared().get(family, p);
    std::vector<std::int64_t> weights(static_cast<std::size_t>(p), 0);
    for (std::int64_t t = 1; t <= T; ++t) ++weights[static_cast<std::size_t>(t % p)];
    return count_window(*census, weights, window);
}

std::int64_t angle_counter_D(const CurveFamily& family, const std::vector<std::int64_t>& U,
                             const std::vector<std::int64_t>& V, std::int64_t p, const AngleWindow& window,
                             bool allow_small_p) {
    if (U.empty() || V.empty()) throw std::invalid_argument("angle_counter_D: U and V must be non-empty");
    std::int64_t T = 0;
    for (auto u : U) T = std::max(T, u);
    for (auto v : V) T = std::max(T, v);
    check_regime(p, T, allow_small_p, "angle_counter_D");
    const auto census = CensusCache::shared().get(family, p);
    std::vector<std::int64_t> hu(static_cast<std::size_t>(p), 0), hv(static_cast<std::size_t>(p), 0);
    for (auto u : U) ++hu[static_cast<std::size_t>(mod(u, p))];
    for (auto v : V) ++hv[static_cast<std::size_t>(mod(v, p))];
    std::vector<std::int64_t> weights(static_cast<std::size_t>(p), 0);
    for (std::int64_t a = 0; a < p; ++a) {
        if (hu[a] == 0) continue;
        for (std::int64_t b = 0; b < p; ++b)
            if (hv[b] != 0) weights[static_cast<std::size_t>((a + b) % p)] += hu[a] * hv[b];
    }
    return count_window(*census, weights, window);
}

}  // namespace frobenius
