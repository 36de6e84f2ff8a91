#include "frobenius/param_set.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace frobenius {

namespace {

void require_positive(std::int64_t T, const char* what) {
    if (T < 1) throw std::invalid_argument(std::string(what) + ": T must be >= 1");
}

}  // namespace

std::vector<RationalParam> farey_enumerate(std::int64_t T) {
    require_positive(T, "farey_enumerate");
    std::vector<RationalParam> out;
    for_each_farey(T, [&](const RationalParam& t) { out.push_back(t); });
    return out;
}

std::int64_t farey_count_mobius(std::int64_t T) {
    const auto mu = mobius_table(T);
    std::int64_t total = 0;
    for (std::int64_t d = 1; d <= T; ++d) total += mu[d] * (T / d) * (T / d);
    return total;
}

std::vector<std::int64_t> sumset_enumerate(const std::vector<std::int64_t>& U, const std::vector<std::int64_t>& V) {
    if (U.empty() || V.empty()) throw std::invalid_argument("sumset_enumerate: U and V must be non-empty");
    std::vector<std::int64_t> out;
    out.reserve(U.size() * V.size());
    for (auto u : U)
        for (auto v : V) out.push_back(u + v);
    return out;
}

ParamSet ParamSet::farey(std::int64_t T) {
    require_positive(T, "ParamSet::farey");
    ParamSet s;
    s.kind_ = Kind::farey;
    s.T_ = T;
    return s;
}

ParamSet ParamSet::interval(std::int64_t T) {
    require_positive(T, "ParamSet::interval");
    ParamSet s;
    s.kind_ = Kind::interval;
    s.T_ = T;
    return s;
}

ParamSet ParamSet::sumset(std::vector<std::int64_t> U, std::vector<std::int64_t> V) {
    if (U.empty() || V.empty()) throw std::invalid_argument("ParamSet::sumset: U and V must be non-empty");
    ParamSet s;
    s.kind_ = Kind::sumset;
    std::int64_t top = 0;
    for (auto x : U) top = std::max(top, x);
    for (auto x : V) top = std::max(top, x);
    s.T_ = top;
    s.U_ = std::move(U);
    s.V_ = std::move(V);
    return s;
}

ParamSet ParamSet::farey_pairs(std::int64_t T) {
    require_positive(T, "ParamSet::farey_pairs");
    ParamSet s;
    s.kind_ = Kind::farey_pairs;
    s.T_ = T;
    return s;
}

std::int64_t ParamSet::size() const {
    switch (kind_) {
        case Kind::farey: return farey_count_mobius(T_);
        case Kind::interval: return T_;
        case Kind::sumset: return static_cast<std::int64_t>(U_.size() * V_.size());
        case Kind::farey_pairs: {
            const auto n = farey_count_mobius(T_);
            return n * n;
        }
    }
    return 0;
}

std::string ParamSet::describe() const {
    switch (kind_) {
        case Kind::farey: return "farey(" + std::to_string(T_) + ")";
        case Kind::interval: return "interval(" + std::to_string(T_) + ")";
        case Kind::sumset:
            return "sumset(#U=" + std::to_string(U_.size()) + ", #V=" + std::to_string(V_.size()) + ")";
        case Kind::farey_pairs: return "farey_pairs(" + std::to_string(T_) + ")";
    }
    return {};
}

std::int64_t ResidueHistogram::mass() const {
    std::int64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

ResidueHistogram residue_histogram(const ParamSet& set, std::int64_t p) {
    if (p < 2) throw std::invalid_argument("residue_histogram: p must be prime");
    ResidueHistogram h;
    h.p = p;
    h.counts.assign(static_cast<std::size_t>(p), 0);
    // Inverse table: inv[v] for 1 <= v < p, built with inv[v] = -(p / v) * inv[p mod v].
    std::vector<std::int64_t> inv(static_cast<std::size_t>(p), 0);
    if (p > 1) inv[1] = 1;
    for (std::int64_t v = 2; v < p; ++v) inv[v] = mod(-(p / v) * inv[p % v], p);
    set.for_each([&](const ParamValue& t) {
        const std::int64_t d = mod(t.den, p);
        if (d == 0) {
            ++h.skipped;
            return;
        }
        ++h.counts[static_cast<std::size_t>(mul_mod(t.num, inv[d], p))];
    });
    return h;
}

std::vector<std::int64_t> self_convolution(const ResidueHistogram& hist) {
    const std::int64_t p = hist.p;
    std::vector<std::pair<std::int64_t, std::int64_t>> support;
    for (std::int64_t w = 0; w < p; ++w)
        if (hist.counts[w] != 0) support.emplace_back(w, hist.counts[w]);
    std::vector<std::int64_t> conv(static_cast<std::size_t>(p), 0);
    for (const auto& [w1, c1] : support)
        for (const auto& [w2, c2] : support) {
            std::int64_t s = w1 + w2;
            if (s >= p) s -= p;
            conv[static_cast<std::size_t>(s)] += c1 * c2;
        }
    return conv;
}

std::int64_t coincidence_count_Q(std::int64_t T, std::int64_t p) {
    const auto h = residue_histogram(ParamSet::farey(T), p);
    std::int64_t q = 0;
    for (auto c : h.counts) q += c * c;
    return q;
}

std::int64_t additive_energy_V(std::int64_t T, std::int64_t p) {
    const auto conv = self_convolution(residue_histogram(ParamSet::farey(T), p));
    std::int64_t v = 0;
    for (auto c : conv) v += c * c;
    return v;
}

std::complex<double> farey_expsum(std::int64_t T, std::int64_t p, std::int64_t m) {
    const auto h = residue_histogram(ParamSet::farey(T), p);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
    std::complex<double> acc{0.0, 0.0};
    for (std::int64_t w = 0; w < p; ++w) {
        if (h.counts[w] == 0) continue;
        acc += static_cast<double>(h.counts[w]) * std::polar(1.0, step * static_cast<double>(mul_mod(m, w, p)));
    }
    return acc;
}

std::vector<std::complex<double>> farey_expsum_all(std::int64_t T, std::int64_t p) {
    const auto h = residue_histogram(ParamSet::farey(T), p);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(p));
    for (std::int64_t k = 0; k < p; ++k) roots[k] = std::polar(1.0, step * static_cast<double>(k));
    std::vector<std::pair<std::int64_t, double>> support;
    for (std::int64_t w = 0; w < p; ++w)
        if (h.counts[w] != 0) support.emplace_back(w, static_cast<double>(h.counts[w]));
    std::vector<std::complex<double>> out(static_cast<std::size_t>(p));
    for (std::int64_t m = 0; m < p; ++m) {
        std::complex<double> acc{0.0, 0.0};
        for (const auto& [w, c] : support) acc += c * roots[static_cast<std::size_t>(m * w % p)];
        out[m] = acc;
    }
    return out;
}

}  // namespace frobenius
