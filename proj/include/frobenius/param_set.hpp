#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "frobenius/family.hpp"

namespace frobenius {

/// A parameter value num/den as enumerated. Farey fractions are reduced;
/// Farey-pair sums r + s keep the product denominator v1*v2.
struct ParamValue {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

template <class Fn>
void for_each_farey(std::int64_t T, Fn&& fn) {
    for (std::int64_t v = 1; v <= T; ++v)
        for (std::int64_t u = 1; u <= T; ++u)
            if (std::gcd(u, v) == 1) fn(RationalParam{u, v});
}

/// F(T): coprime (u, v) with 1 <= u, v <= T, each once.
std::vector<RationalParam> farey_enumerate(std::int64_t T);

/// sum_{d <= T} mu(d) floor(T/d)^2.
std::int64_t farey_count_mobius(std::int64_t T);

/// u + v for every ordered pair in U x V. Throws on an empty list.
std::vector<std::int64_t> sumset_enumerate(const std::vector<std::int64_t>& U, const std::vector<std::int64_t>& V);

class ParamSet {
public:
    enum class Kind { farey, interval, sumset, farey_pairs };

    static ParamSet farey(std::int64_t T);
    static ParamSet interval(std::int64_t T);
    static ParamSet sumset(std::vector<std::int64_t> U, std::vector<std::int64_t> V);
    static ParamSet farey_pairs(std::int64_t T);

    Kind kind() const { return kind_; }
    std::int64_t T() const { return T_; }
    const std::vector<std::int64_t>& U() const { return U_; }
    const std::vector<std::int64_t>& V() const { return V_; }

    /// Number of enumerated values, with multiplicity.
    std::int64_t size() const;
    std::string describe() const;

    template <class Fn>
    void for_each(Fn&& fn) const {
        switch (kind_) {
            case Kind::farey:
                for_each_farey(T_, [&](const RationalParam& t) { fn(ParamValue{t.u, t.v}); });
                break;
            case Kind::interval:
                for (std::int64_t t = 1; t <= T_; ++t) fn(ParamValue{t, 1});
                break;
            case Kind::sumset:
                for (auto u : U_)
                    for (auto v : V_) fn(ParamValue{u + v, 1});
                break;
            case Kind::farey_pairs: {
                const auto fr = farey_enumerate(T_);
                for (const auto& r : fr)
                    for (const auto& s : fr) fn(ParamValue{r.u * s.v + s.u * r.v, r.v * s.v});
                break;
            }
        }
    }

private:
    Kind kind_ = Kind::interval;
    std::int64_t T_ = 0;
    std::vector<std::int64_t> U_;
    std::vector<std::int64_t> V_;
};

/// counts[w] = number of enumerated values congruent to w mod p; values with p | den are skipped.
struct ResidueHistogram {
    std::int64_t p = 0;
    std::vector<std::int64_t> counts;
    std::int64_t skipped = 0;

    std::int64_t count(std::int64_t w) const { return counts[static_cast<std::size_t>(mod(w, p))]; }
    std::int64_t mass() const;
};

ResidueHistogram residue_histogram(const ParamSet& set, std::int64_t p);

/// H(s) = #{(w1, w2) : w1 + w2 = s mod p} weighted by hist counts.
std::vector<std::int64_t> self_convolution(const ResidueHistogram& hist);

/// Q_{T,p} = sum_w R(w)^2 over the Farey histogram.
std::int64_t coincidence_count_Q(std::int64_t T, std::int64_t p);

/// V_{T,p} = sum_s C(s)^2, C the self-convolution of the Farey histogram.
std::int64_t additive_energy_V(std::int64_t T, std::int64_t p);

/// S(m) = sum_{u/v in F(T), p !| v} e_p(m u v^{-1}).
std::complex<double> farey_expsum(std::int64_t T, std::int64_t p, std::int64_t m);

/// S(0), ..., S(p-1) from a shared table of p-th roots of unity.
std::vector<std::complex<double>> farey_expsum_all(std::int64_t T, std::int64_t p);

}  // namespace frobenius
