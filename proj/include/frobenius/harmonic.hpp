#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "frobenius/statistics.hpp"

namespace frobenius {

/// U_n(z) by the three-term recurrence. Throws if |z| > 1 + 1e-12.
double chebyshev_U(int n, double z);

/// G(a, b) = (2/pi) int_a^b sqrt(1 - z^2) dz, for -1 <= a < b <= 1.
double semicircle_G(double a, double b);

/// Values in [-1, 1] (cosines of Frobenius angles, repetitions allowed).
class Sample {
public:
    Sample() = default;
    explicit Sample(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

private:
    std::vector<double> values_;
};

/// Number of sample values in the closed interval [a, b].
std::int64_t interval_count_A(const Sample& sample, double a, double b);

struct DiscrepancyReport {
    double lhs = 0.0;                // sup over [a, b] of |A([a,b]) - m G(a,b)|
    std::vector<double> rhs_terms;   // |sum_i U_n(w_i)| for n = 1..k
    int k = 0;
    double rhs = 0.0;                // m/k + sum_n rhs_terms[n-1] / n
    double ratio = 0.0;              // lhs / rhs
};

/// Exact sup deviation from the semicircle law next to the Chebyshev-sum bound
/// truncated at order k.
DiscrepancyReport discrepancy(const Sample& sample, int k);

/// sum over good w of U_n(cos psi_p(E(w))) e_p(m w), from the fiber census.
std::complex<double> michel_sum(const FiberCensus& census, int n, std::int64_t m);
std::complex<double> michel_sum(const CurveFamily& family, std::int64_t p, int n, std::int64_t m);

/// Pairs (r, s) in F(T)^2 with Delta(r + s) != 0 mod p and psi_p(E(r + s)) in the window.
/// Throws HypothesisViolation when p <= T unless allow_small_p.
std::int64_t angle_counter_B(const CurveFamily& family, std::int64_t T, std::int64_t p, const AngleWindow& window,
                             bool allow_small_p = false);

/// t in I(T) with Delta(t) != 0 mod p and psi_p(E(t)) in the window.
std::int64_t angle_counter_C(const CurveFamily& family, std::int64_t T, std::int64_t p, const AngleWindow& window,
                             bool allow_small_p = false);

/// (u, v) in U x V with Delta(u + v) != 0 mod p and psi_p(E(u + v)) in the window.
std::int64_t angle_counter_D(const CurveFamily& family, const std::vector<std::int64_t>& U,
                             const std::vector<std::int64_t>& V, std::int64_t p, const AngleWindow& window,
                             bool allow_small_p = false);

}  // namespace frobenius
