#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "frobenius/family.hpp"
#include "frobenius/param_set.hpp"

namespace frobenius {

/// Target traces {a_p}: constant, zero, extremal -isqrt(4p), or a custom table.
class TraceSequence {
public:
    enum class Kind { constant, zero, extremal, custom };

    static TraceSequence constant(std::int64_t a);
    static TraceSequence zero();
    static TraceSequence extremal();
    static TraceSequence custom(std::map<std::int64_t, std::int64_t> table);

    Kind kind() const { return kind_; }
    /// Target at p; nullopt when a custom table has no entry.
    std::optional<std::int64_t> at(std::int64_t p) const;
    std::string describe() const;

private:
    Kind kind_ = Kind::zero;
    std::int64_t a_ = 0;
    std::map<std::int64_t, std::int64_t> table_;
};

/// Bound on cos(psi); exact integer comparison when the cosine is one of
/// 0, +-1/2, +-1, else floating comparison with a 1e-12 tie band.
class CosineBound {
public:
    static CosineBound of_angle(double angle);

    double value() const { return value_; }
    bool exact() const { return exact_; }
    /// Sign of a/(2 sqrt p) - bound.
    int compare(std::int64_t a, std::int64_t p) const;

private:
    double value_ = 0.0;
    bool exact_ = false;
    std::int64_t num_ = 0;  // bound = num_ / den_ when exact_
    std::int64_t den_ = 1;
};

/// Angle window [alpha, beta] with 0 <= alpha < beta <= pi.
class AngleWindow {
public:
    AngleWindow(double alpha, double beta);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

    /// psi_p in [alpha, beta] for trace a at p.
    bool contains(std::int64_t a, std::int64_t p) const;
    /// psi_p in [alpha, beta), used for partitions (all but the last cell).
    bool contains_half_open(std::int64_t a, std::int64_t p) const;

private:
    double alpha_;
    double beta_;
    CosineBound upper_;  // cos(alpha)
    CosineBound lower_;  // cos(beta)
};

/// mu_ST(alpha, beta) = ((beta - alpha) - (sin 2beta - sin 2alpha)/2) / pi.
double st_density(const AngleWindow& window);

/// Which per-prime event a counter records.
class Statistic {
public:
    enum class Kind { trace, field, angle };

    static Statistic trace(TraceSequence seq);
    /// d < 0 squarefree; throws std::invalid_argument otherwise.
    static Statistic field(std::int64_t d);
    static Statistic angle(AngleWindow window);

    Kind kind() const { return kind_; }
    const TraceSequence& sequence() const { return seq_; }
    std::int64_t field_disc() const { return d_; }
    const AngleWindow& window() const { return *window_; }

    bool matches(std::int64_t a, std::int64_t p) const;
    std::string describe() const;

private:
    Kind kind_ = Kind::trace;
    TraceSequence seq_;
    std::int64_t d_ = 0;
    std::optional<AngleWindow> window_;
};

struct StatRow {
    std::int64_t p = 0;
    std::int64_t param_count = 0;   // parameters with good reduction at p
    std::int64_t contribution = 0;  // of those, how many satisfy the statistic
    std::int64_t cumulative = 0;
};

struct StatReport {
    std::vector<StatRow> rows;       // one per odd prime <= x
    std::int64_t x = 0;
    std::int64_t total = 0;
    std::int64_t pi_x = 0;           // number of primes <= x
    std::int64_t parameters = 1;     // enumerated parameters, with multiplicity
    std::int64_t degenerate_parameters = 0;  // Delta(t) = 0 in Q, skipped
    double avg_per_param = 0.0;
    double ratio_to_pi = 0.0;        // avg_per_param / pi(x)
    std::optional<double> st_mass;   // mu_ST(window) for angle statistics
    std::optional<double> st_deviation;  // ratio_to_pi - mu_ST
};

/// Counts primes 3 <= p <= x of good reduction satisfying `stat`.
StatReport count_primes(const CurveSource& source, const Statistic& stat, std::int64_t x, unsigned workers = 1);

StatReport pi_trace(const CurveSource& source, const TraceSequence& seq, std::int64_t x, unsigned workers = 1);
StatReport pi_field(const CurveSource& source, std::int64_t d, std::int64_t x, unsigned workers = 1);
StatReport pi_angle(const CurveSource& source, const AngleWindow& window, std::int64_t x, unsigned workers = 1);

/// Counts per cell of the partition of [0, pi] at `edges` (edges[0] = 0,
/// edges.back() = pi, strictly increasing); cells are [e_i, e_{i+1}) except the
/// closed last one. Returns the per-cell counts and the number of good primes.
struct PartitionCounts {
    std::vector<std::int64_t> counts;
    std::int64_t good_primes = 0;
};
PartitionCounts angle_partition(const CurveSource& source, const std::vector<double>& edges, std::int64_t x,
                                unsigned workers = 1);

/// Sum over t in `set` with Delta(t) != 0 of the single-curve statistic for E(t).
StatReport family_average(const CurveFamily& family, const ParamSet& set, const Statistic& stat, std::int64_t x,
                          unsigned workers = 1);

/// a_{w,p} for every w mod p with Delta(w) != 0 mod p.
struct FiberCensus {
    std::int64_t p = 0;
    std::string family_id;
    std::vector<std::optional<std::int64_t>> traces;  // indexed by w
    std::int64_t excluded = 0;

    std::int64_t size() const { return p - excluded; }
};

/// Throws HypothesisViolation for p < 3 and DegenerateFamily for a degenerate family.
FiberCensus fiber_census(const CurveFamily& family, std::int64_t p);

/// #{w : a_{w,p} = a mod ell}; requires ell >= 17 prime, ell != p.
std::int64_t census_mod_ell(const FiberCensus& census, std::int64_t a, std::int64_t ell);

/// #{w : a_{w,p} != 0 and Frobenius field disc = d}.
std::int64_t census_field(const FiberCensus& census, std::int64_t d);

/// #{w : a_{w,p} = t}. Warns on stderr when the census is not for the j-family,
/// where fibers are no longer distinct isomorphism classes.
std::int64_t trace_class_count(const FiberCensus& census, std::int64_t t);

/// max_t trace_class_count(t) / sqrt(p).
double max_class_ratio(const FiberCensus& census);

/// Per-(family id, p) census store: concurrent readers, single writer per insert.
class CensusCache {
public:
    std::shared_ptr<const FiberCensus> get(const CurveFamily& family, std::int64_t p);
    std::size_t size() const;
    void clear();

    static CensusCache& shared();

private:
    mutable std::shared_mutex guard_;
    std::map<std::pair<std::string, std::int64_t>, std::shared_ptr<const FiberCensus>> store_;
};

}  // namespace frobenius
