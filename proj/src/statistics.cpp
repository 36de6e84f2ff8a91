#include "frobenius/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "frobenius/errors.hpp"
#include "frobenius/parallel.hpp"

namespace frobenius {

// ---------------------------------------------------------------- sequences

TraceSequence TraceSequence::constant(std::int64_t a) {
    TraceSequence s;
    s.kind_ = a == 0 ? Kind::zero : Kind::constant;
    s.a_ = a;
    return s;
}

TraceSequence TraceSequence::zero() { return constant(0); }

TraceSequence TraceSequence::extremal() {
    TraceSequence s;
    s.kind_ = Kind::extremal;
    return s;
}

TraceSequence TraceSequence::custom(std::map<std::int64_t, std::int64_t> table) {
    TraceSequence s;
    s.kind_ = Kind::custom;
    s.table_ = std::move(table);
    return s;
}

std::optional<std::int64_t> TraceSequence::at(std::int64_t p) const {
    switch (kind_) {
        case Kind::zero:
        case Kind::constant: return a_;
        case Kind::extremal: return -isqrt(4 * p);
        case Kind::custom: {
            const auto it = table_.find(p);
            if (it == table_.end()) return std::nullopt;
            return it->second;
        }
    }
    return std::nullopt;
}

std::string TraceSequence::describe() const {
    switch (kind_) {
        case Kind::zero: return "zero";
        case Kind::constant: return "constant(" + std::to_string(a_) + ")";
        case Kind::extremal: return "extremal";
        case Kind::custom: return "custom(" + std::to_string(table_.size()) + " entries)";
    }
    return {};
}

// ------------------------------------------------------------------- angles

CosineBound CosineBound::of_angle(double angle) {
    constexpr double pi = std::numbers::pi;
    constexpr double tol = 1e-12;
    struct Exact {
        double angle;
        std::int64_t num;
        std::int64_t den;
    };
    static constexpr Exact table[] = {{0.0, 1, 1}, {pi / 3, 1, 2}, {pi / 2, 0, 1}, {2 * pi / 3, -1, 2}, {pi, -1, 1}};
    CosineBound b;
    b.value_ = std::cos(angle);
    for (const auto& e : table) {
        if (std::fabs(angle - e.angle) <= tol) {
            b.exact_ = true;
            b.num_ = e.num;
            b.den_ = e.den;
            b.value_ = static_cast<double>(e.num) / static_cast<double>(e.den);
        }
    }
    return b;
}

int CosineBound::compare(std::int64_t a, std::int64_t p) const {
    if (exact_) {
        // sign(a*den - 2*num*sqrt(p))
        const std::int64_t lhs = a * den_;
        if (num_ <= 0 && lhs >= 0) return (lhs == 0 && num_ == 0) ? 0 : 1;
        if (num_ >= 0 && lhs <= 0) return -1;
        const __int128 l2 = static_cast<__int128>(lhs) * lhs;
        const __int128 r2 = static_cast<__int128>(4) * num_ * num_ * p;
        if (l2 == r2) return 0;
        if (lhs > 0) return l2 > r2 ? 1 : -1;
        return l2 > r2 ? -1 : 1;
    }
    const double c = static_cast<double>(a) / (2.0 * std::sqrt(static_cast<double>(p)));
    const double diff = c - value_;
    if (std::fabs(diff) <= 1e-12) return 0;
    return diff > 0 ? 1 : -1;
}

AngleWindow::AngleWindow(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha >= 0.0 && alpha < beta && beta <= std::numbers::pi))
        throw std::invalid_argument("AngleWindow: need 0 <= alpha < beta <= pi");
    upper_ = CosineBound::of_angle(alpha);
    lower_ = CosineBound::of_angle(beta);
}

bool AngleWindow::contains(std::int64_t a, std::int64_t p) const {
    return lower_.compare(a, p) >= 0 && upper_.compare(a, p) <= 0;
}

bool AngleWindow::contains_half_open(std::int64_t a, std::int64_t p) const {
    // psi < beta  <=>  cos psi > cos beta
    return lower_.compare(a, p) > 0 && upper_.compare(a, p) <= 0;
}

double st_density(const AngleWindow& w) {
    const double a = w.alpha();
    const double b = w.beta();
    return ((b - a) - (std::sin(2 * b) - std::sin(2 * a)) / 2.0) / std::numbers::pi;
}

// --------------------------------------------------------------- statistics

Statistic Statistic::trace(TraceSequence seq) {
    Statistic s;
    s.kind_ = Kind::trace;
    s.seq_ = std::move(seq);
    return s;
}

Statistic Statistic::field(std::int64_t d) {
    if (d >= 0 || squarefree_part(d) != d)
        throw std::invalid_argument("Statistic::field: d must be a negative squarefree integer");
    Statistic s;
    s.kind_ = Kind::field;
    s.d_ = d;
    return s;
}

Statistic Statistic::angle(AngleWindow window) {
    Statistic s;
    s.kind_ = Kind::angle;
    s.window_ = window;
    return s;
}

bool Statistic::matches(std::int64_t a, std::int64_t p) const {
    switch (kind_) {
        case Kind::trace: {
            const auto target = seq_.at(p);
            return target && *target == a;
        }
        case Kind::field: return a != 0 && frobenius_field_disc(a, p) == d_;
        case Kind::angle: return window_->contains(a, p);
    }
    return false;
}

std::string Statistic::describe() const {
    switch (kind_) {
        case Kind::trace: return "trace:" + seq_.describe();
        case Kind::field: return "field:" + std::to_string(d_);
        case Kind::angle: return "angle:[" + std::to_string(window_->alpha()) + "," + std::to_string(window_->beta()) + "]";
    }
    return {};
}

// ------------------------------------------------------------ prime sweeps

namespace {

std::vector<std::int64_t> odd_primes_upto(std::int64_t x) {
    std::vector<std::int64_t> out;
    for (auto p : sieve_primes(std::max<std::int64_t>(x, 0)))
        if (p >= 3) out.push_back(p);
    return out;
}

void finish_report(StatReport& r, std::int64_t x) {
    r.x = x;
    r.pi_x = sieve_primes(std::max<std::int64_t>(x, 0)).count_upto(x);
    std::int64_t running = 0;
    for (auto& row : r.rows) {
        running += row.contribution;
        row.cumulative = running;
    }
    r.total = running;
    r.avg_per_param = r.parameters > 0 ? static_cast<double>(r.total) / static_cast<double>(r.parameters) : 0.0;
    r.ratio_to_pi = r.pi_x > 0 ? r.avg_per_param / static_cast<double>(r.pi_x) : 0.0;
}

void attach_st(StatReport& r, const Statistic& stat) {
    if (stat.kind() != Statistic::Kind::angle) return;
    r.st_mass = st_density(stat.window());
    r.st_deviation = r.ratio_to_pi - *r.st_mass;
}

}  // namespace

StatReport count_primes(const CurveSource& source, const Statistic& stat, std::int64_t x, unsigned workers) {
    const auto primes = odd_primes_upto(x);
    StatReport r;
    r.rows.resize(primes.size());
    parallel_for(primes.size(), workers, [&](std::size_t i) {
        const std::int64_t p = primes[i];
        StatRow row{p, 0, 0, 0};
        if (const auto curve = source.reduce(p)) {
            row.param_count = 1;
            row.contribution = stat.matches(trace(*curve, QuadraticCharacter(p)), p) ? 1 : 0;
        }
        r.rows[i] = row;
    });
    finish_report(r, x);
    attach_st(r, stat);
    return r;
}

StatReport pi_trace(const CurveSource& source, const TraceSequence& seq, std::int64_t x, unsigned workers) {
    return count_primes(source, Statistic::trace(seq), x, workers);
}

StatReport pi_field(const CurveSource& source, std::int64_t d, std::int64_t x, unsigned workers) {
    return count_primes(source, Statistic::field(d), x, workers);
}

StatReport pi_angle(const CurveSource& source, const AngleWindow& window, std::int64_t x, unsigned workers) {
    return count_primes(source, Statistic::angle(window), x, workers);
}

PartitionCounts angle_partition(const CurveSource& source, const std::vector<double>& edges, std::int64_t x,
                                unsigned workers) {
    if (edges.size() < 2) throw std::invalid_argument("angle_partition: need at least two edges");
    std::vector<AngleWindow> cells;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) cells.emplace_back(edges[i], edges[i + 1]);
    const auto primes = odd_primes_upto(x);
    std::vector<int> cell_of(primes.size(), -1);
    parallel_for(primes.size(), workers, [&](std::size_t i) {
        const std::int64_t p = primes[i];
        const auto curve = source.reduce(p);
        if (!curve) return;
        const std::int64_t a = trace(*curve, QuadraticCharacter(p));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const bool last = c + 1 == cells.size();
            if (last ? cells[c].contains(a, p) : cells[c].contains_half_open(a, p)) {
                cell_of[i] = static_cast<int>(c);
                break;
            }
        }
    });
    PartitionCounts out;
    out.counts.assign(cells.size(), 0);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (source.reduce(primes[i])) ++out.good_primes;
        if (cell_of[i] >= 0) ++out.counts[static_cast<std::size_t>(cell_of[i])];
    }
    return out;
}

StatReport family_average(const CurveFamily& family, const ParamSet& set, const Statistic& stat, std::int64_t x,
                          unsigned workers) {
    family.require_nondegenerate();

    // Distinct parameter values with multiplicity; exact Delta(t) = 0 roots dropped.
    struct Weighted {
        ParamValue t;
        std::int64_t mult;
    };
    std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, std::int64_t>> raw;
    set.for_each([&](const ParamValue& t) { raw.push_back({{t.num, t.den}, 1}); });
    if (raw.empty()) throw std::invalid_argument("family_average: empty parameter set");
    std::sort(raw.begin(), raw.end());
    std::vector<Weighted> params;
    StatReport r;
    r.parameters = static_cast<std::int64_t>(raw.size());
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i;
        while (j < raw.size() && raw[j].first == raw[i].first) ++j;
        const auto [num, den] = raw[i].first;
        const auto mult = static_cast<std::int64_t>(j - i);
        if (family.delta.has_root_at(num, den))
            r.degenerate_parameters += mult;
        else
            params.push_back({ParamValue{num, den}, mult});
        i = j;
    }
    raw.clear();

    const auto primes = odd_primes_upto(x);
    r.rows.resize(primes.size());
    parallel_for(
        primes.size(), workers,
        [&](std::size_t i) {
            const std::int64_t p = primes[i];
            const QuadraticCharacter chi(p);
            std::vector<std::int64_t> inv(static_cast<std::size_t>(p), 0);
            inv[1] = 1;
            for (std::int64_t v = 2; v < p; ++v) inv[v] = mod(-(p / v) * inv[p % v], p);
            std::unordered_map<std::int64_t, std::int64_t> bucket;
            for (const auto& w : params) {
                const std::int64_t d = mod(w.t.den, p);
                if (d == 0) continue;
                bucket[mul_mod(w.t.num, inv[d], p)] += w.mult;
            }
            StatRow row{p, 0, 0, 0};
            for (const auto& [w, count] : bucket) {
                const auto curve = fiber_curve(family, w, p);
                if (!curve) continue;
                row.param_count += count;
                if (stat.matches(trace(*curve, chi), p)) row.contribution += count;
            }
            r.rows[i] = row;
        },
        1);
    finish_report(r, x);
    attach_st(r, stat);
    return r;
}

// ------------------------------------------------------------------ census

FiberCensus fiber_census(const CurveFamily& family, std::int64_t p) {
    family.require_nondegenerate();
    if (p < 3 || !is_prime(p)) throw HypothesisViolation("fiber_census: p must be an odd prime");
    FiberCensus c;
    c.p = p;
    c.family_id = family.id;
    c.traces.assign(static_cast<std::size_t>(p), std::nullopt);
    const QuadraticCharacter chi(p);
    for (std::int64_t w = 0; w < p; ++w) {
        const auto curve = fiber_curve(family, w, p);
        if (!curve) {
            ++c.excluded;
            continue;
        }
        c.traces[w] = trace(*curve, chi);
    }
    return c;
}

std::int64_t census_mod_ell(const FiberCensus& census, std::int64_t a, std::int64_t ell) {
    if (ell < 17 || !is_prime(ell)) throw HypothesisViolation("census_mod_ell: ell must be a prime >= 17");
    if (ell == census.p) throw HypothesisViolation("census_mod_ell: ell must differ from p");
    const std::int64_t target = mod(a, ell);
    std::int64_t n = 0;
    for (const auto& t : census.traces)
        if (t && mod(*t, ell) == target) ++n;
    return n;
}

std::int64_t census_field(const FiberCensus& census, std::int64_t d) {
    if (d >= 0 || squarefree_part(d) != d)
        throw std::invalid_argument("census_field: d must be a negative squarefree integer");
    std::int64_t n = 0;
    for (const auto& t : census.traces)
        if (t && *t != 0 && frobenius_field_disc(*t, census.p) == d) ++n;
    return n;
}

std::int64_t trace_class_count(const FiberCensus& census, std::int64_t t) {
    if (census.family_id != "j-family")
        std::cerr << "warning: trace_class_count on family " << census.family_id
                  << " does not count isomorphism classes\n";
    std::int64_t n = 0;
    for (const auto& a : census.traces)
        if (a && *a == t) ++n;
    return n;
}

double max_class_ratio(const FiberCensus& census) {
    std::map<std::int64_t, std::int64_t> hist;
    for (const auto& a : census.traces)
        if (a) ++hist[*a];
    std::int64_t best = 0;
    for (const auto& [a, n] : hist) best = std::max(best, n);
    return static_cast<double>(best) / std::sqrt(static_cast<double>(census.p));
}

std::shared_ptr<const FiberCensus> CensusCache::get(const CurveFamily& family, std::int64_t p) {
    const auto key = std::make_pair(family.id + "|" + family.f.to_string() + ";" + family.g.to_string(), p);
    {
        std::shared_lock lock(guard_);
        if (const auto it = store_.find(key); it != store_.end()) return it->second;
    }
    auto fresh = std::make_shared<const FiberCensus>(fiber_census(family, p));
    std::unique_lock lock(guard_);
    const auto [it, inserted] = store_.emplace(key, std::move(fresh));
    return it->second;
}

std::size_t CensusCache::size() const {
    std::shared_lock lock(guard_);
    return store_.size();
}

void CensusCache::clear() {
    std::unique_lock lock(guard_);
    store_.clear();
}

CensusCache& CensusCache::shared() {
    static CensusCache cache;
    return cache;
}

}  // namespace frobenius
