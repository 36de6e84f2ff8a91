#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "frobenius/errors.hpp"
#include "frobenius/oracles.hpp"
#include "frobenius/statistics.hpp"

using namespace frobenius;

namespace {
constexpr double pi = std::numbers::pi;

FiberCensus j5() { return fiber_census(j_family(), 5); }
}  // namespace

TEST_CASE("st_density") {
    CHECK(st_density(AngleWindow(0, pi)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(st_density(AngleWindow(0, pi / 2)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(st_density(AngleWindow(pi / 3, 2 * pi / 3)) ==
          doctest::Approx(1.0 / 3 + std::sqrt(3.0) / (2 * pi)).epsilon(1e-14));
    CHECK(oracle::st_density_quadrature(pi / 3, 2 * pi / 3) == doctest::Approx(0.60900).epsilon(1e-5));
    CHECK_THROWS(AngleWindow(1.0, 1.0));
    CHECK_THROWS(AngleWindow(-0.1, 1.0));
    CHECK_THROWS(AngleWindow(0.0, 4.0));
}

TEST_CASE("st_density additivity, symmetry, quadrature") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, pi);
    for (int i = 0; i < 500; ++i) {
        double v[3] = {u(rng), u(rng), u(rng)};
        std::sort(v, v + 3);
        if (v[0] == v[1] || v[1] == v[2]) continue;
        const double whole = st_density(AngleWindow(v[0], v[2]));
        CHECK(std::fabs(whole - st_density(AngleWindow(v[0], v[1])) - st_density(AngleWindow(v[1], v[2]))) < 1e-12);
        CHECK(std::fabs(st_density(AngleWindow(v[0], v[1])) - st_density(AngleWindow(pi - v[1], pi - v[0]))) < 1e-12);
        CHECK(std::fabs(whole - oracle::st_density_quadrature(v[0], v[2])) < 1e-10);
    }
}

TEST_CASE("trace sequences") {
    CHECK(TraceSequence::zero().at(7) == 0);
    CHECK(TraceSequence::constant(3).at(101) == 3);
    CHECK(TraceSequence::extremal().at(5) == -4);
    CHECK(TraceSequence::extremal().at(101) == -20);
    for (std::int64_t p : {5, 7, 9973, 99991})
        CHECK(TraceSequence::extremal().at(p) == -static_cast<std::int64_t>(std::floor(2 * std::sqrt(double(p)))));
    const auto custom = TraceSequence::custom({{5, 1}, {7, -2}});
    CHECK(custom.at(7) == -2);
    CHECK_FALSE(custom.at(11).has_value());
}

TEST_CASE("window membership at rational cosines") {
    const AngleWindow w(pi / 3, 2 * pi / 3);  // cos in [-1/2, 1/2]
    // a/(2 sqrt p) = 1/2 never happens for prime p; check near-boundary traces.
    for (std::int64_t p : {5, 7, 11, 13, 101, 1009})
        for (std::int64_t a = -isqrt(4 * p); a <= isqrt(4 * p); ++a) {
            const bool inside = a * a <= p;
            CHECK(w.contains(a, p) == inside);
        }
    const AngleWindow right(0, pi / 2);
    CHECK(right.contains(0, 7));
    CHECK_FALSE(right.contains_half_open(0, 7));
    CHECK(AngleWindow(pi / 2, pi).contains_half_open(0, 7));
    CHECK(AngleWindow(0, pi).contains(-4, 4 + 0 * 5) == true);
}

TEST_CASE("Statistic") {
    CHECK_THROWS(Statistic::field(-4));
    CHECK_THROWS(Statistic::field(3));
    CHECK_THROWS(Statistic::field(0));
    const auto f = Statistic::field(-1);
    CHECK(f.matches(2, 5));
    CHECK_FALSE(f.matches(0, 5));
    CHECK(Statistic::trace(TraceSequence::zero()).matches(0, 7));
    CHECK(Statistic::angle(AngleWindow(0, pi)).matches(-4, 5));
}

TEST_CASE("pi_trace, pi_field, pi_angle examples") {
    const auto cm = CurveSource::fixed(1, 0);
    CHECK(pi_trace(cm, TraceSequence::zero(), 100).total == 13);
    CHECK(pi_field(cm, -1, 100).total == 11);
    CHECK(pi_field(cm, -3, 100).total == 0);
    const auto e = CurveSource::fixed(1, 1);
    CHECK(pi_angle(e, AngleWindow(0, pi), 100).total == 23);
    CHECK(pi_trace(e, TraceSequence::constant(5), 4).total == 0);
    CHECK(pi_field(e, -5, 4).total == 0);
    const auto ext = pi_trace(e, TraceSequence::extremal(), 10000);
    CHECK(ext.total <= ext.pi_x);
    CHECK(pi_angle(cm, AngleWindow(pi - 1e-9, pi), 10000).total <= pi_trace(cm, TraceSequence::extremal(), 10000).total);
}

TEST_CASE("report rows") {
    const auto r = pi_trace(CurveSource::fixed(1, 0), TraceSequence::zero(), 1000);
    CHECK(r.pi_x == 168);
    CHECK(r.rows.size() == 167);
    std::int64_t running = 0;
    for (const auto& row : r.rows) {
        running += row.contribution;
        CHECK(row.cumulative == running);
    }
    CHECK(running == r.total);
    CHECK(r.ratio_to_pi == doctest::Approx(static_cast<double>(r.total) / 168.0));
}

TEST_CASE("partition sums to good primes") {
    const auto e = CurveSource::fixed(1, 1);
    for (int k : {1, 2, 3, 6, 8}) {
        std::vector<double> edges;
        for (int i = 0; i <= k; ++i) edges.push_back(pi * i / k);
        const auto parts = angle_partition(e, edges, 5000);
        std::int64_t sum = 0;
        for (auto c : parts.counts) sum += c;
        CHECK(sum == parts.good_primes);
        CHECK(parts.good_primes == pi_angle(e, AngleWindow(0, pi), 5000).total);
    }
}

TEST_CASE("parallel sweeps are deterministic") {
    const auto e = CurveSource::fixed(2, 3);
    const auto a = pi_angle(e, AngleWindow(0.3, 1.9), 20000, 1);
    const auto b = pi_angle(e, AngleWindow(0.3, 1.9), 20000, 4);
    CHECK(a.total == b.total);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].contribution == b.rows[i].contribution);
}

TEST_CASE("family_average examples") {
    const auto fam = j_family();
    const auto stat = Statistic::angle(AngleWindow(0, pi));
    CHECK(family_average(fam, ParamSet::farey(2), stat, 5).total == 2);
    const auto seq = Statistic::trace(TraceSequence::extremal());
    const auto single = count_primes(CurveSource::member(fam, RationalParam::make(1, 1)), seq, 3000).total;
    CHECK(family_average(fam, ParamSet::interval(1), seq, 3000).total == single);
    CHECK(family_average(fam, ParamSet::farey(1), seq, 3000).total == single);
    CHECK_THROWS_AS(family_average(CurveFamily::from_polys(IntPoly{1}, IntPoly{1}), ParamSet::interval(3), seq, 100),
                    DegenerateFamily);
}

TEST_CASE("family_average over an interval equals independent runs") {
    const auto fam = CurveFamily::from_polys(IntPoly{0, 1}, IntPoly{1});
    for (const auto& stat : {Statistic::trace(TraceSequence::extremal()), Statistic::field(-1),
                             Statistic::angle(AngleWindow(pi / 3, 2 * pi / 3))}) {
        std::int64_t sum = 0;
        for (std::int64_t t = 1; t <= 12; ++t)
            sum += count_primes(CurveSource::member(fam, RationalParam::make(t, 1)), stat, 2000).total;
        const auto avg = family_average(fam, ParamSet::interval(12), stat, 2000, 3);
        CHECK(avg.total == sum);
        CHECK(avg.parameters == 12);
    }
}

TEST_CASE("family_average skips exact discriminant roots") {
    const auto fam = j_family();
    // 1728 = 864 + 864 is a root of Delta.
    const auto r = family_average(fam, ParamSet::sumset({864, 1}, {864}), Statistic::angle(AngleWindow(0, pi)), 200);
    CHECK(r.degenerate_parameters == 1);
    CHECK(r.parameters == 2);
}

TEST_CASE("fiber census examples") {
    const auto c = j5();
    CHECK(c.excluded == 2);
    CHECK(c.size() == 3);
    CHECK(c.traces[1] == 2);
    CHECK(c.traces[2] == -3);
    CHECK(c.traces[4] == 1);
    CHECK_FALSE(c.traces[0].has_value());
    CHECK_FALSE(c.traces[3].has_value());
    CHECK_THROWS_AS(fiber_census(j_family(), 2), HypothesisViolation);
    CHECK_THROWS_AS(fiber_census(j_family(), 9), HypothesisViolation);

    CHECK(census_mod_ell(c, 2, 17) == 1);
    CHECK(census_mod_ell(c, 2 + 17, 17) == 1);
    CHECK(census_mod_ell(c, 14, 17) == 1);
    CHECK_THROWS_AS(census_mod_ell(c, 2, 13), HypothesisViolation);
    CHECK_THROWS_AS(census_mod_ell(fiber_census(j_family(), 17), 2, 17), HypothesisViolation);

    CHECK(census_field(c, -1) == 1);
    CHECK(census_field(c, -11) == 1);
    CHECK(census_field(c, -19) == 1);
    CHECK(trace_class_count(c, 2) == 1);
    CHECK(trace_class_count(c, 0) == 0);
}

TEST_CASE("census consistency") {
    const auto fam = j_family();
    for (std::int64_t p : {5, 7, 101, 499, 1009}) {
        const auto c = fiber_census(fam, p);
        CHECK(c.size() + c.excluded == p);
        std::int64_t total = 0, mod_sum = 0, cls = 0, zero = 0;
        std::map<std::int64_t, int> discs;
        for (std::int64_t w = 0; w < p; ++w)
            if (c.traces[w]) {
                const auto a = *c.traces[w];
                CHECK(a * a <= 4 * p);
                total += a;
                if (a == 0) ++zero;
                else discs[frobenius_field_disc(a, p)] = 1;
                CHECK(a == trace(*fiber_curve(fam, w, p)));
            }
        for (std::int64_t a = 0; a < 17; ++a) mod_sum += census_mod_ell(c, a, 17);
        CHECK(mod_sum == c.size());
        std::int64_t by_field = zero;
        for (const auto& [d, _] : discs) by_field += census_field(c, d);
        CHECK(by_field == c.size());
        for (std::int64_t t = -isqrt(4 * p); t <= isqrt(4 * p); ++t) cls += trace_class_count(c, t);
        CHECK(cls == c.size());
        if (p == 5) CHECK(total == 0);
    }
}

TEST_CASE("Lenstra diagnostic") {
    const auto fam = j_family();
    double worst = 0;
    for (auto p : sieve_primes(2003))
        if (p >= 5) worst = std::max(worst, max_class_ratio(*CensusCache::shared().get(fam, p)));
    MESSAGE("max_t H(t,p)/sqrt(p) over p <= 2003: " << worst);
    CHECK(worst <= 10.0);
}

TEST_CASE("census cache") {
    CensusCache cache;
    const auto fam = j_family();
    const auto a = cache.get(fam, 101);
    const auto b = cache.get(fam, 101);
    CHECK(a == b);
    CHECK(cache.size() == 1);
    cache.clear();
    CHECK(cache.size() == 0);
}
