#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "frobenius/errors.hpp"
#include "frobenius/harmonic.hpp"
#include "frobenius/oracles.hpp"

using namespace frobenius;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("chebyshev_U") {
    for (double z : {-1.0, -0.3, 0.0, 0.7, 1.0}) CHECK(chebyshev_U(0, z) == 1.0);
    CHECK(chebyshev_U(1, 0.5) == doctest::Approx(1.0));
    CHECK(std::fabs(chebyshev_U(3, std::cos(pi / 2))) < 1e-12);
    CHECK(chebyshev_U(5, 1.0) == doctest::Approx(6.0));
    CHECK(chebyshev_U(5, -1.0) == doctest::Approx(-6.0));
    CHECK_THROWS(chebyshev_U(2, 1.1));
    CHECK_THROWS(chebyshev_U(-1, 0.0));
}

TEST_CASE("recurrence matches the sine quotient") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> th(1e-3, pi - 1e-3);
    for (int i = 0; i < 400; ++i) {
        const double t = th(rng);
        for (int n = 0; n <= 50; ++n) {
            CHECK(std::fabs(chebyshev_U(n, std::cos(t)) - oracle::chebyshev_U_trig(n, t)) <= 1e-8);
            CHECK(std::fabs(chebyshev_U(n, std::cos(t))) <= n + 1 + 1e-9);
        }
    }
}

TEST_CASE("semicircle_G") {
    CHECK(semicircle_G(-1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(semicircle_G(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(semicircle_G(0, 0.5) == doctest::Approx(0.30450).epsilon(1e-5));
    CHECK(std::fabs(semicircle_G(0, 0.5) - oracle::semicircle_quadrature(0, 0.5)) < 1e-10);
    CHECK_THROWS(semicircle_G(0.5, 0.5));
    CHECK_THROWS(semicircle_G(-2, 0));
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        if (a == b) continue;
        CHECK(std::fabs(semicircle_G(a, b) - st_density(AngleWindow(std::acos(b), std::acos(a)))) < 1e-10);
        CHECK(std::fabs(semicircle_G(a, b) - oracle::semicircle_quadrature(a, b)) < 1e-10);
    }
}

TEST_CASE("interval_count_A") {
    CHECK(interval_count_A(Sample({0, 0}), -1, 1) == 2);
    CHECK(interval_count_A(Sample(), -1, 1) == 0);
    CHECK(interval_count_A(Sample({-0.5, 0, 0.5}), 0, 1) == 2);
    CHECK_THROWS(Sample({1.5}));
}

TEST_CASE("discrepancy examples") {
    const auto zeros = discrepancy(Sample(std::vector<double>(10, 0.0)), 3);
    CHECK(zeros.lhs == doctest::Approx(10.0));  // the degenerate interval [0, 0]
    CHECK(interval_count_A(Sample(std::vector<double>(10, 0.0)), -1, 1) - 10.0 * semicircle_G(-1, 1) ==
          doctest::Approx(0.0));
    CHECK_THROWS(discrepancy(Sample(), 3));
    CHECK_THROWS(discrepancy(Sample({0.1}), 0));

    const auto q = oracle::semicircle_quantiles(1000);
    const auto rep = discrepancy(Sample(q), 20);
    CHECK(rep.lhs <= 1.0 + 1e-6);
    CHECK(rep.lhs <= rep.rhs);
    CHECK(rep.rhs_terms.size() == 20);

    const auto one = discrepancy(Sample({0.2, -0.4}), 1);
    CHECK(one.rhs == doctest::Approx(2.0 + std::fabs(0.4 - 0.8)));
}

TEST_CASE("exact discrepancy matches endpoint brute force") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        std::vector<double> v(1 + rng() % 30);
        for (auto& x : v) x = (rng() % 4 == 0) ? std::round(u(rng) * 4) / 4 : u(rng);
        const double fast = discrepancy(Sample(v), 5).lhs;
        CHECK(fast == doctest::Approx(oracle::discrepancy_brute(v)).epsilon(1e-6));
    }
}

TEST_CASE("Niederreiter ratio") {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        std::vector<double> v(1 + rng() % 10000);
        const int mode = i % 3;
        for (auto& x : v) x = mode == 0 ? u(rng) : mode == 1 ? std::cos(pi * std::fabs(u(rng))) : u(rng) * 0.2;
        for (int k : {1, 5, 20}) worst = std::max(worst, discrepancy(Sample(v), k).ratio);
    }
    MESSAGE("max discrepancy ratio: " << worst);
    CHECK(worst <= 20.0);
}

TEST_CASE("michel_sum") {
    const auto fam = j_family();
    CHECK(std::abs(michel_sum(fam, 5, 1, 0)) < 1e-12);
    for (std::int64_t p : {7, 101, 499})
        for (int n = 1; n <= 6; ++n) {
            const auto s0 = michel_sum(fam, p, n, 0);
            CHECK(std::fabs(s0.imag()) < 1e-9);
            for (std::int64_t m : {0, 1, 2, 5}) CHECK(std::abs(michel_sum(fam, p, n, m)) <= (n + 1) * p);
        }
    CHECK_THROWS(michel_sum(fam, 7, 0, 0));
}

TEST_CASE("angle counter examples") {
    const auto fam = j_family();
    const AngleWindow full(0, pi);
    CHECK(angle_counter_B(fam, 1, 7, full) == 1);
    CHECK_THROWS_AS(angle_counter_C(fam, 5, 5, full), HypothesisViolation);
    CHECK_THROWS_AS(angle_counter_B(fam, 7, 7, full), HypothesisViolation);
    CHECK_THROWS_AS(angle_counter_D(fam, {1, 6}, {2}, 5, full), HypothesisViolation);
    // p = 7: Delta roots at 0 and 1728 = 6 mod 7, so t = 1..4 are all good.
    CHECK(angle_counter_C(fam, 4, 7, full) == 4);
    CHECK(angle_counter_D(fam, {1}, {1}, 7, full) == angle_counter_C(fam, 2, 7, full) - angle_counter_C(fam, 1, 7, full));
    const auto census = fiber_census(fam, 7);
    CHECK(angle_counter_D(fam, {1, 2}, {1}, 7, full) == (census.traces[2] ? 1 : 0) + (census.traces[3] ? 1 : 0));
    CHECK(angle_counter_C(fam, 4, 7, AngleWindow(1.0, 1.0 + 1e-15)) == 0);
    CHECK_THROWS(angle_counter_D(fam, {}, {1}, 7, full));
}

TEST_CASE("full-window counters count good parameters") {
    const auto fam = j_family();
    const AngleWindow full(0, pi);
    for (std::int64_t p : {11, 13, 29, 31, 1733})
        for (std::int64_t T = 1; T <= 8; ++T) {
            std::int64_t good_c = 0;
            for (std::int64_t t = 1; t <= T; ++t) good_c += fam.delta.eval_mod(t, p) != 0;
            CHECK(angle_counter_C(fam, T, p, full) == good_c);
            std::int64_t good_b = 0;
            const auto fr = farey_enumerate(T);
            for (const auto& r : fr)
                for (const auto& s : fr) {
                    const auto w = reduce_mod_p(r.u * s.v + s.u * r.v, r.v * s.v, p);
                    good_b += w && fam.delta.eval_mod(*w, p) != 0;
                }
            CHECK(angle_counter_B(fam, T, p, full) == good_b);
        }
}

TEST_CASE("counters match brute force") {
    const auto fam = CurveFamily::from_polys(IntPoly{0, 1}, IntPoly{1}, "f=Z,g=1");
    for (std::int64_t p : {11, 13, 17, 23, 29, 31})
        for (std::int64_t T = 1; T <= 8; ++T)
            for (const auto& w : {AngleWindow(pi / 3, 2 * pi / 3), AngleWindow(0.2, 1.3), AngleWindow(pi / 2, pi)}) {
                CHECK(angle_counter_B(fam, T, p, w) == oracle::counter_B_brute(fam, T, p, w));
                CHECK(angle_counter_C(fam, T, p, w) == oracle::counter_C_brute(fam, T, p, w));
                CHECK(angle_counter_D(fam, {1, 3, T}, {2, T}, p, w) == oracle::counter_D_brute(fam, {1, 3, T}, {2, T}, p, w));
            }
}
