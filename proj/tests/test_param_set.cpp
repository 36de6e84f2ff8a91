#include <cmath>
#include <numbers>

#include "doctest.h"
#include "frobenius/oracles.hpp"
#include "frobenius/param_set.hpp"

using namespace frobenius;

TEST_CASE("farey_enumerate") {
    CHECK(farey_enumerate(1) == std::vector<RationalParam>{{1, 1}});
    auto two = farey_enumerate(2);
    CHECK(two.size() == 3);
    CHECK(std::count(two.begin(), two.end(), RationalParam{2, 2}) == 0);
    CHECK(std::count(two.begin(), two.end(), RationalParam{1, 2}) == 1);
    CHECK(std::count(two.begin(), two.end(), RationalParam{2, 1}) == 1);
    const auto n100 = static_cast<std::int64_t>(farey_enumerate(100).size());
    CHECK(n100 == farey_count_mobius(100));
    CHECK(std::fabs(static_cast<double>(n100) / (6.0 / (std::numbers::pi * std::numbers::pi) * 1e4) - 1.0) < 0.02);
    for (std::int64_t T = 1; T <= 120; ++T) {
        std::int64_t streamed = 0;
        for_each_farey(T, [&](const RationalParam& r) {
            ++streamed;
            CHECK(std::gcd(r.u, r.v) == 1);
        });
        CHECK(streamed == farey_count_mobius(T));
    }
}

TEST_CASE("sumset_enumerate") {
    CHECK(sumset_enumerate({1}, {1}) == std::vector<std::int64_t>{2});
    CHECK(sumset_enumerate({1, 2}, {1}) == std::vector<std::int64_t>{2, 3});
    auto four = sumset_enumerate({1, 2}, {1, 2});
    std::sort(four.begin(), four.end());
    CHECK(four == std::vector<std::int64_t>{2, 3, 3, 4});
    CHECK_THROWS(sumset_enumerate({}, {1}));
    CHECK_THROWS(ParamSet::sumset({1}, {}));
}

TEST_CASE("ParamSet sizes") {
    CHECK(ParamSet::farey(10).size() == farey_count_mobius(10));
    CHECK(ParamSet::interval(7).size() == 7);
    CHECK(ParamSet::sumset({1, 2, 3}, {4, 5}).size() == 6);
    CHECK(ParamSet::farey_pairs(3).size() == farey_count_mobius(3) * farey_count_mobius(3));
    CHECK_THROWS(ParamSet::farey(0));
    CHECK_THROWS(ParamSet::interval(0));
    std::int64_t n = 0;
    ParamSet::farey_pairs(4).for_each([&](const ParamValue&) { ++n; });
    CHECK(n == ParamSet::farey_pairs(4).size());
}

TEST_CASE("residue_histogram examples") {
    const auto h5 = residue_histogram(ParamSet::farey(2), 5);
    CHECK(h5.counts == std::vector<std::int64_t>{0, 1, 1, 1, 0});
    CHECK(h5.skipped == 0);
    const auto h2 = residue_histogram(ParamSet::farey(2), 2);
    CHECK(h2.counts == std::vector<std::int64_t>{1, 1});
    CHECK(h2.skipped == 1);
    const auto i2 = residue_histogram(ParamSet::interval(3), 2);
    CHECK(i2.counts == std::vector<std::int64_t>{1, 2});
    CHECK(i2.skipped == 0);
    CHECK(i2.count(-1) == 2);
}

TEST_CASE("histogram mass") {
    for (std::int64_t T : {1, 5, 17, 40})
        for (auto p : sieve_primes(60)) {
            const auto h = residue_histogram(ParamSet::farey(T), p);
            CHECK(h.mass() + h.skipped == farey_count_mobius(T));
            const auto hp = residue_histogram(ParamSet::farey_pairs(std::min<std::int64_t>(T, 6)), p);
            CHECK(hp.mass() + hp.skipped == ParamSet::farey_pairs(std::min<std::int64_t>(T, 6)).size());
        }
}

TEST_CASE("coincidence count Q") {
    CHECK(coincidence_count_Q(1, 5) == 1);
    CHECK(coincidence_count_Q(1, 101) == 1);
    CHECK(coincidence_count_Q(2, 5) == 3);
    CHECK(coincidence_count_Q(30, 101) == oracle::coincidence_pairs(30, 101));
    for (std::int64_t T = 1; T <= 12; ++T)
        for (auto p : sieve_primes(40)) CHECK(coincidence_count_Q(T, p) == oracle::coincidence_pairs(T, p));
}

TEST_CASE("additive energy V") {
    CHECK(additive_energy_V(1, 5) == 1);
    CHECK(additive_energy_V(1, 97) == 1);
    CHECK(additive_energy_V(2, 5) == 19);
    CHECK(additive_energy_V(6, 31) == oracle::energy_quadruples(6, 31));
    for (std::int64_t T = 1; T <= 4; ++T)
        for (auto p : sieve_primes(23)) CHECK(additive_energy_V(T, p) == oracle::energy_quadruples(T, p));
}

TEST_CASE("self_convolution") {
    const auto c = self_convolution(residue_histogram(ParamSet::farey(2), 5));
    CHECK(c == std::vector<std::int64_t>{2, 1, 1, 2, 3});
}

TEST_CASE("farey_expsum") {
    const auto s0 = farey_expsum(10, 7, 0);
    const auto h = residue_histogram(ParamSet::farey(10), 7);
    CHECK(s0.real() == doctest::Approx(static_cast<double>(h.mass())));
    CHECK(std::fabs(s0.imag()) < 1e-9);
    for (std::int64_t m = 0; m < 11; ++m) CHECK(std::abs(farey_expsum(1, 11, m)) == doctest::Approx(1.0));
    CHECK(std::abs(farey_expsum(2, 5, 1)) == doctest::Approx(2 * std::cos(std::numbers::pi / 5)).epsilon(1e-12));
    const auto all = farey_expsum_all(9, 13);
    for (std::int64_t m = 0; m < 13; ++m) CHECK(std::abs(all[m] - farey_expsum(9, 13, m)) < 1e-9);
}

TEST_CASE("Parseval identities") {
    for (std::int64_t T : {3, 8, 20})
        for (std::int64_t p : {5, 11, 53, 101}) {
            const auto S = farey_expsum_all(T, p);
            double s2 = 0, s4 = 0;
            for (const auto& z : S) {
                s2 += std::norm(z);
                s4 += std::norm(z) * std::norm(z);
            }
            const double pq = static_cast<double>(p * coincidence_count_Q(T, p));
            const double pv = static_cast<double>(p) * static_cast<double>(additive_energy_V(T, p));
            CHECK(std::fabs(s2 - pq) / pq < 1e-6);
            CHECK(std::fabs(s4 - pv) / pv < 1e-6);
        }
}
