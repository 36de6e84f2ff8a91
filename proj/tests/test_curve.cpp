#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "frobenius/curve.hpp"

using namespace frobenius;

TEST_CASE("trace examples") {
    CHECK(trace(make_curve(5, 1, 1)) == -3);
    CHECK(trace(make_curve(5, 1, 3)) == 2);
    CHECK_THROWS_AS(trace(make_curve(5, 0, 0)), std::invalid_argument);
    CHECK(trace_naive(make_curve(5, 1, 1)) == -3);
    CHECK(trace_naive(make_curve(5, 1, 3)) == 2);
    CHECK(trace_naive(make_curve(7, 0, 1)) == trace(make_curve(7, 0, 1)));
    CHECK_THROWS(trace_naive(make_curve(5, 0, 0)));
}

TEST_CASE("point counts by hand") {
    // Y^2 = X^3 + X + 1 over F_5: 8 affine points plus infinity.
    std::int64_t affine = 0;
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y) affine += (y * y - (x * x * x + x + 1)) % 5 == 0;
    CHECK(affine == 8);
    CHECK(5 + 1 - (affine + 1) == trace(make_curve(5, 1, 1)));
}

TEST_CASE("make_curve normalizes") {
    const auto c = make_curve(7, -1, 15);
    CHECK(c.a == 6);
    CHECK(c.b == 1);
    CHECK(c == make_curve(7, 6, 1));
    CHECK(make_curve(5, 0, 0).singular());
    CHECK_FALSE(make_curve(5, 1, 1).singular());
}

TEST_CASE("trace equals naive count, with and without a shared table") {
    std::mt19937_64 rng(7);
    for (auto p : sieve_primes(120)) {
        if (p < 3) continue;
        const QuadraticCharacter chi(p);
        for (int i = 0; i < 25; ++i) {
            const auto c = make_curve(p, static_cast<std::int64_t>(rng() % p), static_cast<std::int64_t>(rng() % p));
            if (c.singular()) {
                CHECK_THROWS(trace(c));
                continue;
            }
            const auto a = trace(c);
            CHECK(a == trace_naive(c));
            CHECK(a == trace(c, chi));
            CHECK(a * a <= 4 * p);
        }
    }
}

TEST_CASE("trace rejects even modulus and mismatched table") {
    CHECK_THROWS(trace(CurveModP{2, 1, 1}));
    const QuadraticCharacter chi(7);
    CHECK_THROWS(trace(make_curve(5, 1, 1), chi));
}

TEST_CASE("frobenius_angle") {
    CHECK(frobenius_angle(0, 101) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(frobenius_angle(-3, 5) == doctest::Approx(std::acos(-3.0 / (2.0 * std::sqrt(5.0)))).epsilon(1e-14));
    CHECK(frobenius_angle(-3, 5) == doctest::Approx(2.306111).epsilon(1e-6));
    CHECK(frobenius_angle(4, 5) == doctest::Approx(0.46365).epsilon(1e-5));
    CHECK_THROWS(frobenius_angle(5, 5));
    for (std::int64_t p : {5, 7, 101, 9973})
        for (std::int64_t a = -isqrt(4 * p); a <= isqrt(4 * p); ++a) {
            const double psi = frobenius_angle(a, p);
            CHECK(psi >= 0.0);
            CHECK(psi <= std::numbers::pi);
            CHECK(frobenius_angle(-a, p) == doctest::Approx(std::numbers::pi - psi).epsilon(1e-12));
        }
}

TEST_CASE("frobenius_field_disc") {
    CHECK(frobenius_field_disc(2, 5) == -1);
    CHECK(frobenius_field_disc(-3, 5) == -11);
    CHECK_THROWS(frobenius_field_disc(0, 5));
    CHECK_THROWS(frobenius_field_disc(5, 5));
    CHECK(frobenius_field_disc(1, 5) == -19);
    CHECK(frobenius_field_disc(-2, 5) == frobenius_field_disc(2, 5));
}

TEST_CASE("CM curve Y^2 = X^3 + X") {
    for (auto p : sieve_primes(3000)) {
        if (p < 3) continue;
        const auto a = trace(make_curve(p, 1, 0));
        if (p % 4 == 3) {
            CHECK(a == 0);
        } else {
            CHECK(a != 0);
            CHECK(frobenius_field_disc(a, p) == -1);
        }
    }
}
