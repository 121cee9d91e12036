// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "dioph/surd.hpp"

using namespace dioph;

// phi and sqrt(2) to 40 places, frozen from an independent high-precision
// evaluation.
static const char* kPhi40 = "1.6180339887498948482045868343656381177203";
static const char* kSqrt2_40 = "1.4142135623730950488016887242096980785697";

TEST_CASE("construction canonicalizes") {
    QuadraticSurd phi(1, 1, 5, 2);
    CHECK(phi.a() == 1);
    CHECK(phi.b() == 1);
    CHECK(phi.d() == 5);
    CHECK(phi.c() == 2);

    // square factors of d move into b: sqrt(8)/2 = sqrt(2)
    QuadraticSurd s(0, 1, 8, 2);
    CHECK(s.d() == 2);
    CHECK(s == QuadraticSurd(0, 1, 2, 1));

    // perfect-square radicand collapses to a rational
    QuadraticSurd r(1, 2, 9, 4);
    CHECK(r.is_rational());
    CHECK(r.to_rational() == Rational(7, 4));

    // sign normalization c > 0
    QuadraticSurd n(1, 1, 5, -2);
    CHECK(n.c() == 2);
    CHECK(n.sign() == -1);

    CHECK_THROWS_AS(QuadraticSurd(1, 1, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(QuadraticSurd(1, 1, 0, 1), std::invalid_argument);
}

TEST_CASE("exact sign and comparisons") {
    QuadraticSurd phi(1, 1, 5, 2);
    CHECK(phi.sign() == 1);
    CHECK((-phi).sign() == -1);
    CHECK(phi.compare(Rational(8, 5)) == 1);   // phi > 1.6
    CHECK(phi.compare(Rational(13, 8)) == -1); // phi < 1.625
    // mixed-sign comparison paths: 2 - sqrt(2) > 0, 1 - sqrt(2) < 0
    CHECK(QuadraticSurd(2, -1, 2, 1).sign() == 1);
    CHECK(QuadraticSurd(1, -1, 2, 1).sign() == -1);
    CHECK(QuadraticSurd(0, 0, 5, 1).sign() == 0);
}

TEST_CASE("floor is exact for both signs") {
    QuadraticSurd phi(1, 1, 5, 2);
    CHECK(phi.floor() == 1);
    CHECK((-phi).floor() == -2);
    CHECK(phi.times(Integer(5)).floor() == 8);  // 5 phi = 8.09...
    CHECK(QuadraticSurd::sqrt_of(7).floor() == 2);
    CHECK((-QuadraticSurd::sqrt_of(7)).floor() == -3);
    CHECK(QuadraticSurd(100, 1, 2, 7).floor() == 14); // (100 + sqrt 2)/7
}

TEST_CASE("enclosure brackets the value at the requested width") {
    QuadraticSurd phi(1, 1, 5, 2);
    Rational phi40 = parse_rational(kPhi40); // within 1e-40 of the true value
    for (long bits : {4L, 16L, 64L, 128L}) {
        Enclosure e = phi.enclosure(bits);
        CHECK(e.width() * pow2(static_cast<unsigned long>(bits)) <= 1);
        CHECK(e.lo <= phi40 + Rational(1, pow_int(10, 40)));
        CHECK(e.hi >= phi40 - Rational(1, pow_int(10, 40)));
    }
    Enclosure r2 = QuadraticSurd::sqrt_of(2).enclosure(4);
    Rational sqrt2_40 = parse_rational(kSqrt2_40);
    CHECK(r2.width() <= Rational(1, 16));
    CHECK(r2.contains(sqrt2_40));
}

TEST_CASE("norm_dist is exact: ||5 phi|| matches the frozen evaluation") {
    QuadraticSurd phi(1, 1, 5, 2);
    QuadraticSurd nd = phi.times(Integer(5)).norm_dist();
    // frozen: ||5 phi|| = 0.0901699437494742410229...
    Rational frozen = parse_rational("0.0901699437494742410229");
    Enclosure e = nd.enclosure(96);
    CHECK(e.lo <= frozen + Rational(1, pow_int(10, 20)));
    CHECK(e.hi >= frozen - Rational(1, pow_int(10, 20)));
    // ||x|| in [0, 1/2], and ||-x|| = ||x||, ||x + n|| = ||x||
    CHECK(nd.sign() >= 0);
    CHECK(nd.compare(Rational(1, 2)) <= 0);
    CHECK((-phi).norm_dist() == phi.norm_dist());
    CHECK(phi.plus(Rational(13)).norm_dist() == phi.norm_dist());
}

TEST_CASE("arithmetic stays exact inside one field") {
    QuadraticSurd phi(1, 1, 5, 2);
    QuadraticSurd x = phi.times(Rational(3, 7)).plus(Rational(2, 7)).minus(Rational(2, 7));
    CHECK(x == phi.times(Rational(3, 7)));
    // phi^2 = phi + 1
    CHECK(phi.times(phi) == phi.plus(Rational(1)));
    // conjugate product is the norm: phi * (1 - phi) = -1... via (a^2 - b^2 d)/c^2
    QuadraticSurd conj = phi.conjugate();
    QuadraticSurd prod = phi.times(conj);
    CHECK(prod.is_rational());
    CHECK(prod.to_rational() == Rational(-1));
    CHECK_THROWS_AS(phi.times(QuadraticSurd::sqrt_of(2)), std::invalid_argument);
}

TEST_CASE("mobius transform evaluates (p1 x + p0)/(q1 x + q0)") {
    QuadraticSurd phi(1, 1, 5, 2);
    // 1 + 1/phi = phi
    QuadraticSurd m = phi.mobius(1, 1, 1, 0); // (x + 1)/x
    CHECK(m == phi);
}
