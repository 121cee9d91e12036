// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dioph/rational.hpp"

using namespace dioph;

TEST_CASE("parse_rational accepts fractions, integers, decimals") {
    CHECK(parse_rational("3/5") == Rational(3, 5));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-0.5") == Rational(-1, 2));
    CHECK(parse_rational("3.25") == Rational(13, 4));
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.2e3"), ParseError);
}

TEST_CASE("rat_str is always num/den") {
    CHECK(rat_str(Rational(3, 5)) == "3/5");
    CHECK(rat_str(Rational(-7)) == "-7/1");
    CHECK(parse_rational(rat_str(Rational(22, 7))) == Rational(22, 7));
}

TEST_CASE("norm_dist on rationals") {
    CHECK(norm_dist(Rational(21, 5)) == Rational(1, 5));
    CHECK(norm_dist(Rational(7, 2)) == Rational(1, 2)); // tie resolves to exactly 1/2
    CHECK(norm_dist(Rational(0)) == 0);
    CHECK(norm_dist(Rational(-21, 5)) == Rational(1, 5));
}

TEST_CASE("norm_dist properties: range, symmetry, periodicity") {
    std::mt19937_64 eng(42);
    for (int i = 0; i < 500; ++i) {
        long den = static_cast<long>(eng() % 5000 + 1);
        long num = static_cast<long>(eng() % 20000) - 10000;
        Rational x = make_rational(num, den);
        Rational d = norm_dist(x);
        CHECK(d >= 0);
        CHECK(d <= Rational(1, 2));
        CHECK(norm_dist(Rational(-x)) == d);
        long shift = static_cast<long>(eng() % 100) - 50;
        CHECK(norm_dist(Rational(x + shift)) == d);
    }
}

TEST_CASE("floor and frac helpers") {
    CHECK(floor_q(Rational(7, 2)) == 3);
    CHECK(floor_q(Rational(-7, 2)) == -4);
    CHECK(frac_part(Rational(-7, 2)) == Rational(1, 2));
    CHECK(floor_div(Integer(-7), Integer(2)) == -4);
    CHECK(ceil_div(Integer(-7), Integer(2)) == -3);
    CHECK(floor_div(Integer(7), Integer(-2)) == -4);
}
