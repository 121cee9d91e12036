// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "dioph/exact_real.hpp"
#include "dioph/parse.hpp"

using namespace dioph;

namespace {
Rational abs_q(const Rational& x) { return x < 0 ? Rational(-x) : x; }
} // namespace

TEST_CASE("approximate: rationals pass through") {
    ExactReal x(Rational(1, 3));
    CHECK(x.approximate(10) == Rational(1, 3));
}

TEST_CASE("approximate: surd evaluation against the frozen value") {
    ExactReal phi = parse_exact_real("surd(1,1,5,2)");
    Rational frozen = parse_rational("1.6180339887498948482045868343656381177203");
    Rational a64 = phi.approximate(64);
    CHECK(abs_q(a64 - frozen) <= Rational(1, pow2(63)));
    Rational a4 = parse_exact_real("surd(0,1,2,1)").approximate(4);
    Rational r2 = parse_rational("1.4142135623730950488");
    CHECK(abs_q(a4 - r2) <= Rational(1, 16));
}

TEST_CASE("approximate at higher precision stays within the coarse budget") {
    std::vector<ExactReal> xs = {
        parse_exact_real("surd(1,1,5,2)"),
        ExactReal(sample_FM(3, 16, 7)),
        parse_exact_real("cf(0;(2))"),
    };
    for (const auto& x : xs) {
        for (long p : {8L, 24L, 48L}) {
            Rational coarse = x.approximate(p);
            Rational fine = x.approximate(p + 31);
            CHECK(abs_q(fine - coarse) <= Rational(1, pow2(static_cast<unsigned long>(p))));
        }
    }
}

TEST_CASE("norm_dist on every representation kind") {
    CHECK(ExactReal(Rational(21, 5)).norm_dist().rational() == Rational(1, 5));
    CHECK(ExactReal(Rational(7, 2)).norm_dist().rational() == Rational(1, 2));

    ExactReal phi = parse_exact_real("surd(1,1,5,2)");
    ExactReal nd5 = ExactReal(phi.surd().times(Integer(5))).norm_dist();
    Rational frozen = parse_rational("0.0901699437494742410229");
    CHECK(abs_q(nd5.approximate(80) - frozen) <= Rational(1, pow_int(10, 18)));

    // stream route: a sampled stream's norm is a refinable derived value
    ExactReal s(sample_FM(3, 32, 5));
    ExactReal nd = s.norm_dist();
    for (long bits : {16L, 40L, 80L}) {
        Enclosure e = nd.enclosure(bits);
        CHECK(e.width() <= Rational(1, pow2(static_cast<unsigned long>(bits))));
        CHECK(e.lo >= 0);
        CHECK(e.hi <= Rational(1, 2));
    }
}

TEST_CASE("scaled_norm_dist: exact cases") {
    // ||7 * 3/5|| = ||21/5|| = 1/5
    ExactReal x(Rational(3, 5));
    CHECK(x.scaled_norm_dist(7, ExactReal(Rational(0))).rational() == Rational(1, 5));

    // ||1*x - x|| = 0 for a surd
    ExactReal phi = parse_exact_real("surd(1,1,5,2)");
    ExactReal z = phi.scaled_norm_dist(1, phi);
    REQUIRE(z.is_rational());
    CHECK(z.rational() == 0);

    // ||8 phi|| frozen
    ExactReal nd8 = phi.scaled_norm_dist(8, ExactReal(Rational(0)));
    Rational frozen = parse_rational("0.0557280900008412143633");
    CHECK(abs_q(nd8.approximate(80) - frozen) <= Rational(1, pow_int(10, 18)));

    // rational minus surd: ||q r - s||
    ExactReal r(Rational(1, 2));
    ExactReal m = r.scaled_norm_dist(3, phi);
    // |3/2 - phi| = phi - 3/2 = 0.1180...
    Rational expect = parse_rational("0.1180339887498948482");
    CHECK(abs_q(m.approximate(64) - expect) <= Rational(1, pow_int(10, 17)));
}

TEST_CASE("scaled_norm_dist on streams refines to any width") {
    ExactReal s(sample_FM(5, 60, 4242));
    ExactReal nd = s.scaled_norm_dist(Integer(1) << 40, ExactReal(Rational(1, 3)));
    for (long bits : {32L, 64L, 128L}) {
        Enclosure e = nd.enclosure(bits);
        CHECK(e.width() <= Rational(1, pow2(static_cast<unsigned long>(bits))));
    }
}

TEST_CASE("certified comparison") {
    ExactReal phi = parse_exact_real("cf(1;(1))"); // parsed to the exact surd
    REQUIRE(phi.is_surd());
    CHECK(phi.compare(Rational(8, 5)) == 1);
    CHECK(phi.compare(Rational(13, 8)) == -1);
    ExactReal s(sample_FM(3, 64, 9));
    // a sampled stream lies strictly inside (0, 1)
    CHECK(s.compare(Rational(0)) == 1);
    CHECK(s.compare(Rational(1)) == -1);
}

TEST_CASE("parse_exact_real literals") {
    CHECK(parse_exact_real("3/5").rational() == Rational(3, 5));
    CHECK(parse_exact_real("cf(3;7)").rational() == Rational(22, 7)); // finite cf is rational
    CHECK(parse_exact_real("cf(1;(1))").surd() == QuadraticSurd(1, 1, 5, 2));
    CHECK(parse_exact_real("cf(0;(2))").surd() == QuadraticSurd(-1, 1, 2, 1)); // sqrt 2 - 1
    CHECK(parse_exact_real("cf(2;(1,1,1,4))").surd() == QuadraticSurd::sqrt_of(7));
    CHECK(parse_exact_real(" surd( 1 , 1 , 5 , 2 ) ").surd() == QuadraticSurd(1, 1, 5, 2));
    ExactReal fm = parse_exact_real("fm(3;123)");
    REQUIRE(fm.is_stream());
    CHECK(fm.stream().sample_bound() == 3);
    CHECK(fm.text() == "fm(3;123)");
    CHECK_THROWS_AS(parse_exact_real("cf(1;0,2)"), ParseError);
    CHECK_THROWS_AS(parse_exact_real("surd(1,1,5)"), ParseError);
    CHECK_THROWS_AS(parse_exact_real("fm(2;1)"), ParseError);
    CHECK_THROWS_AS(parse_exact_real("garbage()"), ParseError);
}

TEST_CASE("text round trips") {
    for (const char* lit : {"3/5", "surd(1,1,5,2)", "fm(4;77)"}) {
        ExactReal x = parse_exact_real(lit);
        ExactReal y = parse_exact_real(x.text());
        CHECK(x.text() == y.text());
    }
}

TEST_CASE("deep_clone decouples stream state") {
    ExactReal a(sample_FM(3, 8, 31));
    ExactReal b = a.deep_clone();
    Enclosure ea = a.enclosure(256);
    Enclosure eb = b.enclosure(256);
    CHECK(ea.lo == eb.lo);
    CHECK(ea.hi == eb.hi);
}
