// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dioph/parse.hpp"
#include "dioph/pseudo_abs.hpp"

using namespace dioph;

namespace {

// classical p-adic absolute value by repeated division
Rational padic_oracle(Integer q, const Integer& p) {
    if (q < 0) q = -q;
    Integer pk = 1;
    while (q % p == 0) {
        q /= p;
        pk *= p;
    }
    return make_rational(1, pk);
}

} // namespace

TEST_CASE("pseudo_abs on the canonical chains") {
    auto d2 = PseudoAbsSeq::adic(2);
    CHECK(pseudo_abs(12, d2) == Rational(1, 4));
    CHECK(pseudo_abs(7, d2) == Rational(1));
    CHECK(pseudo_abs(-12, d2) == Rational(1, 4));

    auto fact = PseudoAbsSeq::factorial();
    CHECK(pseudo_abs(12, fact) == Rational(1, 6));

    CHECK_THROWS_AS(pseudo_abs(0, d2), std::invalid_argument);
}

TEST_CASE("list chains validate the divisibility condition") {
    CHECK_NOTHROW(PseudoAbsSeq::list({1, 2, 4, 8, 40}));
    CHECK_THROWS_AS(PseudoAbsSeq::list({1, 3, 5}), std::invalid_argument);
    CHECK_THROWS_AS(PseudoAbsSeq::list({2, 4}), std::invalid_argument); // n_0 != 1
    // repeated terms are allowed (factorial-style)
    CHECK_NOTHROW(PseudoAbsSeq::list({1, 1, 2, 2, 6}));

    auto d = PseudoAbsSeq::list({1, 2, 4, 8, 40});
    CHECK(pseudo_abs(20, d) == Rational(1, 4));
    CHECK(pseudo_abs(40, d) == Rational(1, 40));
    CHECK(pseudo_abs(80, d) == Rational(1, 40)); // list ends before exceeding 80
}

TEST_CASE("unit identity n_k |n_k|_D = 1") {
    CHECK(unit_identity_check(PseudoAbsSeq::adic(2), 20));
    CHECK(unit_identity_check(PseudoAbsSeq::factorial(), 10));
    CHECK(unit_identity_check(PseudoAbsSeq::primorial(), 8));
    CHECK(unit_identity_check(PseudoAbsSeq::list({1, 2, 6, 30, 210, 2310}), 5));
}

TEST_CASE("geometric growth check is exact") {
    CHECK(geometric_growth_check(PseudoAbsSeq::adic(2), Rational(2), 50));
    // 7! = 5040 > 3^7 = 2187
    CHECK_FALSE(geometric_growth_check(PseudoAbsSeq::factorial(), Rational(3), 10));
    CHECK(geometric_growth_check(PseudoAbsSeq::factorial(), Rational(3), 6));
    CHECK_FALSE(geometric_growth_check(PseudoAbsSeq::adic(3), Rational(2), 2)); // 9 > 4
    // rational base just above 2 admits the 2-adic chain with room to spare
    CHECK(geometric_growth_check(PseudoAbsSeq::adic(2), Rational(201, 100), 30));
    CHECK_THROWS_AS(geometric_growth_check(PseudoAbsSeq::adic(2), Rational(1), 5),
                    std::invalid_argument);
}

TEST_CASE("pseudo_abs agrees with the classical p-adic value") {
    std::mt19937_64 eng(11);
    for (const long p : {2L, 3L, 5L}) {
        auto d = PseudoAbsSeq::adic(p);
        for (int i = 0; i < 400; ++i) {
            Integer q(static_cast<long>(eng() % 1000000 + 1));
            CHECK(pseudo_abs(q, d) == padic_oracle(q, p));
        }
        // powers of p exactly
        Integer pk = 1;
        for (int k = 0; k < 12; ++k) {
            CHECK(pseudo_abs(pk, d) == make_rational(1, pk));
            pk *= p;
        }
    }
}

TEST_CASE("|q|_D <= 1 with equality iff no chain element > 1 divides q") {
    auto d = PseudoAbsSeq::adic(3);
    std::mt19937_64 eng(13);
    for (int i = 0; i < 300; ++i) {
        Integer q(static_cast<long>(eng() % 100000 + 1));
        Rational v = pseudo_abs(q, d);
        CHECK(v <= 1);
        CHECK((v == 1) == (q % 3 != 0));
    }
}

TEST_CASE("truncating the chain can only increase |q|_D") {
    auto full = PseudoAbsSeq::list({1, 2, 4, 8, 16, 32});
    auto trunc = PseudoAbsSeq::list({1, 2, 4});
    std::mt19937_64 eng(17);
    for (int i = 0; i < 200; ++i) {
        Integer q(static_cast<long>(eng() % 5000 + 1));
        CHECK(pseudo_abs(q, trunc) >= pseudo_abs(q, full));
    }
}

TEST_CASE("chain candidates collapse repeats") {
    auto fact = PseudoAbsSeq::factorial();
    auto cands = chain_candidates(fact, 6);
    // n_1..n_6 = 1, 2, 6, 24, 120, 720 with the repeat of n_0=1 collapsed
    REQUIRE(cands.size() == 6);
    CHECK(cands[0].second == 1);
    CHECK(cands[1].second == 2);
    CHECK(cands[5].second == 720);
}

TEST_CASE("parse_pseudo round trips the CLI syntax") {
    CHECK(parse_pseudo("2adic").text() == "2adic");
    CHECK(parse_pseudo("10adic").text() == "10adic");
    CHECK(parse_pseudo("factorial").text() == "factorial");
    CHECK(parse_pseudo("primorial").text() == "primorial");
    CHECK(parse_pseudo("list:1,2,4,8,40").text() == "list:1,2,4,8,40");
    CHECK_THROWS_AS(parse_pseudo("list:1,3,5"), ParseError);
    CHECK_THROWS_AS(parse_pseudo("1adic"), ParseError);
    CHECK_THROWS_AS(parse_pseudo("nonsense"), ParseError);
}

TEST_CASE("primorial chain is 1, 2, 6, 30, 210, ...") {
    auto d = PseudoAbsSeq::primorial();
    CHECK(d.term(0) == 1);
    CHECK(d.term(1) == 2);
    CHECK(d.term(2) == 6);
    CHECK(d.term(3) == 30);
    CHECK(d.term(4) == 210);
    CHECK(d.term(5) == 2310);
}
