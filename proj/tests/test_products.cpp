// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "dioph/parse.hpp"
#include "dioph/products.hpp"
#include "support/oracles.hpp"

using namespace dioph;

namespace {
ExactReal phi() { return parse_exact_real("cf(1;(1))"); }
ExactReal sqrt2m1() { return parse_exact_real("cf(0;(2))"); }
} // namespace

TEST_CASE("product_value: dirichlet at q = 8 matches the frozen evaluation") {
    auto spec = ProductSpec::dirichlet(phi());
    Enclosure e = product_value(spec, 8);
    Rational frozen = parse_rational("0.4458247200067297149064"); // 8 ||8 phi||
    CHECK(e.lo <= frozen + Rational(1, pow_int(10, 18)));
    CHECK(e.hi >= frozen - Rational(1, pow_int(10, 18)));
    CHECK(e.meets_relative_width(32));
}

TEST_CASE("product_value: littlewood hits exact zero at the lcm") {
    auto spec = ProductSpec::littlewood(ExactReal(Rational(1, 3)), ExactReal(Rational(1, 4)));
    Enclosure e = product_value(spec, 12);
    CHECK(e.is_exact());
    CHECK(e.lo == 0);
    Enclosure e2 = product_value(spec, 5);
    CHECK(e2.is_exact()); // rational inputs give exact products
    // 5 * ||5/3|| * ||5/4|| = 5 * 1/3 * 1/4
    CHECK(e2.lo == Rational(5, 12));
}

TEST_CASE("product_value: mixed reduces by the unit identity at chain points") {
    auto spec = ProductSpec::mixed(phi(), PseudoAbsSeq::adic(2), ExactReal(Rational(0)));
    Enclosure full = product_value(spec, 4);
    // q |q|_D = 1 at q = 4, so the product is exactly ||4 phi||
    Enclosure reduced = phi().scaled_norm_dist(4, ExactReal(Rational(0))).enclosure(65);
    CHECK(full.intersects(reduced));
    Rational q_abs = Rational(4) * pseudo_abs(4, PseudoAbsSeq::adic(2));
    CHECK(q_abs == 1);
}

TEST_CASE("littlewood product is symmetric in alpha and beta") {
    ExactReal a = phi(), b = parse_exact_real("surd(0,1,2,1)");
    for (long q : {3L, 8L, 21L, 55L}) {
        Enclosure e1 = product_value(ProductSpec::littlewood(a, b), q);
        Enclosure e2 = product_value(ProductSpec::littlewood(b, a), q);
        CHECK(e1.lo == e2.lo);
        CHECK(e1.hi == e2.hi);
    }
}

TEST_CASE("hybrid with gamma = 0 equals littlewood exactly") {
    ExactReal a = phi(), b = parse_exact_real("surd(0,1,2,1)");
    for (long q : {2L, 7L, 13L}) {
        Enclosure h = product_value(ProductSpec::hybrid(a, b, ExactReal(Rational(0))), q);
        Enclosure l = product_value(ProductSpec::littlewood(a, b), q);
        CHECK(h.lo == l.lo);
        CHECK(h.hi == l.hi);
    }
}

TEST_CASE("mixed with the trivial chain degenerates to q ||q a - d||") {
    auto trivial = PseudoAbsSeq::list({1});
    ExactReal d(Rational(1, 3));
    auto spec = ProductSpec::mixed(phi(), trivial, d);
    for (long q : {2L, 9L}) {
        Enclosure e = product_value(spec, q);
        Enclosure nd = phi().scaled_norm_dist(q, d).enclosure(80);
        Enclosure expect = nd.scaled(Rational(q));
        CHECK(e.intersects(expect));
    }
}

TEST_CASE("scan_min: running minima beat strictly and match a float oracle") {
    auto spec = ProductSpec::littlewood(phi(), phi());
    ScanOptions opt;
    opt.shards = 1;
    auto recs = scan_min(spec, 1, 100, opt);
    REQUIRE(!recs.empty());
    // strict improvement chain
    for (std::size_t i = 1; i < recs.size(); ++i)
        CHECK(recs[i].value.hi < recs[i - 1].value.lo);
    // against a direct floating evaluation of q ||q phi||^2
    oracle::MpfrReal x(256);
    oracle::mpfr_surd(x.get(), 1, 1, 5, 2);
    double best = 1e300;
    std::vector<long> oracle_argmins;
    for (long q = 1; q <= 100; ++q) {
        double nd = oracle::norm_dist_times_q(x.get(), q);
        double v = q * nd * nd;
        if (v < best * (1 - 1e-12)) {
            best = v;
            oracle_argmins.push_back(q);
        }
    }
    REQUIRE(recs.size() == oracle_argmins.size());
    for (std::size_t i = 0; i < recs.size(); ++i) CHECK(recs[i].q == oracle_argmins[i]);
}

TEST_CASE("scan_min is invariant under the shard count") {
    auto spec = ProductSpec::dirichlet(phi());
    ScanOptions base;
    base.shards = 1;
    base.eps = Rational(1, 5);
    auto ref = scan_min(spec, 1, 2000, base);
    for (unsigned shards : {2u, 3u, 7u}) {
        ScanOptions opt;
        opt.shards = shards;
        opt.eps = Rational(1, 5);
        auto got = scan_min(spec, 1, 2000, opt);
        REQUIRE(got.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(got[i].q == ref[i].q);
            CHECK(got[i].value.lo == ref[i].value.lo);
            CHECK(got[i].value.hi == ref[i].value.hi);
            CHECK(got[i].beats_bound == ref[i].beats_bound);
        }
    }
}

TEST_CASE("scan_min: sampled-stream alpha in F_M keeps every record positive") {
    ExactReal alpha(sample_FM(3, 64, 2024));
    auto recs = scan_min(ProductSpec::dirichlet(alpha), 1, 500, {});
    for (const auto& r : recs) CHECK(r.value.lo > 0);
}

TEST_CASE("convergent_scan: dirichlet over phi's denominators tends to 1/sqrt5") {
    auto spec = ProductSpec::dirichlet(phi());
    auto table = ConvergentTable::build(expand_surd(phi().surd()), 40);
    auto recs = convergent_scan(spec, table);
    REQUIRE(!recs.empty());
    Rational inv_sqrt5 = parse_rational("0.4472135954999579392818"); // frozen 1/sqrt 5
    // every value on a convergent denominator is < 1
    Integer prev_q = 0;
    for (const auto& r : recs) {
        CHECK(r.value.hi < 1);
        CHECK(r.q > prev_q);
        prev_q = r.q;
    }
    // record values sit within ~0.07 of the limit and the first record is 2-phi
    CHECK(recs[0].q == 1);
    Rational first = parse_rational("0.3819660112501051517954");
    CHECK(recs[0].value.lo <= first + Rational(1, pow_int(10, 15)));
    CHECK(recs[0].value.hi >= first - Rational(1, pow_int(10, 15)));
}

TEST_CASE("convergent_scan rejects a mismatched table") {
    auto spec = ProductSpec::dirichlet(phi());
    auto wrong = ConvergentTable::build(expand_surd(QuadraticSurd::sqrt_of(2)), 10);
    CHECK_THROWS_AS(convergent_scan(spec, wrong), std::invalid_argument);
}

TEST_CASE("convergent_scan: hybrid at gamma = 0 equals littlewood on the same rows") {
    ExactReal b = sqrt2m1();
    auto table = ConvergentTable::build(expand_surd(phi().surd()), 20);
    auto h = convergent_scan(ProductSpec::hybrid(phi(), b, ExactReal(Rational(0))), table);
    auto l = convergent_scan(ProductSpec::littlewood(phi(), b), table);
    REQUIRE(h.size() == l.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        CHECK(h[i].q == l[i].q);
        CHECK(h[i].value.lo == l[i].value.lo);
    }
}

TEST_CASE("bound_rhs frozen evaluations") {
    // (log 8)^(-1/2)
    Enclosure b8 = bound_rhs(8, Rational(0));
    Rational f8 = parse_rational("0.6934683460425485076513");
    CHECK(b8.lo <= f8);
    CHECK(b8.hi >= f8);
    CHECK(b8.meets_relative_width(32));
    // (log 2)^(-1/4)
    Enclosure b2 = bound_rhs(2, Rational(1, 4));
    Rational f2 = parse_rational("1.0959573024467923106452");
    CHECK(b2.lo <= f2);
    CHECK(b2.hi >= f2);
    // exponent 0 (the eps -> 1/2 limit) gives exactly 1
    Enclosure b1 = log_power_bound(17, Rational(0));
    CHECK(b1.lo == 1);
    CHECK(b1.hi == 1);
    CHECK_THROWS_AS(bound_rhs(1, Rational(1, 5)), std::invalid_argument);
    CHECK_THROWS_AS(bound_rhs(8, Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(bound_rhs(8, Rational(-1, 10)), std::invalid_argument);
}

TEST_CASE("scan_min attaches bounds and the beats flag when eps is given") {
    ScanOptions opt;
    opt.eps = Rational(1, 5);
    opt.shards = 2;
    auto recs = scan_min(ProductSpec::dirichlet(phi()), 1, 50, opt);
    for (const auto& r : recs) {
        if (r.q < 2) {
            CHECK(!r.bound);
            continue;
        }
        REQUIRE(r.bound);
        CHECK(r.beats_bound == r.value.certainly_less(*r.bound));
    }
}
