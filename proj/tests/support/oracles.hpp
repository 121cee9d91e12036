// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, deliberately independent of the library's computation
// paths: an exhaustive O(N^2) endpoint-enumeration discrepancy, a
// plain-MPFR floating evaluation of approximation products, and a seeded
// rational point generator.
#pragma once

#include <mpfr.h>

#include <cstdint>
#include <random>
#include <vector>

#include "dioph/rational.hpp"

namespace oracle {

using dioph::Integer;
using dioph::Rational;

// Exhaustive extreme discrepancy: every candidate endpoint pair from
// {0, 1, sample values} with all four open/closed combinations, counting
// memberships directly.
inline Rational discrepancy(const std::vector<Rational>& pts) {
    std::vector<Rational> cands = pts;
    cands.emplace_back(0);
    cands.emplace_back(1);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    const Rational n(static_cast<unsigned long>(pts.size()));
    Rational best(0);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        for (std::size_t j = i; j < cands.size(); ++j) {
            const Rational& s = cands[i];
            const Rational& t = cands[j];
            for (int lc = 0; lc < 2; ++lc) {
                for (int rc = 0; rc < 2; ++rc) {
                    if (s == t && !(lc && rc)) continue;
                    long count = 0;
                    for (const auto& x : pts) {
                        bool left_ok = lc ? x >= s : x > s;
                        bool right_ok = rc ? x <= t : x < t;
                        if (left_ok && right_ok) ++count;
                    }
                    Rational val = Rational(count) - n * (t - s);
                    if (val < 0) val = -val;
                    if (val > best) best = val;
                }
            }
        }
    }
    return best;
}

// Seeded random exact rational point set in [0, 1).
inline std::vector<Rational> random_points(std::uint64_t seed, std::size_t n,
                                           unsigned long max_den = 1000) {
    std::mt19937_64 eng(seed);
    std::vector<Rational> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        unsigned long den = eng() % max_den + 1;
        unsigned long num = eng() % den;
        pts.push_back(dioph::make_rational(Integer(num), Integer(den)));
    }
    return pts;
}

// Plain floating-point distance to the nearest integer of q * x, evaluated
// with MPFR at fixed precision; no interval machinery involved.
class MpfrReal {
public:
    explicit MpfrReal(mpfr_prec_t prec = 256) { mpfr_init2(v_, prec); }
    ~MpfrReal() { mpfr_clear(v_); }
    MpfrReal(const MpfrReal&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

// value of (a + b*sqrt(d))/c
inline void mpfr_surd(mpfr_ptr out, long a, long b, long d, long c) {
    MpfrReal t(mpfr_get_prec(out));
    mpfr_set_si(t.get(), d, MPFR_RNDN);
    mpfr_sqrt(t.get(), t.get(), MPFR_RNDN);
    mpfr_mul_si(t.get(), t.get(), b, MPFR_RNDN);
    mpfr_add_si(t.get(), t.get(), a, MPFR_RNDN);
    mpfr_div_si(out, t.get(), c, MPFR_RNDN);
}

inline double norm_dist_times_q(mpfr_srcptr x, const Integer& q) {
    MpfrReal t(mpfr_get_prec(x)), f(mpfr_get_prec(x));
    mpfr_mul_z(t.get(), x, q.get_mpz_t(), MPFR_RNDN);
    mpfr_frac(f.get(), t.get(), MPFR_RNDN); // same sign as t; q, x > 0 here
    double fr = mpfr_get_d(f.get(), MPFR_RNDN);
    double nd = fr <= 0.5 ? fr : 1.0 - fr;
    return nd;
}

} // namespace oracle
