// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dioph/errors.hpp"

namespace dioph {

using Integer = mpz_class;

// Global cap (in bits) for adaptive-precision refinement loops.  A loop that
// reaches the cap without deciding its comparison throws PrecisionExhausted.
inline constexpr long kDefaultPrecisionCap = 1L << 16;

inline Integer isqrt(const Integer& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Integer& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// floor(a/b); GMP's fdiv rounds toward -infinity for any sign combination.
inline Integer floor_div(const Integer& a, const Integer& b) {
    if (b == 0) throw std::invalid_argument("floor_div: zero divisor");
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
    if (b == 0) throw std::invalid_argument("ceil_div: zero divisor");
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer pow_int(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer pow2(unsigned long e) {
    Integer r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
    return r;
}

// True (and sets root) iff n is an exact k-th power of a nonnegative integer.
inline bool exact_root(const Integer& n, unsigned long k, Integer& root) {
    if (n < 0 || k == 0) return false;
    Integer r;
    int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    root = r;
    return exact != 0;
}

inline Integer fibonacci(unsigned long k) {
    Integer r;
    mpz_fib_ui(r.get_mpz_t(), k);
    return r;
}

inline unsigned long bit_length(const Integer& n) {
    if (n == 0) return 1;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline bool divides(const Integer& d, const Integer& n) {
    if (d == 0) return n == 0;
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Integer parse_integer(const std::string& s) {
    try {
        return Integer(s);
    } catch (const std::invalid_argument&) {
        throw ParseError("invalid integer literal '" + s + "'");
    }
}

} // namespace dioph
