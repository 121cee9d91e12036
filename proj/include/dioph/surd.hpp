// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>

#include "dioph/enclosure.hpp"

namespace dioph {

// (a + b*sqrt(d))/c with integer a, b, d, c; c > 0; gcd(a, b, c) = 1.
// Square factors of d are extracted into b at construction (complete for
// d < 2^32, best-effort by trial division for larger d); d = 1 collapses the
// value to a rational, observable through is_rational().
//
// All comparisons are exact integer-sign arguments; evaluation to a rational
// interval uses integer-square-root bracketing.  No floating point anywhere.
class QuadraticSurd {
public:
    QuadraticSurd() : a_(0), b_(0), d_(5), c_(1) {}

    QuadraticSurd(Integer a, Integer b, Integer d, Integer c)
        : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)), c_(std::move(c)) {
        if (c_ == 0) throw std::invalid_argument("QuadraticSurd: c must be nonzero");
        if (d_ <= 0) throw std::invalid_argument("QuadraticSurd: d must be positive");
        normalize();
    }

    static QuadraticSurd from_rational(const Rational& r) {
        return QuadraticSurd(r.get_num(), 0, 5, r.get_den());
    }

    static QuadraticSurd sqrt_of(const Integer& d) { return QuadraticSurd(0, 1, d, 1); }

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    const Integer& d() const { return d_; }
    const Integer& c() const { return c_; }

    bool is_rational() const { return b_ == 0; }

    Rational to_rational() const {
        if (!is_rational()) throw std::logic_error("QuadraticSurd: irrational value");
        return make_rational(a_, c_);
    }

    // --- arithmetic (exact; stays inside Q(sqrt(d))) ---

    QuadraticSurd operator-() const { return raw(-a_, -b_, d_, c_); }

    QuadraticSurd plus(const Rational& r) const {
        return raw(a_ * r.get_den() + r.get_num() * c_, b_ * r.get_den(), d_, c_ * r.get_den());
    }
    QuadraticSurd minus(const Rational& r) const { return plus(-r); }

    QuadraticSurd times(const Rational& r) const {
        return raw(a_ * r.get_num(), b_ * r.get_num(), d_, c_ * r.get_den());
    }
    QuadraticSurd times(const Integer& n) const { return raw(a_ * n, b_ * n, d_, c_); }

    QuadraticSurd times(const QuadraticSurd& o) const {
        require_same_field(o);
        Integer na = a_ * o.a_ + b_ * o.b_ * d_;
        Integer nb = a_ * o.b_ + b_ * o.a_;
        return raw(na, nb, d_, c_ * o.c_);
    }

    QuadraticSurd minus(const QuadraticSurd& o) const {
        require_same_field(o);
        return raw(a_ * o.c_ - o.a_ * c_, b_ * o.c_ - o.b_ * c_, d_, c_ * o.c_);
    }

    QuadraticSurd conjugate() const { return raw(a_, -b_, d_, c_); }

    // (p1*this + p0) / (q1*this + q0); exact via conjugate division.
    QuadraticSurd mobius(const Integer& p1, const Integer& p0, const Integer& q1,
                         const Integer& q0) const {
        // numerator (p1 a + p0 c) + p1 b sqrt(d); denominator likewise
        Integer na = p1 * a_ + p0 * c_, nb = p1 * b_;
        Integer ma = q1 * a_ + q0 * c_, mb = q1 * b_;
        // (na + nb r)/(ma + mb r) * (ma - mb r)/(ma - mb r),  r = sqrt(d)
        Integer den = ma * ma - mb * mb * d_;
        if (den == 0) throw std::invalid_argument("mobius: singular denominator");
        Integer ra = na * ma - nb * mb * d_;
        Integer rb = nb * ma - na * mb;
        return raw(ra, rb, d_, den);
    }

    // --- exact order ---

    int sign() const { return sign_of(a_, b_, d_); } // c_ > 0 after normalize

    int compare(const Rational& r) const {
        // (a + b sqrt d)/c - p/q  ~  (a q - p c) + b q sqrt d
        Integer na = a_ * r.get_den() - r.get_num() * c_;
        Integer nb = b_ * r.get_den();
        return sign_of(na, nb, d_);
    }

    int compare(const QuadraticSurd& o) const {
        if (is_rational()) return -o.compare(to_rational());
        if (o.is_rational()) return compare(o.to_rational());
        require_same_field(o);
        return minus(o).sign();
    }

    bool operator==(const QuadraticSurd& o) const {
        if (is_rational() != o.is_rational()) return false;
        if (is_rational()) return to_rational() == o.to_rational();
        return d_ == o.d_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
    }

    // --- floor, fractional part, nearest-integer distance (all exact) ---

    Integer floor() const {
        if (b_ == 0) return floor_div(a_, c_);
        // floor((a + b sqrt d)/c) = floor((a + floor(b sqrt d))/c) for c > 0,
        // valid because b*sqrt(d) is irrational here.
        Integer b2d = b_ * b_ * d_;
        Integer s = isqrt(b2d);
        Integer bsd = (b_ > 0) ? s : -(s + 1);
        return floor_div(a_ + bsd, c_);
    }

    QuadraticSurd frac() const { return minus(Rational(floor())); }

    // Distance to the nearest integer; exact (a tie is impossible for an
    // irrational value, and rational values are handled exactly).
    QuadraticSurd norm_dist() const {
        if (is_rational()) return from_rational(dioph::norm_dist(to_rational()));
        QuadraticSurd f = frac();
        static const Rational half(1, 2);
        if (f.compare(half) <= 0) return f;
        return (-f).plus(Rational(1));
    }

    // --- certified evaluation ---

    // Enclosure of the value with width <= 2^-bits.
    Enclosure enclosure(long bits) const {
        if (bits < 1) bits = 1;
        if (b_ == 0) return Enclosure(to_rational());
        // sqrt(d) in [s/2^p, (s+1)/2^p] with s = isqrt(d * 4^p); the enclosure
        // width |b|/(c*2^p) meets the target once p >= bits + bitlen(b).
        unsigned long p = static_cast<unsigned long>(bits) + bit_length(b_) + 1;
        Integer scaled = d_;
        mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * p);
        Integer s = isqrt(scaled);
        Integer denom = c_;
        mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), p);
        Integer shift = a_ * pow2(p);
        Integer lo_num = shift + b_ * (b_ > 0 ? s : s + 1);
        Integer hi_num = shift + b_ * (b_ > 0 ? s + 1 : s);
        return Enclosure(make_rational(lo_num, denom), make_rational(hi_num, denom));
    }

    std::string text() const {
        return "surd(" + a_.get_str() + "," + b_.get_str() + "," + d_.get_str() + "," +
               c_.get_str() + ")";
    }

private:
    Integer a_, b_, d_, c_;

    // skips normalization; for internal results already in reduced field form
    static QuadraticSurd raw(Integer a, Integer b, Integer d, Integer c) {
        QuadraticSurd s;
        s.a_ = std::move(a);
        s.b_ = std::move(b);
        s.d_ = std::move(d);
        s.c_ = std::move(c);
        s.reduce();
        return s;
    }

    void require_same_field(const QuadraticSurd& o) const {
        if (b_ != 0 && o.b_ != 0 && d_ != o.d_)
            throw std::invalid_argument("QuadraticSurd: mixed radicands " + d_.get_str() +
                                        " and " + o.d_.get_str());
    }

    static int sign_of(const Integer& a, const Integer& b, const Integer& d) {
        int sa = sgn(a), sb = sgn(b);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 against b^2 d
        Integer lhs = a * a, rhs = b * b * d;
        int c = cmp(lhs, rhs);
        if (c == 0) return 0; // only possible when sqrt(d) is rational
        // |a| dominates  <=>  sign is sign(a)
        return c > 0 ? sa : sb;
    }

    void reduce() {
        if (c_ < 0) { a_ = -a_; b_ = -b_; c_ = -c_; }
        if (b_ == 0) {
            Integer g = dioph::gcd(a_ < 0 ? Integer(-a_) : a_, c_);
            if (g > 1) { a_ /= g; c_ /= g; }
            if (a_ == 0) c_ = 1;
            return;
        }
        Integer g = dioph::gcd(dioph::gcd(a_ < 0 ? Integer(-a_) : a_, b_ < 0 ? Integer(-b_) : b_), c_);
        if (g > 1) { a_ /= g; b_ /= g; c_ /= g; }
    }

    void normalize() {
        extract_square_part();
        if (d_ == 1) { a_ += b_; b_ = 0; }
        else if (is_perfect_square(d_)) { a_ += b_ * isqrt(d_); b_ = 0; }
        reduce();
    }

    void extract_square_part() {
        if (b_ == 0 || d_ < 4) return;
        if (is_perfect_square(d_)) { b_ *= isqrt(d_); d_ = 1; return; }
        Integer p = 2;
        while (p * p <= d_ && p < 65536) {
            Integer pp = p * p;
            while (divides(pp, d_)) { d_ /= pp; b_ *= p; }
            mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        }
        if (is_perfect_square(d_)) { b_ *= isqrt(d_); d_ = 1; }
    }
};

} // namespace dioph
