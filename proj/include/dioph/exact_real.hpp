// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <variant>

#include "dioph/cf.hpp"

namespace dioph {

namespace detail {

// Incremental convergent evaluation of a digit stream.  Consecutive
// convergents bracket the value, so every refinement step yields an exact
// rational enclosure of width 1/(q_k q_{k+1}).
class CFEvaluator {
public:
    explicit CFEvaluator(DigitStream s) : stream_(std::move(s)) {
        p_prev_ = 1; q_prev_ = 0;
        p_ = stream_.a0(); q_ = 1;
        k_ = 0;
        if (stream_.length() == std::size_t(0)) { exact_ = Rational(stream_.a0()); }
    }

    const DigitStream& stream() const { return stream_; }

    Enclosure refine_to_width(const Rational& w) {
        while (!exact_) {
            // current bracket: [p/q, p'/q'] in some order, width 1/(q q')
            if (k_ >= 1 && Rational(1) <= w * q_ * q_prev_) break;
            step();
        }
        if (exact_) return Enclosure(*exact_);
        Rational c1 = make_rational(p_prev_, q_prev_);
        Rational c2 = make_rational(p_, q_);
        return c1 <= c2 ? Enclosure(c1, c2) : Enclosure(c2, c1);
    }

    Enclosure enclosure_bits(long bits) {
        if (bits < 1) bits = 1;
        return refine_to_width(make_rational(1, pow2(static_cast<unsigned long>(bits))));
    }

private:
    void step() {
        std::size_t next = k_ + 1;
        if (auto len = stream_.length(); len && next > *len) {
            exact_ = make_rational(p_, q_);
            return;
        }
        const Integer& a = stream_.digit(next);
        Integer pn = a * p_ + p_prev_;
        Integer qn = a * q_ + q_prev_;
        p_prev_ = p_; q_prev_ = q_;
        p_ = pn; q_ = qn;
        k_ = next;
    }

    DigitStream stream_;
    Integer p_prev_, q_prev_, p_, q_;
    std::size_t k_;
    std::optional<Rational> exact_;
};

} // namespace detail

// A real number given exactly: a rational, a quadratic surd, a
// continued-fraction digit stream, or a derived value that can be enclosed
// to any requested precision.  Every variant evaluates to a rational
// enclosure of width <= 2^-bits on demand.
class ExactReal {
public:
    using DerivedFn = std::function<Enclosure(long bits)>;

    ExactReal() : rep_(Rational(0)) {}
    ExactReal(Rational r) : rep_(std::move(r)) {}
    ExactReal(const QuadraticSurd& s) {
        if (s.is_rational()) rep_ = s.to_rational();
        else rep_ = s;
    }
    ExactReal(const DigitStream& s) {
        if (s.is_finite()) {
            detail::CFEvaluator ev(s);
            rep_ = ev.refine_to_width(Rational(0)).lo; // exact for finite streams
        } else {
            rep_ = std::make_shared<detail::CFEvaluator>(s);
        }
    }

    static ExactReal derived(DerivedFn fn) {
        ExactReal x;
        x.rep_ = std::move(fn);
        return x;
    }

    bool is_rational() const { return std::holds_alternative<Rational>(rep_); }
    bool is_surd() const { return std::holds_alternative<QuadraticSurd>(rep_); }
    bool is_stream() const { return std::holds_alternative<StreamPtr>(rep_); }
    bool is_derived() const { return std::holds_alternative<DerivedFn>(rep_); }
    bool is_exact() const { return is_rational() || is_surd(); }

    const Rational& rational() const { return std::get<Rational>(rep_); }
    const QuadraticSurd& surd() const { return std::get<QuadraticSurd>(rep_); }
    const DigitStream& stream() const { return std::get<StreamPtr>(rep_)->stream(); }

    // Certified enclosure of width <= 2^-bits.
    Enclosure enclosure(long bits) const {
        if (bits < 1) bits = 1;
        if (is_rational()) return Enclosure(rational());
        if (is_surd()) return surd().enclosure(bits);
        if (is_stream()) return std::get<StreamPtr>(rep_)->enclosure_bits(bits);
        return std::get<DerivedFn>(rep_)(bits);
    }

    // Rational approximation with |result - x| <= 2^-bits, certified.
    Rational approximate(long bits) const {
        if (bits < 1) throw std::invalid_argument("approximate: precision must be >= 1 bit");
        if (is_rational()) return rational();
        return enclosure(bits + 2).mid();
    }

    // Distance to the nearest integer as an ExactReal: exact for rationals
    // and surds, a refinable derived value for streams.
    ExactReal norm_dist() const {
        if (is_rational()) return ExactReal(dioph::norm_dist(rational()));
        if (is_surd()) return ExactReal(surd().norm_dist());
        ExactReal self = *this;
        return derived([self](long bits) {
            return self.enclosure(bits + 1).norm_dist_image();
        });
    }

    // ||q*x - shift||, exact whenever the arithmetic stays inside one field.
    ExactReal scaled_norm_dist(const Integer& q, const ExactReal& shift) const {
        if (q < 1) throw std::invalid_argument("scaled_norm_dist: q must be >= 1");
        if (is_rational() && shift.is_rational())
            return ExactReal(dioph::norm_dist(Rational(rational() * q) - shift.rational()));
        if (is_surd() && shift.is_rational())
            return ExactReal(surd().times(q).minus(shift.rational()).norm_dist());
        if (is_rational() && shift.is_surd())
            return ExactReal((-shift.surd()).plus(Rational(rational() * q)).norm_dist());
        if (is_surd() && shift.is_surd() && surd().d() == shift.surd().d())
            return ExactReal(surd().times(q).minus(shift.surd()).norm_dist());
        // mixed fields or streams: certified interval route with guard bits
        ExactReal self = *this;
        ExactReal sh = shift;
        long qbits = static_cast<long>(bit_length(q));
        return derived([self, sh, q, qbits](long bits) {
            Enclosure ex = self.enclosure(bits + qbits + 2).scaled(Rational(q));
            Enclosure es = sh.enclosure(bits + 2);
            return (ex - es).norm_dist_image();
        });
    }

    // Certified three-way comparison against a rational.  Returns 0 only on
    // exact equality (decidable for exact kinds); throws PrecisionExhausted
    // if the enclosure still straddles r at the precision cap.
    int compare(const Rational& r, long cap = kDefaultPrecisionCap) const {
        if (is_rational()) return cmp(rational(), r);
        if (is_surd()) return surd().compare(r);
        for (long bits = 64; bits <= cap; bits *= 2) {
            Enclosure e = enclosure(bits);
            if (e.hi < r) return -1;
            if (e.lo > r) return 1;
            if (e.is_exact() && e.lo == r) return 0;
        }
        throw PrecisionExhausted("comparison against " + rat_str(r) + " undecided");
    }

    // Independent copy whose stream state can be advanced concurrently with
    // the original.  Derived values are not cloneable.
    ExactReal deep_clone() const {
        if (is_stream()) return ExactReal(stream());
        if (is_derived()) throw std::logic_error("deep_clone: derived value");
        return *this;
    }

    std::string text() const {
        if (is_rational()) return rat_str(rational());
        if (is_surd()) return surd().text();
        if (is_stream()) return stream().text();
        return "<derived>";
    }

private:
    using StreamPtr = std::shared_ptr<detail::CFEvaluator>;
    std::variant<Rational, QuadraticSurd, StreamPtr, DerivedFn> rep_;
};

} // namespace dioph
