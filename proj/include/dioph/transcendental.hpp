// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <mpfr.h>

#include "dioph/enclosure.hpp"

namespace dioph {

// Directed-rounding MPFR kernel.  Every function returns a rational-endpoint
// Enclosure guaranteed to contain the exact value; endpoints are dyadic
// (exact conversions of MPFR floats via mpfr_get_q), so downstream rational
// arithmetic stays cheap.

namespace detail {

class MpfrGuard {
public:
    explicit MpfrGuard(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~MpfrGuard() { mpfr_clear(v_); }
    MpfrGuard(const MpfrGuard&) = delete;
    MpfrGuard& operator=(const MpfrGuard&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

inline Rational to_rational(mpfr_srcptr f) {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), f);
    q.canonicalize();
    return q;
}

// f(x) for monotone-increasing f, evaluated with outward rounding.
template <typename UnaryFn>
Enclosure monotone_increasing(const Enclosure& x, mpfr_prec_t prec, UnaryFn fn) {
    MpfrGuard a(prec), b(prec), r(prec);
    mpfr_set_q(a.get(), x.lo.get_mpq_t(), MPFR_RNDD);
    fn(r.get(), a.get(), MPFR_RNDD);
    Rational lo = to_rational(r.get());
    mpfr_set_q(b.get(), x.hi.get_mpq_t(), MPFR_RNDU);
    fn(r.get(), b.get(), MPFR_RNDU);
    Rational hi = to_rational(r.get());
    return Enclosure(lo, hi);
}

} // namespace detail

inline Enclosure log_enclosure(const Enclosure& x, mpfr_prec_t prec) {
    if (x.lo <= 0) throw std::invalid_argument("log_enclosure: argument not positive");
    return detail::monotone_increasing(x, prec, mpfr_log);
}

inline Enclosure log_enclosure(const Rational& x, mpfr_prec_t prec) {
    return log_enclosure(Enclosure(x), prec);
}

inline Enclosure exp_enclosure(const Enclosure& x, mpfr_prec_t prec) {
    return detail::monotone_increasing(x, prec, mpfr_exp);
}

inline Enclosure sqrt_enclosure(const Enclosure& x, mpfr_prec_t prec) {
    if (x.lo < 0) throw std::invalid_argument("sqrt_enclosure: negative argument");
    return detail::monotone_increasing(x, prec, mpfr_sqrt);
}

// base^expo = exp(expo * log base) for base > 0 and rational expo.
inline Enclosure pow_enclosure(const Enclosure& base, const Rational& expo, mpfr_prec_t prec) {
    if (expo == 0) return Enclosure(Rational(1));
    Enclosure l = log_enclosure(base, prec);
    return exp_enclosure(l.scaled(expo), prec);
}

inline Enclosure pi_enclosure(mpfr_prec_t prec) {
    detail::MpfrGuard r(prec);
    mpfr_const_pi(r.get(), MPFR_RNDD);
    Rational lo = detail::to_rational(r.get());
    mpfr_const_pi(r.get(), MPFR_RNDU);
    Rational hi = detail::to_rational(r.get());
    return Enclosure(lo, hi);
}

namespace detail {

// cos or sin over an exact dyadic-rational angle interval [t.lo, t.hi]
// (radians).  Endpoint evaluations with outward rounding, padded by the
// interval width; sound for any interior extremum since |f'| <= 1.
template <typename TrigFn>
Enclosure trig_over(const Enclosure& t, mpfr_prec_t prec, TrigFn fn) {
    MpfrGuard a(prec), r(prec);
    Rational los[2], his[2];
    const Rational* ends[2] = {&t.lo, &t.hi};
    for (int i = 0; i < 2; ++i) {
        mpfr_set_q(a.get(), ends[i]->get_mpq_t(), MPFR_RNDD);
        fn(r.get(), a.get(), MPFR_RNDD);
        los[i] = to_rational(r.get());
        mpfr_set_q(a.get(), ends[i]->get_mpq_t(), MPFR_RNDU);
        fn(r.get(), a.get(), MPFR_RNDU);
        his[i] = to_rational(r.get());
        if (his[i] < los[i]) std::swap(los[i], his[i]);
    }
    Rational pad = t.width();
    Rational lo = std::min(los[0], los[1]) - pad;
    Rational hi = std::max(his[0], his[1]) + pad;
    lo = std::max(lo, Rational(-1));
    hi = std::min(hi, Rational(1));
    return Enclosure(lo, hi);
}

template <typename TrigFn>
Enclosure trig2pi(const Enclosure& x, mpfr_prec_t prec, TrigFn fn) {
    if (x.width() >= 1) return Enclosure(Rational(-1), Rational(1));
    // reduce mod 1 exactly; the only inexactness left is the 2*pi factor
    Rational shift(floor_q(x.lo));
    Enclosure r(x.lo - shift, x.hi - shift);
    Enclosure angle = pi_enclosure(prec).scaled(2) * Enclosure(r.lo, r.hi);
    return trig_over(angle, prec, fn);
}

} // namespace detail

// cos(2*pi*x) and sin(2*pi*x) for an enclosed real x.
inline Enclosure cos2pi_enclosure(const Enclosure& x, mpfr_prec_t prec) {
    return detail::trig2pi(x, prec, mpfr_cos);
}

inline Enclosure sin2pi_enclosure(const Enclosure& x, mpfr_prec_t prec) {
    return detail::trig2pi(x, prec, mpfr_sin);
}

inline Enclosure cos2pi_enclosure(const Rational& x, mpfr_prec_t prec) {
    return cos2pi_enclosure(Enclosure(x), prec);
}

inline Enclosure sin2pi_enclosure(const Rational& x, mpfr_prec_t prec) {
    return sin2pi_enclosure(Enclosure(x), prec);
}

} // namespace dioph
