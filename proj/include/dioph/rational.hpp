// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "dioph/integer.hpp"

namespace dioph {

using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer floor_q(const Rational& x) {
    return floor_div(x.get_num(), x.get_den());
}

inline Rational frac_part(const Rational& x) {
    return x - Rational(floor_q(x));
}

// Distance to the nearest integer.  The tie x = n + 1/2 returns exactly 1/2.
inline Rational norm_dist(const Rational& x) {
    Rational f = frac_part(x);
    Rational g = 1 - f;
    return f <= g ? f : g;
}

// "p/q", "-7", or an exact decimal like "3.25" / "-0.5".
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Integer num = parse_integer(s.substr(0, slash));
        Integer den = parse_integer(s.substr(slash + 1));
        if (den <= 0) throw ParseError("denominator must be positive in '" + s + "'");
        return make_rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (ip.empty() || ip == "-" || ip == "+") ip += '0';
        for (char c : fp)
            if (c < '0' || c > '9') throw ParseError("invalid decimal literal '" + s + "'");
        Integer whole = parse_integer(ip);
        Integer scale = pow_int(10, fp.size());
        Integer frac = fp.empty() ? Integer(0) : parse_integer(fp);
        Integer num = whole * scale + (neg ? -frac : frac);
        return make_rational(num, scale);
    }
    return Rational(parse_integer(s));
}

// Canonical "num/den" form used in all machine-readable output.
inline std::string rat_str(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline double to_double(const Rational& x) { return x.get_d(); }

} // namespace dioph
