// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <string>

#include "dioph/rational.hpp"

namespace dioph {

// Closed rational interval [lo, hi] certified to contain one real value.
// All arithmetic is outward-exact: results are supersets of the true image,
// with exact rational endpoints (no rounding anywhere).
struct Enclosure {
    Rational lo, hi;

    Enclosure() : lo(0), hi(0) {}
    explicit Enclosure(const Rational& v) : lo(v), hi(v) {}
    Enclosure(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("Enclosure: lo > hi");
    }

    static Enclosure exact(const Rational& v) { return Enclosure(v); }

    bool is_exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }

    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool contains(const Enclosure& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const Enclosure& o) const { return !(hi < o.lo || o.hi < lo); }

    // Certified strict order of the enclosed values.
    bool certainly_less(const Enclosure& o) const { return hi < o.lo; }
    bool certainly_greater(const Enclosure& o) const { return lo > o.hi; }

    Enclosure operator-() const { return Enclosure(-hi, -lo); }

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
        return Enclosure(a.lo + b.lo, a.hi + b.hi);
    }
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b) {
        return Enclosure(a.lo - b.hi, a.hi - b.lo);
    }
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b) {
        Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return Enclosure(std::min(std::min(p1, p2), std::min(p3, p4)),
                         std::max(std::max(p1, p2), std::max(p3, p4)));
    }

    Enclosure scaled(const Rational& s) const {
        if (s >= 0) return Enclosure(lo * s, hi * s);
        return Enclosure(hi * s, lo * s);
    }

    Enclosure abs() const {
        if (lo >= 0) return *this;
        if (hi <= 0) return Enclosure(-hi, -lo);
        return Enclosure(Rational(0), std::max(Rational(-lo), hi));
    }

    Enclosure square() const {
        if (lo >= 0) return Enclosure(lo * lo, hi * hi);
        if (hi <= 0) return Enclosure(hi * hi, lo * lo);
        return Enclosure(Rational(0), std::max(Rational(lo * lo), Rational(hi * hi)));
    }

    static Enclosure hull(const Enclosure& a, const Enclosure& b) {
        return Enclosure(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
    }

    static Enclosure intersection(const Enclosure& a, const Enclosure& b) {
        Rational l = std::max(a.lo, b.lo), h = std::min(a.hi, b.hi);
        if (l > h) throw std::invalid_argument("Enclosure::intersection: disjoint");
        return Enclosure(l, h);
    }

    // hi - lo <= 2^-bits * max(lo, 2^-64); the standard tightness demanded of
    // emitted records and certificates.
    bool meets_relative_width(long bits) const {
        Rational floor_scale = make_rational(1, pow2(64));
        Rational scale = std::max(lo, floor_scale);
        return width() * pow2(static_cast<unsigned long>(bits)) <= scale;
    }

    // Image of this interval under distance-to-nearest-integer.  Tight.
    Enclosure norm_dist_image() const {
        static const Rational half(1, 2);
        if (width() >= 1) return Enclosure(Rational(0), half);
        Integer n = floor_q(lo);
        Rational u = lo - Rational(n), v = hi - Rational(n); // u in [0,1), v < 2
        auto nd = [&](const Rational& t) -> Rational {
            if (t <= half) return t;
            if (t <= 1) return 1 - t;
            if (t <= Rational(3, 2)) return t - 1;
            return 2 - t;
        };
        Rational out_lo = (v >= 1) ? Rational(0) : std::min(nd(u), nd(v));
        bool hits_half = (u <= half && half <= v) || (u <= Rational(3, 2) && Rational(3, 2) <= v);
        Rational out_hi = hits_half ? half : std::max(nd(u), nd(v));
        return Enclosure(out_lo, out_hi);
    }
};

} // namespace dioph
