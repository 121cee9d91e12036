// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "dioph/exact_real.hpp"
#include "dioph/transcendental.hpp"

namespace dioph {

// Finite multiset of residues mod 1.  Coordinates are certified enclosures;
// exact rational points have zero-width entries.
struct PointSet {
    std::vector<Enclosure> pts;

    PointSet() = default;
    explicit PointSet(std::vector<Enclosure> p) : pts(std::move(p)) { validate(); }

    static PointSet exact(const std::vector<Rational>& xs) {
        std::vector<Enclosure> p;
        p.reserve(xs.size());
        for (const auto& x : xs) p.emplace_back(x);
        return PointSet(std::move(p));
    }

    std::size_t size() const { return pts.size(); }

    void validate() const {
        if (pts.empty()) throw std::invalid_argument("PointSet: at least one point required");
        for (const auto& e : pts)
            if (e.lo < 0 || e.hi >= 1)
                throw std::invalid_argument("PointSet: residues must lie in [0, 1)");
    }
};

// The supremum witness: an interval whose (one-sided-limit) count achieves
// the discrepancy.  `deficit` flags the orientation where the interval holds
// too few points rather than too many.
struct IntervalWitness {
    Rational left{0}, right{0};
    bool left_closed = true, right_closed = true;
    bool deficit = false;
};

struct DiscrepancyReport {
    std::size_t n = 0;
    Enclosure value;
    IntervalWitness witness;
    std::vector<std::pair<long, Enclosure>> et_bounds; // optional (K, bound) attachments
};

// Unnormalized extreme discrepancy sup_I |#{x_n in I} - N|I|| over all
// subintervals of [0,1], with all four open/closed endpoint limits.  Sorted
// two-max formula:
//   D = max_i (i - N x_(i)) + max_j (N x_(j) - (j-1)),   i, j = 1..N.
// Coordinates must be exactly ordered: overlapping distinct enclosures are
// rejected (refine them first).
inline DiscrepancyReport discrepancy_exact(const PointSet& ps) {
    const std::size_t n = ps.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const Enclosure& ea = ps.pts[a];
        const Enclosure& eb = ps.pts[b];
        if (ea.lo != eb.lo) return ea.lo < eb.lo;
        return ea.hi < eb.hi;
    });
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Enclosure& a = ps.pts[idx[i]];
        const Enclosure& b = ps.pts[idx[i + 1]];
        bool identical_exact = a.is_exact() && b.is_exact() && a.lo == b.lo;
        if (!identical_exact && !(a.hi < b.lo))
            throw UnresolvedOrder("point order not certified between enclosures [" +
                                  rat_str(a.lo) + "," + rat_str(a.hi) + "] and [" +
                                  rat_str(b.lo) + "," + rat_str(b.hi) + "]");
    }

    Rational np(n);
    Rational mp_lo, mp_hi, mm_lo, mm_hi;
    std::size_t arg_plus = 0, arg_minus = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Enclosure& x = ps.pts[idx[i]];
        Rational rank(static_cast<unsigned long>(i + 1));
        // i - N x  and  N x - (i-1), as intervals
        Rational plo = rank - np * x.hi, phi = rank - np * x.lo;
        Rational mlo = np * x.lo - (rank - 1), mhi = np * x.hi - (rank - 1);
        if (i == 0 || phi > mp_hi) { arg_plus = i; }
        if (i == 0) { mp_lo = plo; mp_hi = phi; mm_lo = mlo; mm_hi = mhi; }
        else {
            mp_lo = std::max(mp_lo, plo);
            mp_hi = std::max(mp_hi, phi);
            if (mhi > mm_hi) arg_minus = i;
            mm_lo = std::max(mm_lo, mlo);
            mm_hi = std::max(mm_hi, mhi);
        }
    }

    DiscrepancyReport rep;
    rep.n = n;
    rep.value = Enclosure(mp_lo + mm_lo, mp_hi + mm_hi);

    // witness: excess count at t* (closed), deficit opening at s*
    Rational t_star = ps.pts[idx[arg_plus]].mid();
    Rational s_star = ps.pts[idx[arg_minus]].mid();
    if (s_star <= t_star) {
        rep.witness = IntervalWitness{s_star, t_star, true, true, false};
    } else {
        rep.witness = IntervalWitness{t_star, s_star, false, false, true};
    }
    return rep;
}

// |sum_n e(k x_n)| as a certified enclosure, via interval cos/sin.
inline Enclosure exp_sum(const PointSet& ps, const Integer& k, mpfr_prec_t prec = 128) {
    if (k < 1) throw std::invalid_argument("exp_sum: k must be >= 1");
    Enclosure re, im;
    Rational kq(k);
    for (const auto& x : ps.pts) {
        Enclosure arg = x.scaled(kq);
        re = re + cos2pi_enclosure(arg, prec);
        im = im + sin2pi_enclosure(arg, prec);
    }
    Enclosure mag2 = re.square() + im.square();
    return sqrt_enclosure(mag2, prec);
}

// Erdos-Turan:  D_N <= N/(K+1) + 3 sum_{k<=K} (1/k) |sum_n e(k x_n)|,
// returned for every K in 1..K_max (prefix sums make this one pass).
inline std::vector<std::pair<long, Enclosure>> erdos_turan_bounds(const PointSet& ps, long k_max,
                                                                  mpfr_prec_t prec = 128) {
    if (k_max < 1) throw std::invalid_argument("erdos_turan_bounds: K must be >= 1");
    std::vector<std::pair<long, Enclosure>> out;
    out.reserve(k_max);
    Enclosure tail; // 3 * sum (1/k)|S_k|
    Rational np(ps.size());
    for (long k = 1; k <= k_max; ++k) {
        Enclosure s = exp_sum(ps, Integer(k), prec);
        tail = tail + s.scaled(make_rational(3, Integer(k)));
        Enclosure head(np / (k + 1));
        out.emplace_back(k, head + tail);
    }
    return out;
}

inline Enclosure erdos_turan_bound(const PointSet& ps, long K, mpfr_prec_t prec = 128) {
    return erdos_turan_bounds(ps, K, prec).back().second;
}

// F(u, v, x) = sum_{h=1}^{v} (1/h) |sum_{u < n <= v} e(h a_n x)|, the
// Erdos-Turan functional with K = v over the index window (u, v].  The
// sequence is 1-indexed: values[0] = a_1.
inline Enclosure et_functional(const std::vector<Integer>& values, const ExactReal& x, long u,
                               long v, mpfr_prec_t prec = 128) {
    if (!(0 <= u && u < v)) throw std::invalid_argument("et_functional: need 0 <= u < v");
    if (static_cast<std::size_t>(v) > values.size())
        throw std::invalid_argument("et_functional: sequence values available only up to " +
                                    std::to_string(values.size()));
    Integer a_max = 0;
    for (long n = u + 1; n <= v; ++n) a_max = std::max(a_max, values[n - 1]);
    long guard = static_cast<long>(bit_length(a_max * Integer(v))) + static_cast<long>(prec);
    Enclosure ex = x.enclosure(guard);
    Enclosure total;
    for (long h = 1; h <= v; ++h) {
        Enclosure re, im;
        for (long n = u + 1; n <= v; ++n) {
            Enclosure arg = ex.scaled(Rational(values[n - 1] * Integer(h)));
            re = re + cos2pi_enclosure(arg, prec);
            im = im + sin2pi_enclosure(arg, prec);
        }
        Enclosure mag = sqrt_enclosure(re.square() + im.square(), prec);
        total = total + mag.scaled(make_rational(1, Integer(h)));
    }
    return total;
}

// --- scaling experiments -------------------------------------------------

struct ScalingRow {
    long n;
    Enclosure d_value;
};

struct ScalingSample {
    std::string x_text;
    std::vector<ScalingRow> rows;
    double slope = 0.0;
};

struct ScalingResult {
    std::vector<ScalingSample> samples;
    double median_slope = 0.0;
};

namespace detail {

// least-squares slope of log D against log N over grid points with N >= n_min
inline double fit_slope(const std::vector<ScalingRow>& rows, long n_min) {
    std::vector<std::pair<double, double>> xy;
    for (const auto& r : rows) {
        if (r.n < n_min) continue; // small-N transients excluded from the fit
        double d = to_double(r.d_value.mid());
        if (d <= 0) continue;
        xy.emplace_back(std::log(static_cast<double>(r.n)), std::log(d));
    }
    if (xy.size() < 2) return 0.0;
    double mx = 0, my = 0;
    for (auto& [a, b] : xy) { mx += a; my += b; }
    mx /= xy.size();
    my /= xy.size();
    double num = 0, den = 0;
    for (auto& [a, b] : xy) {
        num += (a - mx) * (b - my);
        den += (a - mx) * (a - mx);
    }
    return den == 0 ? 0.0 : num / den;
}

} // namespace detail

// D_N of {a_n x mod 1 : n <= N} at each grid point, plus the fitted log-log
// slope.  The coordinate enclosures are refined until every fractional part
// is certified, extending digit streams as required.
inline ScalingSample scaling_sample(const std::vector<Integer>& seq, const ExactReal& x,
                                    const std::vector<long>& grid, long fit_min_n = 64,
                                    long cap = kDefaultPrecisionCap) {
    if (grid.empty()) throw std::invalid_argument("scaling_sample: empty grid");
    long n_max = *std::max_element(grid.begin(), grid.end());
    if (static_cast<std::size_t>(n_max) > seq.size())
        throw std::invalid_argument("scaling_sample: sequence shorter than grid maximum");

    Integer a_max = 0;
    for (long n = 0; n < n_max; ++n) a_max = std::max(a_max, seq[n]);
    long bits = static_cast<long>(bit_length(a_max)) + 96;

    std::vector<Enclosure> coords;
    coords.reserve(n_max);
    for (long attempt = 0;; ++attempt) {
        coords.clear();
        Enclosure ex = x.enclosure(bits);
        bool ok = true;
        for (long n = 0; n < n_max; ++n) {
            Enclosure scaled = ex.scaled(Rational(seq[n]));
            Integer f_lo = floor_q(scaled.lo), f_hi = floor_q(scaled.hi);
            if (f_lo != f_hi) { ok = false; break; } // straddles an integer: refine x
            coords.emplace_back(scaled.lo - Rational(f_lo), scaled.hi - Rational(f_lo));
        }
        if (ok) break;
        bits *= 2;
        if (bits > cap) throw PrecisionExhausted("scaling_sample: fractional parts undecided");
    }

    ScalingSample out;
    out.x_text = x.text();
    for (long g : grid) {
        PointSet ps(std::vector<Enclosure>(coords.begin(), coords.begin() + g));
        out.rows.push_back({g, discrepancy_exact(ps).value});
    }
    out.slope = detail::fit_slope(out.rows, fit_min_n);
    return out;
}

inline ScalingResult scaling_experiment(const std::vector<Integer>& seq,
                                        const std::vector<ExactReal>& xs,
                                        const std::vector<long>& grid, long fit_min_n = 64,
                                        long cap = kDefaultPrecisionCap) {
    ScalingResult res;
    res.samples.reserve(xs.size());
    for (const auto& x : xs) res.samples.push_back(scaling_sample(seq, x, grid, fit_min_n, cap));
    std::vector<double> slopes;
    for (const auto& s : res.samples) slopes.push_back(s.slope);
    std::sort(slopes.begin(), slopes.end());
    if (!slopes.empty()) {
        std::size_t m = slopes.size() / 2;
        res.median_slope =
            slopes.size() % 2 ? slopes[m] : (slopes[m - 1] + slopes[m]) / 2.0;
    }
    return res;
}

} // namespace dioph
