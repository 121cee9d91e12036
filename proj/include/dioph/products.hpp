// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <thread>
#include <vector>

#include "dioph/exact_real.hpp"
#include "dioph/pseudo_abs.hpp"
#include "dioph/transcendental.hpp"

namespace dioph {

// The four approximation products:
//   dirichlet(alpha):        q * ||q a||
//   littlewood(alpha, beta): q * ||q a|| * ||q b||
//   hybrid(alpha, beta, g):  q * ||q a|| * ||q b - g||
//   mixed(alpha, D, d):      q * |q|_D * ||q a - d||
enum class ProductKind { Dirichlet, Littlewood, Hybrid, Mixed };

inline const char* product_kind_name(ProductKind k) {
    switch (k) {
    case ProductKind::Dirichlet: return "dirichlet";
    case ProductKind::Littlewood: return "littlewood";
    case ProductKind::Hybrid: return "hybrid";
    case ProductKind::Mixed: return "mixed";
    }
    return "?";
}

struct ProductSpec {
    ProductKind kind = ProductKind::Dirichlet;
    ExactReal alpha;
    std::optional<ExactReal> beta;
    ExactReal shift; // gamma (hybrid) or delta (mixed); exact 0 otherwise
    std::optional<PseudoAbsSeq> pseudo;

    static ProductSpec dirichlet(ExactReal a) {
        ProductSpec s;
        s.kind = ProductKind::Dirichlet;
        s.alpha = std::move(a);
        return s;
    }
    static ProductSpec littlewood(ExactReal a, ExactReal b) {
        ProductSpec s;
        s.kind = ProductKind::Littlewood;
        s.alpha = std::move(a);
        s.beta = std::move(b);
        return s;
    }
    static ProductSpec hybrid(ExactReal a, ExactReal b, ExactReal gamma) {
        ProductSpec s;
        s.kind = ProductKind::Hybrid;
        s.alpha = std::move(a);
        s.beta = std::move(b);
        s.shift = std::move(gamma);
        return s;
    }
    static ProductSpec mixed(ExactReal a, PseudoAbsSeq d, ExactReal delta) {
        ProductSpec s;
        s.kind = ProductKind::Mixed;
        s.alpha = std::move(a);
        s.pseudo = std::move(d);
        s.shift = std::move(delta);
        return s;
    }

    // Independent stream state per scan shard; exact values are shared.
    ProductSpec clone_for_shard() const {
        ProductSpec s = *this;
        s.alpha = alpha.deep_clone();
        if (beta) s.beta = beta->deep_clone();
        s.shift = shift.deep_clone();
        return s;
    }
};

namespace detail {

// q * f1 * f2 with f1, f2 the norm factors (f2 absent for dirichlet/mixed
// where it is folded into the rational prefactor).  Prefers fully exact
// arithmetic; falls back to interval refinement at matched precision
// budgets, which keeps the littlewood product exactly symmetric in
// (alpha, beta).
inline Enclosure assemble_product(const Rational& prefactor, const ExactReal& f1,
                                  const ExactReal* f2, long rel_bits, long cap) {
    // fully rational fast path
    if (f1.is_rational() && (!f2 || f2->is_rational())) {
        Rational v = prefactor * f1.rational();
        if (f2) v *= f2->rational();
        return Enclosure(v);
    }
    // one common field: q * s1 * s2 stays a surd, enclose it directly
    if (f1.is_surd() && f2 && f2->is_surd() && f1.surd().d() == f2->surd().d()) {
        QuadraticSurd prod = f1.surd().times(f2->surd()).times(prefactor);
        for (long bits = 64; bits <= cap; bits *= 2) {
            Enclosure e = prod.enclosure(bits);
            if (e.meets_relative_width(rel_bits)) return e;
        }
        throw PrecisionExhausted("product enclosure did not reach target width");
    }
    if (f1.is_surd() && !f2) {
        QuadraticSurd prod = f1.surd().times(prefactor);
        for (long bits = 64; bits <= cap; bits *= 2) {
            Enclosure e = prod.enclosure(bits);
            if (e.meets_relative_width(rel_bits)) return e;
        }
        throw PrecisionExhausted("product enclosure did not reach target width");
    }
    // interval route, same precision budget for every factor
    for (long bits = 64; bits <= cap; bits *= 2) {
        Enclosure e = f1.enclosure(bits).scaled(prefactor);
        if (f2) e = e * f2->enclosure(bits);
        if (e.meets_relative_width(rel_bits)) return e;
    }
    throw PrecisionExhausted("product enclosure did not reach target width");
}

} // namespace detail

// Certified enclosure of the product at q; exact endpoints, relative width
// 2^-rel_bits (the emitted-record standard).
inline Enclosure product_value(const ProductSpec& spec, const Integer& q, long rel_bits = 32,
                               long cap = kDefaultPrecisionCap) {
    if (q < 1) throw std::invalid_argument("product_value: q must be >= 1");
    switch (spec.kind) {
    case ProductKind::Dirichlet: {
        ExactReal f = spec.alpha.scaled_norm_dist(q, ExactReal(Rational(0)));
        return detail::assemble_product(Rational(q), f, nullptr, rel_bits, cap);
    }
    case ProductKind::Littlewood: {
        ExactReal f1 = spec.alpha.scaled_norm_dist(q, ExactReal(Rational(0)));
        ExactReal f2 = spec.beta->scaled_norm_dist(q, ExactReal(Rational(0)));
        return detail::assemble_product(Rational(q), f1, &f2, rel_bits, cap);
    }
    case ProductKind::Hybrid: {
        ExactReal f1 = spec.alpha.scaled_norm_dist(q, ExactReal(Rational(0)));
        ExactReal f2 = spec.beta->scaled_norm_dist(q, spec.shift);
        return detail::assemble_product(Rational(q), f1, &f2, rel_bits, cap);
    }
    case ProductKind::Mixed:
    default: {
        Rational pre = Rational(q) * pseudo_abs(q, *spec.pseudo);
        ExactReal f = spec.alpha.scaled_norm_dist(q, spec.shift);
        return detail::assemble_product(pre, f, nullptr, rel_bits, cap);
    }
    }
}

// Certified enclosure of (log q)^expo for q >= 2, relative width 2^-rel_bits.
inline Enclosure log_power_bound(const Integer& q, const Rational& expo, long rel_bits = 32) {
    if (q <= 1) throw std::invalid_argument("log_power_bound: q must be >= 2 (log q > 0)");
    for (mpfr_prec_t prec = 128;; prec *= 2) {
        Enclosure e = pow_enclosure(log_enclosure(Rational(q), prec), expo, prec);
        if (e.meets_relative_width(rel_bits)) return e;
        if (prec > (1 << 20)) throw PrecisionExhausted("log_power_bound refinement stalled");
    }
}

// (log q)^{-(1/2 - eps)}: the right-hand side the witness products must beat.
// eps = 0 is admitted (exponent exactly -1/2).
inline Enclosure bound_rhs(const Integer& q, const Rational& eps, long rel_bits = 32) {
    if (eps < 0 || eps >= Rational(1, 2))
        throw std::invalid_argument("bound_rhs: eps must lie in [0, 1/2)");
    return log_power_bound(q, eps - Rational(1, 2), rel_bits);
}

struct MinRecord {
    Integer q;
    Enclosure value;
    std::optional<Enclosure> bound;
    bool beats_bound = false;
};

struct ScanOptions {
    std::optional<Rational> eps; // populate bound column when given
    unsigned shards = 0;         // 0 = hardware concurrency
    long rel_bits = 32;
    long cap = kDefaultPrecisionCap;
};

namespace detail {

inline void attach_bound(MinRecord& rec, const std::optional<Rational>& eps, long rel_bits) {
    if (!eps || rec.q < 2) return;
    rec.bound = bound_rhs(rec.q, *eps, rel_bits);
    rec.beats_bound = rec.value.certainly_less(*rec.bound);
}

} // namespace detail

// All strict running minima of the product over [q_from, q_to]: a record is
// kept only when its enclosure lies certifiably below the previous record's.
// The range is sharded across threads; each shard reports its local minima
// and a sequential merge recomputes the global ones, so the result does not
// depend on the shard count.
inline std::vector<MinRecord> scan_min(const ProductSpec& spec, const Integer& q_from,
                                       const Integer& q_to, const ScanOptions& opt = {}) {
    if (q_from < 1 || q_to < q_from)
        throw std::invalid_argument("scan_min: need 1 <= q_from <= q_to");
    unsigned shards = opt.shards ? opt.shards : std::max(1u, std::thread::hardware_concurrency());
    Integer total = q_to - q_from + 1;
    if (total < shards) shards = static_cast<unsigned>(total.get_ui());

    std::vector<std::vector<MinRecord>> local(shards);
    std::vector<std::thread> workers;
    Integer chunk = total / shards, extra = total % shards;
    Integer start = q_from;
    for (unsigned i = 0; i < shards; ++i) {
        Integer len = chunk + (Integer(i) < extra ? 1 : 0);
        Integer lo = start, hi = start + len - 1;
        start += len;
        workers.emplace_back([&, i, lo, hi]() {
            ProductSpec s = spec.clone_for_shard();
            std::optional<Rational> local_min;
            for (Integer q = lo; q <= hi; ++q) {
                Enclosure e = product_value(s, q, opt.rel_bits, opt.cap);
                if (!local_min || e.hi < *local_min) {
                    local[i].push_back(MinRecord{q, e, std::nullopt, false});
                    local_min = e.lo;
                    if (e.hi == 0) break; // nothing can strictly beat zero
                }
            }
        });
    }
    for (auto& w : workers) w.join();

    std::vector<MinRecord> out;
    std::optional<Rational> global_min;
    for (unsigned i = 0; i < shards; ++i) {
        for (auto& rec : local[i]) {
            if (!global_min || rec.value.hi < *global_min) {
                global_min = rec.value.lo;
                detail::attach_bound(rec, opt.eps, opt.rel_bits);
                out.push_back(std::move(rec));
            }
        }
        if (global_min && *global_min == 0) break;
    }
    return out;
}

// Running minima restricted to the convergent denominators of spec.alpha.
// The table must have been built from the same expansion; the digit columns
// are compared to reject a mismatched table.
inline std::vector<MinRecord> convergent_scan(const ProductSpec& spec, const ConvergentTable& table,
                                              const ScanOptions& opt = {}) {
    // verify the table against alpha's own expansion
    const auto& rows = table.rows();
    if (rows.empty()) throw std::invalid_argument("convergent_scan: empty table");
    {
        DigitStream expansion = [&]() -> DigitStream {
            const ExactReal& a = spec.alpha;
            if (a.is_surd()) return expand_surd(a.surd());
            if (a.is_stream()) return a.stream();
            if (a.is_rational()) {
                auto [a0, digits] = expand_rational(a.rational());
                return DigitStream::finite(a0, std::move(digits));
            }
            throw std::invalid_argument("convergent_scan: alpha has no expansion");
        }();
        if (rows[0].a != expansion.a0())
            throw std::invalid_argument("convergent_scan: table does not match alpha");
        for (std::size_t k = 1; k < rows.size(); ++k)
            if (rows[k].a != expansion.digit(k))
                throw std::invalid_argument("convergent_scan: table does not match alpha");
    }
    std::vector<MinRecord> out;
    std::optional<Rational> running;
    Integer prev_q = 0;
    for (const auto& row : rows) {
        if (row.q == prev_q) continue; // q_0 = q_1 happens when a_1 = 1
        prev_q = row.q;
        Enclosure e = product_value(spec, row.q, opt.rel_bits, opt.cap);
        if (!running || e.hi < *running) {
            MinRecord rec{row.q, e, std::nullopt, false};
            detail::attach_bound(rec, opt.eps, opt.rel_bits);
            out.push_back(std::move(rec));
            running = e.lo;
        }
    }
    return out;
}

} // namespace dioph
