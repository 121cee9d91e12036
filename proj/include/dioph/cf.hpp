// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dioph/surd.hpp"

namespace dioph {

// Partial-quotient stream a_1, a_2, ... (all >= 1) with integer part a_0.
// Three sources: a finite list (rationals), an eventually periodic
// descriptor (quadratic irrationals), or seeded uniform digits on {1..M}.
//
// Streams are value types; copying clones the full generator state, so two
// copies always produce identical digits.  A single instance must not be
// advanced from two threads at once (clone per scan shard instead).
class DigitStream {
public:
    enum class Kind { Finite, Periodic, Sampled };

    static DigitStream finite(Integer a0, std::vector<Integer> digits) {
        DigitStream s;
        s.kind_ = Kind::Finite;
        s.a0_ = std::move(a0);
        s.finite_ = std::move(digits);
        for (const auto& d : s.finite_)
            if (d < 1) throw std::invalid_argument("DigitStream: digit < 1");
        return s;
    }

    static DigitStream periodic(Integer a0, std::vector<Integer> pre, std::vector<Integer> per) {
        if (per.empty()) throw std::invalid_argument("DigitStream: empty period");
        DigitStream s;
        s.kind_ = Kind::Periodic;
        s.a0_ = std::move(a0);
        s.pre_ = std::move(pre);
        s.per_ = std::move(per);
        for (const auto& d : s.pre_)
            if (d < 1) throw std::invalid_argument("DigitStream: digit < 1");
        for (const auto& d : s.per_)
            if (d < 1) throw std::invalid_argument("DigitStream: digit < 1");
        return s;
    }

    // i.i.d. uniform digits on {1..M}; the F_M sampling proxy.  Digits are
    // fully determined by (M, seed); depth only pre-materializes the cache
    // and the stream extends on demand past it.
    static DigitStream sampled(unsigned m, std::size_t depth, std::uint64_t seed) {
        if (m < 3) throw std::invalid_argument("DigitStream: sampled bound M must be >= 3");
        if (depth < 1) throw std::invalid_argument("DigitStream: depth must be >= 1");
        DigitStream s;
        s.kind_ = Kind::Sampled;
        s.a0_ = 0;
        s.m_ = m;
        s.seed_ = seed;
        s.eng_.seed(seed);
        s.ensure(depth);
        return s;
    }

    Kind kind() const { return kind_; }
    const Integer& a0() const { return a0_; }

    // Digit a_i, i >= 1.  Extends sampled caches; throws StreamExhausted past
    // the end of a finite expansion.
    const Integer& digit(std::size_t i) const {
        if (i < 1) throw std::invalid_argument("DigitStream: digit index starts at 1");
        switch (kind_) {
        case Kind::Finite:
            if (i > finite_.size())
                throw StreamExhausted("finite expansion has " + std::to_string(finite_.size()) +
                                      " digits, digit " + std::to_string(i) + " requested");
            return finite_[i - 1];
        case Kind::Periodic:
            if (i <= pre_.size()) return pre_[i - 1];
            return per_[(i - 1 - pre_.size()) % per_.size()];
        case Kind::Sampled:
        default:
            ensure(i);
            return cache_[i - 1];
        }
    }

    bool is_finite() const { return kind_ == Kind::Finite; }
    std::optional<std::size_t> length() const {
        if (kind_ == Kind::Finite) return finite_.size();
        return std::nullopt;
    }

    // Declared digit bound: M for sampled streams, the maximum digit for
    // finite/periodic ones.
    std::optional<Integer> declared_bound() const {
        switch (kind_) {
        case Kind::Sampled: return Integer(m_);
        case Kind::Finite: {
            if (finite_.empty()) return std::nullopt;
            Integer mx = 1;
            for (const auto& d : finite_) mx = std::max(mx, d);
            return mx;
        }
        case Kind::Periodic:
        default: {
            Integer mx = 1;
            for (const auto& d : pre_) mx = std::max(mx, d);
            for (const auto& d : per_) mx = std::max(mx, d);
            return mx;
        }
        }
    }

    const std::vector<Integer>& preperiod() const { return pre_; }
    const std::vector<Integer>& period() const { return per_; }
    unsigned sample_bound() const { return m_; }
    std::uint64_t sample_seed() const { return seed_; }

    std::string text() const {
        auto join = [](const std::vector<Integer>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) s += ',';
                s += v[i].get_str();
            }
            return s;
        };
        switch (kind_) {
        case Kind::Finite: return "cf(" + a0_.get_str() + ";" + join(finite_) + ")";
        case Kind::Periodic: {
            std::string mid = join(pre_);
            if (!mid.empty()) mid += ',';
            return "cf(" + a0_.get_str() + ";" + mid + "(" + join(per_) + "))";
        }
        case Kind::Sampled:
        default:
            return "fm(" + std::to_string(m_) + ";" + std::to_string(seed_) + ")";
        }
    }

private:
    DigitStream() = default;

    void ensure(std::size_t n) const {
        while (cache_.size() < n) {
            // rejection-sampled bounded draw; fully specified by mt19937_64,
            // unlike std::uniform_int_distribution
            const std::uint64_t threshold = (0 - std::uint64_t(m_)) % m_; // 2^64 mod M
            std::uint64_t r;
            do { r = eng_(); } while (r < threshold);
            cache_.emplace_back(static_cast<unsigned long>(r % m_ + 1));
        }
    }

    Kind kind_ = Kind::Finite;
    Integer a0_ = 0;
    std::vector<Integer> finite_;
    std::vector<Integer> pre_, per_;
    unsigned m_ = 0;
    std::uint64_t seed_ = 0;
    mutable std::vector<Integer> cache_;
    mutable std::mt19937_64 eng_;
};

struct ConvergentRow {
    std::size_t k;
    Integer a, p, q;
};

// Rows k = 0..K of the convergent recurrence p_k = a_k p_{k-1} + p_{k-2},
// q_k = a_k q_{k-1} + q_{k-2}, seeded by p_{-1} = 1, q_{-1} = 0.
class ConvergentTable {
public:
    static ConvergentTable build(const DigitStream& s, std::size_t K) {
        ConvergentTable t;
        t.rows_.reserve(K + 1);
        Integer p_prev = 1, q_prev = 0;
        Integer p = s.a0(), q = 1;
        t.rows_.push_back({0, s.a0(), p, q});
        for (std::size_t k = 1; k <= K; ++k) {
            const Integer& a = s.digit(k);
            Integer pn = a * p + p_prev;
            Integer qn = a * q + q_prev;
            p_prev = p; q_prev = q; p = pn; q = qn;
            t.rows_.push_back({k, a, p, q});
        }
        return t;
    }

    const std::vector<ConvergentRow>& rows() const { return rows_; }
    std::size_t max_k() const { return rows_.size() - 1; }
    const Integer& p(std::size_t k) const { return rows_.at(k).p; }
    const Integer& q(std::size_t k) const { return rows_.at(k).q; }
    const Integer& a(std::size_t k) const { return rows_.at(k).a; }

    // p_k q_{k-1} - p_{k-1} q_k = (-1)^{k-1} for all k >= 1
    bool identity_ok() const {
        for (std::size_t k = 1; k < rows_.size(); ++k) {
            Integer det = rows_[k].p * rows_[k - 1].q - rows_[k - 1].p * rows_[k].q;
            if (det != ((k % 2 == 1) ? 1 : -1)) return false;
        }
        return true;
    }

private:
    std::vector<ConvergentRow> rows_;
};

// Euclidean expansion of a rational; canonical (final digit >= 2 unless the
// value is an integer), so expansions are unique.
inline std::pair<Integer, std::vector<Integer>> expand_rational(const Rational& x) {
    Integer a0 = floor_q(x);
    std::vector<Integer> digits;
    Integer num = x.get_num() - a0 * x.get_den();
    Integer den = x.get_den();
    // now 0 <= num/den < 1; iterate den/num
    while (num != 0) {
        std::swap(num, den);
        Integer a = floor_div(num, den);
        digits.push_back(a);
        num -= a * den;
    }
    return {a0, digits};
}

// Continued fraction of a quadratic irrational via the (P + sqrt(D))/Q
// recurrence, detecting the period as the first repeated (P, Q) state.
inline DigitStream expand_surd(const QuadraticSurd& x, std::size_t max_digits = 4096) {
    if (x.is_rational())
        throw std::invalid_argument("expand_surd: rational value; use expand_rational");
    // rewrite (a + b sqrt d)/c with b's sign folded so the radical coefficient
    // is +1:  x = (P + sqrt(D))/Q
    Integer P = x.a(), Q = x.c(), D = x.b() * x.b() * x.d();
    if (x.b() < 0) { P = -P; Q = -Q; }
    if (!divides(Q, D - P * P)) {
        Integer absQ = Q < 0 ? Integer(-Q) : Q;
        P *= absQ; D *= Q * Q; Q *= absQ;
    }
    Integer s = isqrt(D);

    auto digit_of = [&](const Integer& p, const Integer& q) -> Integer {
        if (q > 0) return floor_div(p + s, q);
        return -ceil_div(p + s + 1, -q);
    };

    std::vector<Integer> digits; // a_0 first
    std::map<std::pair<std::string, std::string>, std::size_t> seen; // (P,Q) -> digit index
    for (std::size_t k = 0; k <= max_digits; ++k) {
        if (k >= 1) {
            auto key = std::make_pair(P.get_str(), Q.get_str());
            auto it = seen.find(key);
            if (it != seen.end()) {
                std::size_t start = it->second; // digits[start..k-1] is the period
                std::vector<Integer> pre(digits.begin() + 1, digits.begin() + start);
                std::vector<Integer> per(digits.begin() + start, digits.end());
                return DigitStream::periodic(digits[0], std::move(pre), std::move(per));
            }
            seen.emplace(std::move(key), k);
        }
        Integer a = digit_of(P, Q);
        digits.push_back(a);
        Integer Pn = a * Q - P;
        Integer Qn = (D - Pn * Pn) / Q;
        P = Pn; Q = Qn;
        if (Q == 0) throw std::logic_error("expand_surd: vanishing Q (value not irrational?)");
    }
    throw PeriodNotFound("no period within " + std::to_string(max_digits) + " digits");
}

// Reconstruct the exact quadratic irrational of an eventually periodic
// stream: the tail is the attracting fixed point of the period's Moebius
// map, then the preperiod is applied on top.
inline QuadraticSurd surd_from_periodic(const DigitStream& s) {
    if (s.kind() != DigitStream::Kind::Periodic)
        throw std::invalid_argument("surd_from_periodic: stream is not periodic");
    // tail y = [p1; p2, ..., pm, y]:  matrix product of [[a,1],[1,0]]
    Integer A = 1, B = 0, C = 0, Dm = 1;
    for (const Integer& a : s.period()) {
        Integer nA = A * a + B, nB = A;
        Integer nC = C * a + Dm, nD = C;
        A = nA; B = nB; C = nC; Dm = nD;
    }
    // y = (A y + B)/(C y + D)  =>  C y^2 + (D - A) y - B = 0, take the root > 1
    Integer disc = (A - Dm) * (A - Dm) + 4 * B * C;
    QuadraticSurd y(A - Dm, 1, disc, 2 * C);
    // fold a0 and the preperiod: x = [a0; pre..., y]
    Integer p_prev = 1, q_prev = 0, p = s.a0(), q = 1;
    for (const Integer& a : s.preperiod()) {
        Integer pn = a * p + p_prev, qn = a * q + q_prev;
        p_prev = p; q_prev = q; p = pn; q = qn;
    }
    return y.mobius(p, p_prev, q, q_prev);
}

// Membership in F_M up to digit index K: max_{1 <= i <= K} a_i <= M.
inline bool in_FM(const DigitStream& s, const Integer& m, std::size_t K) {
    if (m < 1 || K < 1) throw std::invalid_argument("in_FM: M >= 1 and K >= 1 required");
    for (std::size_t i = 1; i <= K; ++i)
        if (s.digit(i) > m) return false;
    return true;
}

inline DigitStream sample_FM(unsigned m, std::size_t depth, std::uint64_t seed) {
    return DigitStream::sampled(m, depth, seed);
}

// Fib_k <= q_k <= (2M)^k for every k >= 1, with Fib_1 = 1, Fib_2 = 2.
inline bool growth_bounds_check(const ConvergentTable& t, const Integer& m) {
    Integer f_prev = 1, f = 1; // f becomes Fib_k below
    Integer upper = 1;
    Integer base = 2 * m;
    for (std::size_t k = 1; k < t.rows().size(); ++k) {
        Integer fn = (k == 1) ? Integer(1) : Integer(f + f_prev);
        if (k > 1) { f_prev = f; f = fn; }
        upper *= base;
        const Integer& qk = t.q(k);
        if (qk < f || qk > upper) return false;
    }
    return true;
}

// Smallest consecutive ratio of a strictly increasing positive sequence.
inline Rational lacunarity_ratio(const std::vector<Integer>& seq) {
    if (seq.size() < 2) throw std::invalid_argument("lacunarity_ratio: need length >= 2");
    std::optional<Rational> best;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (seq[i] <= 0 || seq[i + 1] <= seq[i])
            throw std::invalid_argument("lacunarity_ratio: sequence not strictly increasing");
        Rational r = make_rational(seq[i + 1], seq[i]);
        if (!best || r < *best) best = r;
    }
    return *best;
}

} // namespace dioph
