// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "dioph/rational.hpp"

namespace dioph {

// Divisibility chain D = (n_k): n_0 = 1, n_{k-1} | n_k.  Defines the
// pseudo-absolute value |q|_D = 1/max{n_k : n_k | q}.
//
// Closed forms (a-adic, factorial, primorial) extend indefinitely; a custom
// list is finite and validated on construction.  Repeated terms (factorial's
// 1, 1) are allowed.
class PseudoAbsSeq {
public:
    enum class Kind { Adic, Factorial, Primorial, List };

    static PseudoAbsSeq adic(const Integer& base) {
        if (base < 2) throw std::invalid_argument("PseudoAbsSeq: adic base must be >= 2");
        PseudoAbsSeq d;
        d.kind_ = Kind::Adic;
        d.base_ = base;
        d.terms_ = {1};
        return d;
    }

    static PseudoAbsSeq factorial() {
        PseudoAbsSeq d;
        d.kind_ = Kind::Factorial;
        d.terms_ = {1};
        return d;
    }

    static PseudoAbsSeq primorial() {
        PseudoAbsSeq d;
        d.kind_ = Kind::Primorial;
        d.terms_ = {1};
        d.last_prime_ = 1;
        return d;
    }

    static PseudoAbsSeq list(std::vector<Integer> terms) {
        if (terms.empty() || terms[0] != 1)
            throw std::invalid_argument("pseudo-absolute sequence must start with n_0 = 1");
        for (std::size_t k = 1; k < terms.size(); ++k) {
            if (terms[k] < 1)
                throw std::invalid_argument("pseudo-absolute sequence terms must be positive");
            if (!divides(terms[k - 1], terms[k]))
                throw std::invalid_argument("divisibility chain broken: " +
                                            terms[k - 1].get_str() + " does not divide " +
                                            terms[k].get_str());
        }
        PseudoAbsSeq d;
        d.kind_ = Kind::List;
        d.terms_ = std::move(terms);
        return d;
    }

    Kind kind() const { return kind_; }

    // n_k; throws StreamExhausted past the end of a finite list.
    const Integer& term(std::size_t k) const {
        if (kind_ == Kind::List) {
            if (k >= terms_.size())
                throw StreamExhausted("pseudo-absolute list has " +
                                      std::to_string(terms_.size()) + " terms");
            return terms_[k];
        }
        while (terms_.size() <= k) grow();
        return terms_[k];
    }

    bool is_finite() const { return kind_ == Kind::List; }
    std::size_t list_size() const { return terms_.size(); }

    std::string text() const {
        switch (kind_) {
        case Kind::Adic: return base_.get_str() + "adic";
        case Kind::Factorial: return "factorial";
        case Kind::Primorial: return "primorial";
        case Kind::List:
        default: {
            std::string s = "list:";
            for (std::size_t i = 0; i < terms_.size(); ++i) {
                if (i) s += ',';
                s += terms_[i].get_str();
            }
            return s;
        }
        }
    }

private:
    void grow() const {
        switch (kind_) {
        case Kind::Adic: terms_.push_back(terms_.back() * base_); break;
        case Kind::Factorial: terms_.push_back(terms_.back() * Integer(terms_.size())); break;
        case Kind::Primorial: {
            mpz_nextprime(last_prime_.get_mpz_t(), last_prime_.get_mpz_t());
            terms_.push_back(terms_.back() * last_prime_);
            break;
        }
        default: break;
        }
    }

    Kind kind_ = Kind::Adic;
    Integer base_ = 2;
    mutable std::vector<Integer> terms_;
    mutable Integer last_prime_ = 1;
};

// |q|_D = 1/n* with n* the largest chain element dividing q.  The chain is
// consumed only until n_k > |q| (or the list ends).  q = 0 is rejected: the
// scanners quantify over q >= 1 and |0|_D has no finite value.
inline Rational pseudo_abs(const Integer& q, const PseudoAbsSeq& d) {
    if (q == 0) throw std::invalid_argument("pseudo_abs: q must be nonzero");
    Integer aq = q < 0 ? Integer(-q) : q;
    Integer best = 1;
    for (std::size_t k = 1;; ++k) {
        Integer n;
        try {
            n = d.term(k);
        } catch (const StreamExhausted&) {
            break;
        }
        if (n > aq) break;
        if (divides(n, aq)) best = n;
    }
    return make_rational(1, best);
}

// n_k * |n_k|_D = 1 for all k <= K.
inline bool unit_identity_check(const PseudoAbsSeq& d, std::size_t K) {
    for (std::size_t k = 0; k <= K; ++k) {
        Integer n;
        try {
            n = d.term(k);
        } catch (const StreamExhausted&) {
            break;
        }
        if (Rational(n) * pseudo_abs(n, d) != 1) return false;
    }
    return true;
}

// n_k <= C^k for 1 <= k <= K, C rational so the comparison is exact.
inline bool geometric_growth_check(const PseudoAbsSeq& d, const Rational& c, std::size_t K) {
    if (c <= 1) throw std::invalid_argument("geometric_growth_check: C must be > 1");
    if (K < 1) throw std::invalid_argument("geometric_growth_check: K must be >= 1");
    Integer num_pow = 1, den_pow = 1;
    for (std::size_t k = 1; k <= K; ++k) {
        num_pow *= c.get_num();
        den_pow *= c.get_den();
        Integer n;
        try {
            n = d.term(k);
        } catch (const StreamExhausted&) {
            break;
        }
        if (n * den_pow > num_pow) return false;
    }
    return true;
}

// Candidate moduli for the mixed-product scans: the chain elements
// themselves, consecutive repeats collapsed, paired with their index.
inline std::vector<std::pair<std::size_t, Integer>> chain_candidates(const PseudoAbsSeq& d,
                                                                     std::size_t k_max) {
    std::vector<std::pair<std::size_t, Integer>> out;
    Integer prev = 0;
    for (std::size_t k = 1; k <= k_max; ++k) {
        Integer n;
        try {
            n = d.term(k);
        } catch (const StreamExhausted&) {
            break;
        }
        if (n != prev) out.emplace_back(k, n);
        prev = n;
    }
    return out;
}

} // namespace dioph
