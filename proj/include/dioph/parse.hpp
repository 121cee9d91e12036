// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "dioph/exact_real.hpp"
#include "dioph/pseudo_abs.hpp"

namespace dioph {

namespace detail {

inline std::string strip_ws(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

// body of "name(...)" if s has that shape
inline bool match_call(const std::string& s, const std::string& name, std::string& body) {
    if (s.size() < name.size() + 2) return false;
    if (s.compare(0, name.size(), name) != 0) return false;
    if (s[name.size()] != '(' || s.back() != ')') return false;
    body = s.substr(name.size() + 1, s.size() - name.size() - 2);
    return true;
}

} // namespace detail

// Literals accepted everywhere a real parameter appears:
//   "3/5", "-7", "0.25"            exact rationals
//   "surd(a,b,d,c)"                (a + b*sqrt(d))/c
//   "cf(a0;d1,d2,...)"             finite continued fraction (a rational)
//   "cf(a0;pre...,(p1,p2,...))"    eventually periodic (a quadratic surd)
//   "fm(M;seed)"                   seeded uniform-digit stream on {1..M}
inline ExactReal parse_exact_real(const std::string& raw) {
    std::string s = detail::strip_ws(raw);
    if (s.empty()) throw ParseError("empty real literal");
    std::string body;
    if (detail::match_call(s, "surd", body)) {
        auto parts = detail::split(body, ',');
        if (parts.size() != 4) throw ParseError("surd(a,b,d,c) takes four integers: '" + raw + "'");
        Integer a = parse_integer(parts[0]), b = parse_integer(parts[1]);
        Integer d = parse_integer(parts[2]), c = parse_integer(parts[3]);
        if (d <= 0) throw ParseError("surd radicand must be positive in '" + raw + "'");
        if (c == 0) throw ParseError("surd denominator must be nonzero in '" + raw + "'");
        return ExactReal(QuadraticSurd(a, b, d, c));
    }
    if (detail::match_call(s, "cf", body)) {
        auto semi = body.find(';');
        if (semi == std::string::npos) throw ParseError("cf literal needs 'a0;digits': '" + raw + "'");
        Integer a0 = parse_integer(body.substr(0, semi));
        std::string rest = body.substr(semi + 1);
        std::vector<Integer> pre, per;
        auto open = rest.find('(');
        if (open != std::string::npos) {
            if (rest.back() != ')') throw ParseError("unterminated period in '" + raw + "'");
            std::string per_part = rest.substr(open + 1, rest.size() - open - 2);
            for (const auto& t : detail::split(per_part, ','))
                per.push_back(parse_integer(t));
            std::string pre_part = rest.substr(0, open);
            if (!pre_part.empty() && pre_part.back() == ',') pre_part.pop_back();
            if (!pre_part.empty())
                for (const auto& t : detail::split(pre_part, ','))
                    pre.push_back(parse_integer(t));
            for (const auto& d : pre)
                if (d < 1) throw ParseError("cf digits must be >= 1 in '" + raw + "'");
            for (const auto& d : per)
                if (d < 1) throw ParseError("cf digits must be >= 1 in '" + raw + "'");
            // eventually periodic: reconstruct the exact quadratic irrational
            return ExactReal(surd_from_periodic(DigitStream::periodic(a0, pre, per)));
        }
        std::vector<Integer> digits;
        if (!rest.empty())
            for (const auto& t : detail::split(rest, ','))
                digits.push_back(parse_integer(t));
        for (const auto& d : digits)
            if (d < 1) throw ParseError("cf digits must be >= 1 in '" + raw + "'");
        return ExactReal(DigitStream::finite(a0, std::move(digits)));
    }
    if (detail::match_call(s, "fm", body)) {
        auto parts = detail::split(body, ';');
        if (parts.size() != 2 && parts.size() != 3)
            throw ParseError("fm literal is fm(M;seed[;depth]): '" + raw + "'");
        long m = std::stol(parts[0]);
        std::uint64_t seed = std::stoull(parts[1]);
        std::size_t depth = parts.size() == 3 ? std::stoull(parts[2]) : 64;
        if (m < 3) throw ParseError("fm bound M must be >= 3 in '" + raw + "'");
        return ExactReal(DigitStream::sampled(static_cast<unsigned>(m), depth, seed));
    }
    try {
        return ExactReal(parse_rational(s));
    } catch (const ParseError&) {
        throw ParseError("unrecognized real literal '" + raw + "'");
    }
}

// "2adic", "10adic", "factorial", "primorial", "list:1,2,4,8,40"
inline PseudoAbsSeq parse_pseudo(const std::string& raw) {
    std::string s = detail::strip_ws(raw);
    if (s == "factorial") return PseudoAbsSeq::factorial();
    if (s == "primorial") return PseudoAbsSeq::primorial();
    if (s.size() > 4 && s.compare(s.size() - 4, 4, "adic") == 0) {
        Integer base = parse_integer(s.substr(0, s.size() - 4));
        if (base < 2) throw ParseError("adic base must be >= 2 in '" + raw + "'");
        return PseudoAbsSeq::adic(base);
    }
    if (s.rfind("list:", 0) == 0) {
        std::vector<Integer> terms;
        for (const auto& t : detail::split(s.substr(5), ','))
            terms.push_back(parse_integer(t));
        try {
            return PseudoAbsSeq::list(std::move(terms));
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string(e.what()) + " in '" + raw + "'");
        }
    }
    throw ParseError("unrecognized pseudo-absolute value spec '" + raw + "'");
}

// Integer sequences for discrepancy experiments:
//   "pow2" / "pow:B"   geometric B^n (n >= 1)
//   "n"                the natural numbers
//   "fib"              1, 2, 3, 5, 8, ...
//   "conv:EXPR"        convergent denominators of EXPR (consecutive repeats
//                      collapsed so the sequence is strictly increasing)
inline std::vector<Integer> parse_sequence(const std::string& raw, std::size_t count) {
    std::string s = detail::strip_ws(raw);
    std::vector<Integer> out;
    out.reserve(count);
    if (s == "pow2" || s.rfind("pow:", 0) == 0) {
        Integer base = s == "pow2" ? Integer(2) : parse_integer(s.substr(4));
        if (base < 2) throw ParseError("pow base must be >= 2 in '" + raw + "'");
        Integer v = 1;
        for (std::size_t n = 1; n <= count; ++n) {
            v *= base;
            out.push_back(v);
        }
        return out;
    }
    if (s == "n") {
        for (std::size_t n = 1; n <= count; ++n) out.push_back(Integer(n));
        return out;
    }
    if (s == "fib") {
        Integer a = 1, b = 2;
        for (std::size_t n = 1; n <= count; ++n) {
            out.push_back(a);
            Integer c = a + b;
            a = b;
            b = c;
        }
        return out;
    }
    if (s.rfind("conv:", 0) == 0) {
        ExactReal x = parse_exact_real(s.substr(5));
        DigitStream stream = [&]() -> DigitStream {
            if (x.is_surd()) return expand_surd(x.surd());
            if (x.is_stream()) return x.stream();
            if (x.is_rational()) {
                auto [a0, digits] = expand_rational(x.rational());
                return DigitStream::finite(a0, std::move(digits));
            }
            throw ParseError("conv: needs an expandable value in '" + raw + "'");
        }();
        Integer q_prev = 0, q = 1;
        std::size_t k = 1;
        while (out.size() < count) {
            Integer a;
            try {
                a = stream.digit(k);
            } catch (const StreamExhausted&) {
                throw ParseError("conv: expansion too short for requested length in '" + raw + "'");
            }
            Integer qn = a * q + q_prev;
            q_prev = q;
            q = qn;
            if (out.empty() || q != out.back()) out.push_back(q);
            ++k;
        }
        return out;
    }
    throw ParseError("unrecognized sequence spec '" + raw + "'");
}

} // namespace dioph
