// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dioph/products.hpp"

namespace dioph {

// psi(N) = N^{eps - 1/2}: exact rational whenever N^{1/2-eps} is an integer
// root, otherwise a directed-rounding enclosure.
inline Enclosure psi(long n, const Rational& eps, long rel_bits = 32) {
    if (n < 1) throw std::invalid_argument("psi: N must be >= 1");
    if (eps <= 0 || eps >= Rational(1, 2))
        throw std::invalid_argument("psi: eps must lie in (0, 1/2)");
    if (n == 1) return Enclosure(Rational(1));
    Rational expo = Rational(1, 2) - eps; // psi = N^-expo, expo = u/v in (0, 1/2)
    const Integer& u = expo.get_num();
    const Integer& v = expo.get_den();
    if (mpz_fits_ulong_p(u.get_mpz_t()) && mpz_fits_ulong_p(v.get_mpz_t())) {
        Integer powered = pow_int(Integer(n), u.get_ui());
        Integer root;
        if (exact_root(powered, v.get_ui(), root))
            return Enclosure(make_rational(1, root));
    }
    for (mpfr_prec_t prec = 128;; prec *= 2) {
        Enclosure e = pow_enclosure(Enclosure(Rational(n)), -expo, prec);
        if (e.meets_relative_width(rel_bits)) return e;
        if (prec > (1 << 20)) throw PrecisionExhausted("psi refinement stalled");
    }
}

struct HitCount {
    long n = 0;
    long count = 0;
    std::vector<long> undecided; // candidate indices whose membership hit the cap
};

// #{k <= N : ||q_k beta - target|| <= psi(N)} with every membership decision
// certified.  A membership still straddling the threshold at the precision
// cap is counted as a miss and reported in `undecided` (soundness over
// completeness).
inline HitCount hit_count(const std::vector<Integer>& candidates, const ExactReal& beta,
                          const ExactReal& target, long n, const Rational& eps,
                          long cap = kDefaultPrecisionCap) {
    if (n < 1 || static_cast<std::size_t>(n) > candidates.size())
        throw std::invalid_argument("hit_count: need 1 <= N <= #candidates");
    Enclosure threshold = psi(n, eps);
    HitCount out;
    out.n = n;
    for (long k = 1; k <= n; ++k) {
        ExactReal dist = beta.scaled_norm_dist(candidates[k - 1], target);
        bool decided = false;
        for (long bits = 64; bits <= cap; bits *= 2) {
            Enclosure m = dist.enclosure(bits);
            if (m.hi <= threshold.lo) {
                ++out.count;
                decided = true;
                break;
            }
            if (m.lo > threshold.hi) {
                decided = true;
                break;
            }
            if (!threshold.is_exact() && bits > 256) {
                Enclosure finer = psi(n, eps, bits);
                if (finer.width() < threshold.width()) threshold = finer;
            }
        }
        if (!decided) out.undecided.push_back(k);
    }
    return out;
}

struct FirstHitIndex {
    std::optional<long> n;
    bool relaxed = false; // equality skipped; least N with count >= h returned
};

// N_h = min{N : hit count at N equals h}.  The count is not monotone in N
// (the window shrinks), so the scan is literal over N = 1, 2, ...; when
// equality never occurs up to the cap, the least N with count >= h is
// returned flagged `relaxed`.
inline FirstHitIndex n_gamma_h(const std::vector<Integer>& candidates, const ExactReal& beta,
                               const ExactReal& target, const Rational& eps, long h, long n_cap,
                               long cap = kDefaultPrecisionCap) {
    if (h < 1) throw std::invalid_argument("n_gamma_h: h must be >= 1");
    n_cap = std::min<long>(n_cap, static_cast<long>(candidates.size()));
    std::optional<long> first_ge;
    for (long n = 1; n <= n_cap; ++n) {
        HitCount hc = hit_count(candidates, beta, target, n, eps, cap);
        if (hc.count == h) return {n, false};
        if (hc.count >= h && !first_ge) first_ge = n;
    }
    if (first_ge) return {*first_ge, true};
    return {std::nullopt, false};
}

enum class WitnessKind { Hybrid, Mixed };
enum class ExponentForm { Theorem, Proof }; // -(1/2 - eps)  vs  -1/2 + eps/2

inline Rational witness_exponent(const Rational& eps, ExponentForm form) {
    if (form == ExponentForm::Theorem) return eps - Rational(1, 2);
    return Rational(eps / 2) - Rational(1, 2);
}

struct Provenance {
    enum class Type { DirectScan, ProofConstruction };
    Type type = Type::DirectScan;
    long h = 0;   // proof-construction only
    long n_h = 0; // index N_h whose window certified the hit
};

// A single verified instance of the target inequality: a modulus q together
// with certified enclosures of the product and of the bound it beats.
struct WitnessCertificate {
    WitnessKind kind = WitnessKind::Hybrid;
    Integer q;
    long k = 0; // index in the candidate sequence
    Enclosure product;
    Enclosure bound;
    Rational eps;
    Rational exponent; // the exponent actually applied to log q
    std::string alpha_text, beta_text, shift_text, pseudo_text;
    Provenance prov;
};

namespace detail {

inline std::vector<std::pair<std::size_t, Integer>> convergent_candidates(const ExactReal& alpha,
                                                                          std::size_t k_max) {
    DigitStream stream = [&]() -> DigitStream {
        if (alpha.is_surd()) return expand_surd(alpha.surd());
        if (alpha.is_stream()) return alpha.stream();
        throw std::invalid_argument(
            "witness scan: alpha must be a quadratic surd or digit stream (a badly "
            "approximable carrier)");
    }();
    ConvergentTable t = ConvergentTable::build(stream, k_max);
    std::vector<std::pair<std::size_t, Integer>> out;
    Integer prev = 0;
    for (const auto& row : t.rows()) {
        if (row.q != prev) out.emplace_back(row.k, row.q);
        prev = row.q;
    }
    return out;
}

// Emit a certificate if the product enclosure certifiably beats the bound.
// A product still straddling the bound after one retry at doubled width is
// dropped: certificates must be sound, completeness is best-effort.
inline std::optional<WitnessCertificate> try_certificate(const ProductSpec& spec,
                                                         std::size_t k, const Integer& q,
                                                         const Rational& eps,
                                                         const Rational& expo, long cap) {
    if (q < 2) return std::nullopt; // log q <= 0: the bound is vacuous
    for (long rel_bits : {32L, 64L, 128L}) {
        Enclosure product = product_value(spec, q, rel_bits, cap);
        Enclosure bound = log_power_bound(q, expo, rel_bits);
        if (product.certainly_less(bound)) {
            WitnessCertificate cert;
            cert.q = q;
            cert.k = static_cast<long>(k);
            cert.product = product;
            cert.bound = bound;
            cert.eps = eps;
            cert.exponent = expo;
            return cert;
        }
        if (bound.certainly_less(product)) return std::nullopt;
    }
    return std::nullopt;
}

} // namespace detail

// Hybrid witnesses: candidates are the convergent denominators of alpha, on
// which q||q alpha|| <= 1, so the product q||q a||*||q b - gamma|| already
// sits below ||q b - gamma||.
inline std::vector<WitnessCertificate> witnesses_hybrid(
    const ExactReal& alpha, const ExactReal& beta, const ExactReal& gamma, const Rational& eps,
    std::size_t k_max, ExponentForm form = ExponentForm::Theorem,
    bool proof_provenance = false, long cap = kDefaultPrecisionCap) {
    if (eps <= 0 || eps >= Rational(1, 2))
        throw std::invalid_argument("witnesses_hybrid: eps must lie in (0, 1/2)");
    Rational expo = witness_exponent(eps, form);
    auto candidates = detail::convergent_candidates(alpha, k_max);
    ProductSpec spec = ProductSpec::hybrid(alpha, beta, gamma);

    std::vector<WitnessCertificate> out;
    if (!proof_provenance) {
        for (const auto& [k, q] : candidates) {
            auto cert = detail::try_certificate(spec, k, q, eps, expo, cap);
            if (cert) {
                cert->kind = WitnessKind::Hybrid;
                cert->alpha_text = alpha.text();
                cert->beta_text = beta.text();
                cert->shift_text = gamma.text();
                out.push_back(std::move(*cert));
            }
        }
        return out;
    }

    // proof-construction provenance: walk h = 1, 2, ... through the shrinking
    // windows I^gamma_N, certify each hit at q_{N_h}
    std::vector<Integer> qs;
    for (const auto& [k, q] : candidates) qs.push_back(q);
    long n_cap = static_cast<long>(qs.size());
    for (long h = 1; h <= n_cap; ++h) {
        FirstHitIndex fh = n_gamma_h(qs, beta, gamma, eps, h, n_cap, cap);
        if (!fh.n) break;
        long idx = *fh.n;
        const auto& [k, q] = candidates[idx - 1];
        auto cert = detail::try_certificate(spec, k, q, eps, expo, cap);
        if (cert) {
            cert->kind = WitnessKind::Hybrid;
            cert->alpha_text = alpha.text();
            cert->beta_text = beta.text();
            cert->shift_text = gamma.text();
            cert->prov = Provenance{Provenance::Type::ProofConstruction, h, idx};
            out.push_back(std::move(*cert));
        }
    }
    return out;
}

// Mixed witnesses: candidates are the chain elements r_k = n_k themselves,
// where r_k |r_k|_D = 1 collapses the product to ||n_k beta - delta||.
// Requires the geometric growth bound n_k <= C^k to hold up to k_max.
inline std::vector<WitnessCertificate> witnesses_mixed(const PseudoAbsSeq& d,
                                                       const ExactReal& beta,
                                                       const ExactReal& delta,
                                                       const Rational& eps, std::size_t k_max,
                                                       const Rational& growth_c,
                                                       ExponentForm form = ExponentForm::Theorem,
                                                       long cap = kDefaultPrecisionCap) {
    if (eps <= 0 || eps >= Rational(1, 2))
        throw std::invalid_argument("witnesses_mixed: eps must lie in (0, 1/2)");
    if (!geometric_growth_check(d, growth_c, k_max))
        throw GrowthCheckFailed("chain exceeds C^k for C = " + rat_str(growth_c) +
                                "; only the liminf report applies");
    Rational expo = witness_exponent(eps, form);
    ProductSpec spec = ProductSpec::mixed(beta, d, delta);
    std::vector<WitnessCertificate> out;
    for (const auto& [k, q] : chain_candidates(d, k_max)) {
        auto cert = detail::try_certificate(spec, k, q, eps, expo, cap);
        if (cert) {
            cert->kind = WitnessKind::Mixed;
            cert->beta_text = beta.text();
            cert->shift_text = delta.text();
            cert->pseudo_text = d.text();
            out.push_back(std::move(*cert));
        }
    }
    return out;
}

// Running minima of n_k |n_k|_D ||n_k beta - delta|| (= ||n_k beta - delta||
// by the unit identity) over the chain: the rate-free liminf trajectory.
inline std::vector<MinRecord> liminf_report(const PseudoAbsSeq& d, const ExactReal& beta,
                                            const ExactReal& delta, std::size_t k_max,
                                            long cap = kDefaultPrecisionCap) {
    ProductSpec spec = ProductSpec::mixed(beta, d, delta);
    std::vector<MinRecord> out;
    std::optional<Rational> running;
    for (const auto& [k, q] : chain_candidates(d, k_max)) {
        Enclosure e = product_value(spec, q, 32, cap);
        if (!running || e.hi < *running) {
            out.push_back(MinRecord{q, e, std::nullopt, false});
            running = e.lo;
            if (e.hi == 0) break;
        }
    }
    return out;
}

// --- independent re-verification ------------------------------------------

struct VerifyIssue {
    std::string check;
    std::string detail;
};

struct VerifyResult {
    bool ok = true;
    std::vector<VerifyIssue> issues;

    void fail(std::string check, std::string detail) {
        ok = false;
        issues.push_back({std::move(check), std::move(detail)});
    }
};

// Re-derives everything in the certificate from its serialized parameters at
// twice the enclosure tightness: candidate membership, product and bound
// enclosures (which must be consistent with the recorded ones), the beaten
// inequality itself, and the side inequalities the construction guarantees.
inline VerifyResult verify_certificate(const WitnessCertificate& cert,
                                       long cap = kDefaultPrecisionCap);

} // namespace dioph

#include "dioph/parse.hpp"

namespace dioph {

inline VerifyResult verify_certificate(const WitnessCertificate& cert, long cap) {
    VerifyResult res;
    if (cert.product.lo > cert.product.hi || cert.product.lo < 0)
        res.fail("product-enclosure", "malformed enclosure");
    if (cert.bound.lo > cert.bound.hi)
        res.fail("bound-enclosure", "malformed enclosure");
    if (!(cert.product.hi < cert.bound.lo))
        res.fail("product < bound", "recorded enclosures do not certify product.hi < bound.lo");

    const long rel_bits = 64; // doubled tightness relative to emission
    try {
        ExactReal beta = parse_exact_real(cert.beta_text);
        ExactReal shift = parse_exact_real(cert.shift_text);

        Integer expected_q;
        ProductSpec spec;
        if (cert.kind == WitnessKind::Hybrid) {
            ExactReal alpha = parse_exact_real(cert.alpha_text);
            auto candidates = detail::convergent_candidates(alpha, cert.k);
            bool found = false;
            for (const auto& [k, q] : candidates)
                if (k == static_cast<std::size_t>(cert.k)) {
                    expected_q = q;
                    found = true;
                }
            if (!found || expected_q != cert.q)
                res.fail("candidate-membership",
                         "q is not the convergent denominator q_k of alpha at k = " +
                             std::to_string(cert.k));
            spec = ProductSpec::hybrid(alpha, beta, shift);

            // q ||q alpha|| <= 1 on convergents
            ExactReal nd = alpha.scaled_norm_dist(cert.q, ExactReal(Rational(0)));
            Enclosure qnd = nd.enclosure(128).scaled(Rational(cert.q));
            if (qnd.lo > 1)
                res.fail("q||q alpha|| <= 1", "convergent inequality violated");
        } else {
            PseudoAbsSeq d = parse_pseudo(cert.pseudo_text);
            Integer nk = d.term(cert.k);
            if (nk != cert.q)
                res.fail("candidate-membership",
                         "q is not the chain element n_k at k = " + std::to_string(cert.k));
            if (Rational(cert.q) * pseudo_abs(cert.q, d) != 1)
                res.fail("unit-identity", "q |q|_D != 1 at the candidate");
            spec = ProductSpec::mixed(beta, d, shift);
        }

        Enclosure product = product_value(spec, cert.q, rel_bits, cap);
        Enclosure bound = log_power_bound(cert.q, cert.exponent, rel_bits);
        if (!product.intersects(cert.product))
            res.fail("product-recompute",
                     "independent product enclosure is disjoint from the recorded one");
        if (!bound.intersects(cert.bound))
            res.fail("bound-recompute",
                     "independent bound enclosure is disjoint from the recorded one");
        if (!product.certainly_less(bound))
            res.fail("product < bound (recomputed)",
                     "re-verification at doubled precision fails the inequality");

        if (cert.kind == WitnessKind::Mixed) {
            // the product must collapse exactly to ||q beta - delta||
            ExactReal nd = beta.scaled_norm_dist(cert.q, shift);
            Enclosure reduced = nd.enclosure(256);
            if (!reduced.intersects(product))
                res.fail("mixed-reduction", "product does not equal ||q beta - delta||");
        }

        if (cert.prov.type == Provenance::Type::ProofConstruction) {
            Enclosure window = psi(cert.prov.n_h, cert.eps);
            if (!(product.hi <= window.hi))
                res.fail("product <= psi(N_h)", "proof-chain inequality violated");
        }
    } catch (const std::exception& e) {
        res.fail("reconstruction", e.what());
    }
    return res;
}

} // namespace dioph
