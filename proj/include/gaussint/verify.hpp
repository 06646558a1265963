#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gaussint/analytic.hpp"
#include "gaussint/divfunc.hpp"
#include "gaussint/search.hpp"

// Named invariant suites. Each one states a claimed property of the
// abundancy machinery and measures it exhaustively or on seeded random
// samples, exactly (no tolerances on the ring side). The suites report
// what they find; several of the claimed properties fail on real inputs,
// and the reports carry the counterexamples.

namespace gaussint {

struct SuiteReport {
    std::string name;
    uint64_t checked = 0;
    uint64_t failed = 0;
    std::vector<std::string> failures; // first few, for diagnostics
    std::vector<std::string> notes;    // measurements worth reporting either way

    bool passed() const { return failed == 0; }

    void fail(const std::string& msg, size_t cap = 8) {
        ++failed;
        if (failures.size() < cap) failures.push_back(msg);
    }

    std::string summary() const {
        std::ostringstream oss;
        oss << name << ": " << (passed() ? "pass" : "FAIL") << " (" << checked << " checked, "
            << failed << " failed)";
        return oss.str();
    }
};

/// Product-formula sigma_k vs the divisor-enumeration oracle, exact, for
/// every canonical eta with norm <= norm_limit and k in {1,2,3}.
inline SuiteReport verify_oracle_sigma(uint64_t norm_limit = 2000) {
    SuiteReport rep{"oracle-sigma"};
    for (const GaussianInt& eta : enumerate_canonical(1, norm_limit)) {
        for (unsigned k = 1; k <= 3; ++k) {
            ++rep.checked;
            const GaussianInt lhs = sigma_k(eta, k);
            const GaussianInt rhs = sigma_k_bruteforce(eta, k);
            if (lhs != rhs)
                rep.fail("sigma_" + std::to_string(k) + "(" + to_string(eta) + "): formula " +
                         to_string(lhs) + " != oracle " + to_string(rhs));
        }
    }
    return rep;
}

/// Weak multiplicativity on random coprime pairs: I_k(ab) = I_k(a)I_k(b)
/// and sigma_k(ab) = sigma_k(a)sigma_k(b), exact.
inline SuiteReport verify_multiplicativity(uint64_t pairs = 10000, uint64_t norm_limit = 10000,
                                           uint64_t seed = 0x67617573) {
    SuiteReport rep{"multiplicativity"};
    const std::vector<GaussianInt> pool = enumerate_canonical(2, norm_limit);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    while (rep.checked < pairs) {
        const GaussianInt &a = pool[pick(rng)], &b = pool[pick(rng)];
        if (!coprime(a, b)) continue;
        const unsigned k = 1 + rep.checked % 3;
        ++rep.checked;
        const bool idx_ok = abundancy(a * b, k) == abundancy(a, k) * abundancy(b, k);
        const bool sig_ok = sigma_k(a * b, k) == sigma_k(a, k) * sigma_k(b, k);
        if (!idx_ok || !sig_ok)
            rep.fail("k=" + std::to_string(k) + " a=" + to_string(a) + " b=" + to_string(b) +
                     (idx_ok ? "" : " [index]") + (sig_ok ? "" : " [sigma]"));
    }
    return rep;
}

/// Claimed divisor monotonicity: for beta | alpha, ||I_k(beta)|| <=
/// ||I_k(alpha)|| with equality exactly on associates. Sampled divisor
/// pairs are built from random sub-exponent vectors of random alpha.
inline SuiteReport verify_monotonicity(uint64_t samples = 1000, uint64_t norm_limit = 3000,
                                       uint64_t seed = 0x6d6f6e6f) {
    SuiteReport rep{"monotonicity"};
    const std::vector<GaussianInt> pool = enumerate_canonical(2, norm_limit);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    while (rep.checked < samples) {
        const GaussianInt& alpha = pool[pick(rng)];
        const Factorization f = factor(alpha);
        if (f.factors.empty()) continue;
        GaussianInt beta(1, 0);
        bool proper = false;
        for (const auto& [pi, e] : f.factors) {
            std::uniform_int_distribution<unsigned> sub(0, e);
            const unsigned fe = sub(rng);
            if (fe < e) proper = true;
            beta *= pow(pi, fe);
        }
        const unsigned k = 1 + rep.checked % 3;
        ++rep.checked;
        const mpq_class nb = abundancy_norm(beta, k), na = abundancy_norm(alpha, k);
        const bool ok = proper ? nb < na : nb == na;
        if (!ok) {
            std::ostringstream oss;
            oss << "k=" << k << " beta=" << to_string(beta) << " | alpha=" << to_string(alpha)
                << ": ||I(beta)||=" << nb.get_str() << (proper ? " !< " : " != ")
                << "||I(alpha)||=" << na.get_str();
            rep.fail(oss.str());
        }
    }
    return rep;
}

namespace detail {

/// Exact check of ||I|| < (|pi|^k / (|pi|^k - 1))^2 without leaving Q:
/// with Q = ||pi||^k and r = ||I||, the inequality is equivalent to
/// r (Q + 1) - Q < 2 r sqrt(Q), settled by squaring when the left side
/// is nonnegative.
inline bool prime_power_upper_bound_holds(const mpq_class& r, const mpz_class& Q) {
    const mpq_class lhs = r * (Q + 1) - Q;
    if (lhs < 0) return true;
    return lhs * lhs < 4 * r * r * Q;
}

} // namespace detail

/// Claimed prime-power bounds: ||(pi^k+1)/pi^k|| <= ||I_k(pi^n)|| below,
/// and |I_k(pi^n)| < |pi|^k/(|pi|^k - 1) above (checked squared, exactly).
inline SuiteReport verify_prime_power_bounds(uint64_t norm_limit = 200, unsigned max_n = 6,
                                             unsigned max_k = 3) {
    SuiteReport rep{"prime-power-bounds"};
    for (const GaussianInt& pi : primes_by_norm(norm_limit)) {
        for (unsigned n = 1; n <= max_n; ++n) {
            for (unsigned k = 1; k <= max_k; ++k) {
                ++rep.checked;
                const mpq_class nI = abundancy_norm(pow(pi, n), k);
                mpz_class normk;
                mpz_pow_ui(normk.get_mpz_t(), pi.norm().get_mpz_t(), k);
                mpq_class lower((pow(pi, k) + GaussianInt(1, 0)).norm(), normk);
                lower.canonicalize();
                const bool low_ok = lower <= nI;
                const bool up_ok = detail::prime_power_upper_bound_holds(nI, normk);
                if (!low_ok || !up_ok) {
                    std::ostringstream oss;
                    oss << "pi=" << to_string(pi) << " n=" << n << " k=" << k
                        << ": ||I||=" << nI.get_str();
                    if (!low_ok) oss << " below lower bound " << lower.get_str();
                    if (!up_ok) oss << " above upper bound";
                    rep.fail(oss.str());
                }
            }
        }
    }
    return rep;
}

/// The three power-gap predicates on seeded random (eta, n, m) triples
/// inside their stated preconditions, exactly.
inline SuiteReport verify_lemma_inequalities(uint64_t samples = 10000, uint64_t seed = 0x6c656d61) {
    SuiteReport rep{"lemma-inequalities"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> re(1, 15), im(-15, 15);
    std::uniform_int_distribution<unsigned> nn(1, 8);
    while (rep.checked < samples) {
        const GaussianInt eta(re(rng), im(rng));
        if (eta.norm() <= 1) continue;
        const unsigned n = nn(rng);
        std::uniform_int_distribution<unsigned> mm(0, n);
        const unsigned m = mm(rng);
        ++rep.checked;
        const LemmaInequalityResult r = lemma_inequality_check(eta, n, m);
        if (!r.all()) {
            std::ostringstream oss;
            oss << "eta=" << to_string(eta) << " n=" << n << " m=" << m << ":";
            if (!r.partial_sum_exceeds_top) oss << " [partial-sum]";
            if (!r.one_step_gap) oss << " [one-step-gap]";
            if (!r.multi_step_gap) oss << " [multi-step-gap]";
            rep.fail(oss.str());
        }
    }
    return rep;
}

/// Claimed k=2 bound: max over canonical eta with norm <= norm_limit of
/// the exact ||I_2(eta)|| stays below the certified upper estimate of
/// zeta(2)beta(2). Reports the maximum found either way.
inline SuiteReport verify_bound_k2(uint64_t norm_limit = 10000) {
    SuiteReport rep{"bound-k2"};
    mpq_class best = 0;
    GaussianInt arg;
    for (const GaussianInt& eta : enumerate_canonical(1, norm_limit)) {
        ++rep.checked;
        const mpq_class q = abundancy_norm(eta, 2);
        if (q > best) {
            best = q;
            arg = eta;
        }
    }
    const ZetaValue zq = dedekind_zeta_qi(BigFloat(2), 12);
    const BigFloat upper = zq.value + zq.abs_error_bound;
    std::ostringstream oss;
    oss << "max ||I_2|| = " << best.get_str() << " (~" << best.get_d() << ") at "
        << to_string(arg) << "; zeta_Q[i](2) upper estimate = " << format_bigfloat(upper, 12);
    if (!(to_bigfloat(best) < upper)) rep.fail(oss.str());
    rep.notes.push_back(oss.str());
    return rep;
}

inline SuiteReport run_verify_suite(const std::string& name) {
    if (name == "oracle-sigma") return verify_oracle_sigma();
    if (name == "multiplicativity") return verify_multiplicativity();
    if (name == "monotonicity") return verify_monotonicity();
    if (name == "prime-power-bounds") return verify_prime_power_bounds();
    if (name == "lemma-inequalities") return verify_lemma_inequalities();
    if (name == "bound-k2") return verify_bound_k2();
    throw domain_error("unknown verify suite: " + name +
                       " (expected one of oracle-sigma, multiplicativity, monotonicity, "
                       "prime-power-bounds, lemma-inequalities, bound-k2)");
}

} // namespace gaussint
