#pragma once

#include <cstdint>
#include <vector>

#include "gaussint/gfactor.hpp"
#include "gaussint/gint.hpp"

namespace gaussint {

inline constexpr uint64_t kDefaultOracleNormBound = 1'000'000;

/// sigma_k over a known factorization. Each prime-power factor is the
/// geometric sum 1 + pi^k + ... + pi^(k*e), so everything stays in the
/// ring and no exact division is needed.
inline GaussianInt sigma_k(const Factorization& f, unsigned k) {
    if (k == 0) throw domain_error("sigma_k: k must be positive");
    GaussianInt result(1, 0);
    for (const auto& [pi, e] : f.factors) {
        const GaussianInt pk = pow(pi, k);
        GaussianInt term(1, 0), acc(1, 0);
        for (unsigned j = 0; j < e; ++j) {
            acc *= pk;
            term += acc;
        }
        result *= term;
    }
    return result;
}

/// Sum of k-th powers of the divisors of eta, one representative per
/// associate class. sigma_k of a unit is 1 (empty product).
inline GaussianInt sigma_k(const GaussianInt& eta, unsigned k) {
    if (eta.is_zero()) throw domain_error("sigma_k: zero input");
    return sigma_k(factor(eta), k);
}

/**
 * Independent oracle for sigma_k: enumerate every exponent vector
 * 0 <= f_i <= e_i over the canonical primes of eta (exactly one divisor
 * per associate class) and add up d^k directly. Guarded by a norm bound
 * so a stray huge input cannot wedge the process.
 */
inline GaussianInt sigma_k_bruteforce(const GaussianInt& eta, unsigned k,
                                      uint64_t oracle_norm_bound = kDefaultOracleNormBound) {
    if (eta.is_zero()) throw domain_error("sigma_k_bruteforce: zero input");
    if (k == 0) throw domain_error("sigma_k_bruteforce: k must be positive");
    if (eta.norm() > oracle_norm_bound)
        throw resource_error("sigma_k_bruteforce: norm exceeds the configured oracle bound");
    const Factorization f = factor(eta);

    // power tables: powers[i][j] = pi_i^j for j = 0..e_i
    std::vector<std::vector<GaussianInt>> powers;
    for (const auto& [pi, e] : f.factors) {
        std::vector<GaussianInt> row{GaussianInt(1, 0)};
        for (unsigned j = 1; j <= e; ++j) row.push_back(row.back() * pi);
        powers.push_back(std::move(row));
    }

    std::vector<unsigned> exps(f.factors.size(), 0);
    GaussianInt sum(0, 0);
    for (;;) {
        GaussianInt d(1, 0);
        for (size_t i = 0; i < exps.size(); ++i) d *= powers[i][exps[i]];
        sum += pow(d, k);
        size_t i = 0;
        while (i < exps.size() && exps[i] == f.factors[i].second) {
            exps[i] = 0;
            ++i;
        }
        if (i == exps.size()) break;
        ++exps[i];
    }
    return sum;
}

/// I_k(eta) = u^k * sigma_k(eta) / eta^k as an exact element of Q[i],
/// rationalized by conj(eta)^k / ||eta||^k and reduced. The value only
/// depends on the associate class of eta.
inline GaussianRational abundancy(const GaussianInt& eta, unsigned k) {
    if (eta.is_zero()) throw domain_error("abundancy: zero input");
    if (k == 0) throw domain_error("abundancy: k must be positive");
    const Factorization f = factor(eta);
    const GaussianInt sig = sigma_k(f, k);
    const GaussianInt num = f.unit.pow(k) * (sig * pow(eta.conj(), k));
    mpz_class den;
    mpz_pow_ui(den.get_mpz_t(), eta.norm().get_mpz_t(), k);
    return GaussianRational(num, den);
}

/// Exact ||I_k(eta)|| as a reduced rational.
inline mpq_class abundancy_norm(const GaussianInt& eta, unsigned k) {
    return abundancy(eta, k).norm();
}

struct FriendlyResult {
    bool friendly = false;
    bool associates = false; // associates always share the index; callers filter
    GaussianRational index1, index2;
};

/// Exact equality test of the two canonical abundancy values.
inline FriendlyResult are_friendly(const GaussianInt& eta1, const GaussianInt& eta2, unsigned k) {
    FriendlyResult r;
    r.index1 = abundancy(eta1, k);
    r.index2 = abundancy(eta2, k);
    r.friendly = r.index1 == r.index2;
    r.associates = associated(eta1, eta2);
    return r;
}

} // namespace gaussint
