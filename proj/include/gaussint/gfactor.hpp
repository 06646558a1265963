#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "gaussint/gint.hpp"
#include "gaussint/gprimes.hpp"

namespace gaussint {

/**
 * eta = unit * prod(prime_i ^ exp_i) over distinct canonical first-quadrant
 * primes, sorted by (norm, re) ascending.
 */
struct Factorization {
    Unit unit;
    std::vector<std::pair<GaussianInt, unsigned>> factors;

    GaussianInt value() const {
        GaussianInt v = unit.value();
        for (const auto& [pi, e] : factors) v *= pow(pi, e);
        return v;
    }
};

namespace detail {

inline constexpr uint64_t kTrialDivisionBound = 1'000'000;

inline const std::vector<uint64_t>& small_primes() {
    static const std::vector<uint64_t> table = sieve_primes(kTrialDivisionBound);
    return table;
}

/// Brent-cycle Pollard rho with fixed start and incrementing polynomial
/// constant; fully deterministic. n must be odd, composite, > 1.
inline mpz_class pollard_brent(const mpz_class& n) {
    for (mpz_class c = 1; c < n; ++c) {
        mpz_class y = 2, r = 1, q = 1, g = 1, x, ys;
        const long m = 128;
        while (g == 1) {
            x = y;
            for (mpz_class i = 0; i < r; ++i) y = (y * y + c) % n;
            mpz_class k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (long i = 0; i < m && mpz_class(k + i) < r; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            do {
                ys = (ys * ys + c) % n;
                mpz_class d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
    throw internal_error("pollard_brent: failed to split composite");
}

/// Factor n > 0 over Z: trial division through the sieve table, then
/// rho on whatever survives.
inline std::vector<std::pair<mpz_class, unsigned>> factor_rational(mpz_class n) {
    std::vector<std::pair<mpz_class, unsigned>> out;
    for (uint64_t p : small_primes()) {
        mpz_class pm(static_cast<unsigned long>(p));
        if (pm * pm > n) break;
        unsigned e = 0;
        while (n % pm == 0) {
            n /= pm;
            ++e;
        }
        if (e) out.emplace_back(pm, e);
    }
    if (n > 1) {
        std::vector<mpz_class> pending{n};
        while (!pending.empty()) {
            mpz_class v = pending.back();
            pending.pop_back();
            if (is_rational_prime(v)) {
                auto it = std::find_if(out.begin(), out.end(),
                                       [&](const auto& pe) { return pe.first == v; });
                if (it == out.end()) out.emplace_back(v, 1);
                else ++it->second;
                continue;
            }
            const mpz_class d = pollard_brent(v);
            pending.push_back(d);
            pending.push_back(v / d);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

} // namespace detail

/**
 * Factor a nonzero Gaussian integer into a unit times canonical prime
 * powers. Works through the norm: factor ||eta|| over Z, lift each rational
 * prime via classify, then recover the exponent of each Gaussian prime by
 * repeated exact division (the two primes over a split p are handled
 * independently; their exponents may differ).
 */
inline Factorization factor(const GaussianInt& eta) {
    if (eta.is_zero()) throw domain_error("factor: zero has no factorization");
    GaussianInt work = eta;
    Factorization out;
    for (const auto& [p, mult] : detail::factor_rational(eta.norm())) {
        (void)mult;
        for (const GaussianInt& pi : classify(p).primes) {
            unsigned e = 0;
            while (divides(pi, work)) {
                work = exact_div(work, pi);
                ++e;
            }
            if (e) out.factors.emplace_back(pi, e);
        }
    }
    if (!work.is_unit()) throw internal_error("factor: residual is not a unit");
    out.unit = canonicalize(work).unit;
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        const mpz_class na = a.first.norm(), nb = b.first.norm();
        if (na != nb) return na < nb;
        return a.first.re() < b.first.re();
    });
    return out;
}

/// Exponent of the canonical prime pi in eta; 0 if pi does not divide eta.
inline unsigned ord(const GaussianInt& eta, const GaussianInt& pi) {
    if (eta.is_zero()) throw domain_error("ord: zero input");
    if (!is_gaussian_prime(pi) || !is_canonical(pi))
        throw domain_error("ord: second argument must be a canonical Gaussian prime");
    unsigned e = 0;
    GaussianInt work = eta;
    while (divides(pi, work)) {
        work = exact_div(work, pi);
        ++e;
    }
    return e;
}

/// gcd-based (no factorization): true iff gcd(a, b) is a unit.
inline bool coprime(const GaussianInt& a, const GaussianInt& b) {
    return gcd(a, b).is_unit();
}

} // namespace gaussint
