#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gaussint/gint.hpp"

namespace gaussint {

inline uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while (r < UINT32_MAX && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// Plain sieve of Eratosthenes. Desk-scale limits (<= 1e7); the interface
/// allows swapping in a segmented sieve later without touching callers.
inline std::vector<uint64_t> sieve_primes(uint64_t limit) {
    std::vector<uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<uint8_t> composite(limit + 1, 0);
    for (uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (uint64_t q = p * p; q <= limit; q += p) composite[q] = 1;
    }
    return primes;
}

inline bool is_rational_prime(const mpz_class& p) {
    if (p < 2) return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 30) != 0;
}

enum class PrimeKind { ramified, inert, split };

inline const char* to_string(PrimeKind k) {
    switch (k) {
        case PrimeKind::ramified: return "ramified";
        case PrimeKind::inert: return "inert";
        default: return "split";
    }
}

/// How a rational prime p behaves in Z[i], together with the canonical
/// Gaussian prime(s) over it. Split pairs are ordered smaller imaginary
/// part first so downstream output is deterministic.
struct PrimeClass {
    mpz_class p;
    PrimeKind kind = PrimeKind::ramified;
    std::vector<GaussianInt> primes;
};

/// x with x^2 = -1 (mod p) for p = 1 (mod 4), via a^((p-1)/4) for the
/// smallest quadratic non-residue a (Euler's criterion). Deterministic.
inline mpz_class sqrt_minus_one_mod(const mpz_class& p) {
    const mpz_class half = (p - 1) / 2;
    for (mpz_class a = 2; a < p; ++a) {
        mpz_class r;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), half.get_mpz_t(), p.get_mpz_t());
        if (r == p - 1) {
            const mpz_class quarter = (p - 1) / 4;
            mpz_powm(r.get_mpz_t(), a.get_mpz_t(), quarter.get_mpz_t(), p.get_mpz_t());
            return r;
        }
    }
    throw internal_error("sqrt_minus_one_mod: no non-residue found");
}

inline PrimeClass classify(const mpz_class& p) {
    if (!is_rational_prime(p)) throw domain_error("classify: argument is not a rational prime");
    if (p == 2) return {p, PrimeKind::ramified, {GaussianInt(1, 1)}};
    if (p % 4 == 3) return {p, PrimeKind::inert, {GaussianInt(p)}};
    const mpz_class x = sqrt_minus_one_mod(p);
    GaussianInt pi = gcd(GaussianInt(p), GaussianInt(x, 1));
    if (pi.norm() != p) throw internal_error("classify: split prime recovery failed");
    GaussianInt partner = canonicalize(pi.conj()).value;
    if (partner.im() < pi.im()) std::swap(pi, partner);
    return {p, PrimeKind::split, {pi, partner}};
}

/// True iff eta is prime in Z[i]: its norm is a rational prime, or it is
/// an associate of a rational prime q = 3 (mod 4).
inline bool is_gaussian_prime(const GaussianInt& eta) {
    if (eta.is_zero() || eta.is_unit())
        throw domain_error("is_gaussian_prime: zero and units are neither prime nor composite");
    if (is_rational_prime(eta.norm())) return true;
    const GaussianInt c = canonicalize(eta).value;
    return c.im() == 0 && c.re() % 4 == 3 && is_rational_prime(c.re());
}

/**
 * Every canonical Gaussian prime of norm <= limit, exactly once, sorted by
 * norm with the smaller imaginary part first among equal norms. Built from
 * a rational-prime sieve up to `limit` (ramified + split primes) plus the
 * inert primes up to sqrt(limit).
 */
inline std::vector<GaussianInt> primes_by_norm(uint64_t limit) {
    if (limit < 2) throw domain_error("primes_by_norm: limit must be >= 2");
    struct Entry {
        uint64_t norm, im;
        GaussianInt value;
    };
    std::vector<Entry> entries;
    for (uint64_t p : sieve_primes(limit)) {
        if (p == 2) {
            entries.push_back({2, 1, GaussianInt(1, 1)});
        } else if (p % 4 == 1) {
            const PrimeClass cls = classify(mpz_class(static_cast<unsigned long>(p)));
            for (const GaussianInt& pi : cls.primes)
                entries.push_back({p, pi.im().get_ui(), pi});
        } else if (p * p <= limit) {
            entries.push_back({p * p, 0, GaussianInt(static_cast<long>(p))});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.im < b.im;
    });
    std::vector<GaussianInt> out;
    out.reserve(entries.size());
    for (auto& e : entries) out.push_back(std::move(e.value));
    return out;
}

} // namespace gaussint
