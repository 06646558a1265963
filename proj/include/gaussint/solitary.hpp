#pragma once

#include "gaussint/divfunc.hpp"
#include "gaussint/gfactor.hpp"
#include "gaussint/gint.hpp"

namespace gaussint {

enum class SolitaryFamily { greening, prime_power, prime_conjugate_pair, none };

inline const char* to_string(SolitaryFamily f) {
    switch (f) {
        case SolitaryFamily::greening: return "greening";
        case SolitaryFamily::prime_power: return "prime_power";
        case SolitaryFamily::prime_conjugate_pair: return "prime_conjugate_pair";
        default: return "none";
    }
}

/**
 * Executable certificate for the gcd criterion: eta is reported certified
 * when gcd(eta^k, sigma_k(eta)) is a unit. certified = false is
 * inconclusive, never a proof of friendliness — the criterion is a
 * sufficient condition only.
 */
struct SolitaryCertificate {
    GaussianInt eta;
    unsigned k = 1;
    GaussianInt gcd_value;
    bool certified = false;
    SolitaryFamily family = SolitaryFamily::none;
};

inline SolitaryCertificate greening_check(const GaussianInt& eta, unsigned k) {
    if (eta.is_zero() || eta.is_unit())
        throw domain_error("greening_check: eta must be a non-unit, nonzero element");
    if (k == 0) throw domain_error("greening_check: k must be positive");
    SolitaryCertificate cert;
    cert.eta = eta;
    cert.k = k;
    cert.gcd_value = gcd(pow(eta, k), sigma_k(eta, k));
    cert.certified = cert.gcd_value.is_unit();
    cert.family = cert.certified ? SolitaryFamily::greening : SolitaryFamily::none;
    return cert;
}

/// Certificate for eta = pi^n. sigma_k(pi^n) = 1 + pi^k * l, so the gcd
/// with pi^(kn) is always a unit; a non-unit gcd here is a genuine bug.
inline SolitaryCertificate prime_power_solitary(const GaussianInt& pi, unsigned n, unsigned k) {
    if (!is_gaussian_prime(pi) || !is_canonical(pi))
        throw domain_error("prime_power_solitary: pi must be a canonical Gaussian prime");
    if (n == 0 || k == 0) throw domain_error("prime_power_solitary: n and k must be positive");
    SolitaryCertificate cert = greening_check(pow(pi, n), k);
    if (!cert.certified)
        throw internal_error("prime_power_solitary: gcd(pi^(kn), sigma_k(pi^n)) is not a unit");
    cert.family = SolitaryFamily::prime_power;
    return cert;
}

/**
 * Certificate for eta = pi^n1 * canonical(conj(pi))^n2 with pi a split
 * prime. Runs the gcd criterion and reports the result as computed: the
 * construction does NOT always certify (e.g. pi = 2+i, n1 = n2 = k = 1
 * gives eta ~ 5 with gcd 1+2i), so certified may be false.
 */
inline SolitaryCertificate prime_conjugate_pair_solitary(const GaussianInt& pi, unsigned n1,
                                                         unsigned n2, unsigned k) {
    if (!is_gaussian_prime(pi) || !is_canonical(pi))
        throw domain_error("prime_conjugate_pair_solitary: pi must be a canonical Gaussian prime");
    const mpz_class n = pi.norm();
    if (n == 2 || !is_rational_prime(n))
        throw domain_error(
            "prime_conjugate_pair_solitary: pi must be split (ramified/inert reduce to prime_power_solitary)");
    if (n1 == 0 || n2 == 0 || k == 0)
        throw domain_error("prime_conjugate_pair_solitary: n1, n2, k must be positive");
    const GaussianInt partner = canonicalize(pi.conj()).value;
    SolitaryCertificate cert = greening_check(pow(pi, n1) * pow(partner, n2), k);
    cert.family = SolitaryFamily::prime_conjugate_pair;
    return cert;
}

} // namespace gaussint
