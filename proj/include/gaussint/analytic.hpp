#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <limits>

#include "gaussint/divfunc.hpp"
#include "gaussint/gint.hpp"
#include "gaussint/gprimes.hpp"

namespace gaussint {

/// Working real type for the analytic side: 50 significant decimal digits,
/// so the certified error bounds are dominated by series truncation, never
/// by floating-point noise.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

inline BigFloat to_bigfloat(const mpz_class& z) { return BigFloat(z.get_str()); }
inline BigFloat to_bigfloat(const mpq_class& q) {
    return to_bigfloat(q.get_num()) / to_bigfloat(q.get_den());
}

/// A numerical value with a rigorous truncation + rounding error bound.
struct ZetaValue {
    BigFloat s;
    BigFloat value;
    BigFloat abs_error_bound;
};

namespace detail {

inline constexpr uint64_t kMaxSeriesTerms = 100'000'000;

/// n^s for positive real s. Integer exponents go through binary powering,
/// half-integers through sqrt, anything else through pow().
inline BigFloat pow_of_uint(uint64_t n, const BigFloat& s) {
    const BigFloat bn(n);
    if (s == floor(s) && s < BigFloat(1000)) {
        long e = s.convert_to<long>();
        BigFloat r = 1, b = bn;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    const BigFloat twos = 2 * s;
    if (twos == floor(twos) && twos < BigFloat(1000))
        return pow_of_uint(n, (twos - 1) / 2) * sqrt(bn);
    return pow(bn, s);
}

inline void check_series_args(const BigFloat& s, int precision, const char* who) {
    if (!(s > 1)) throw domain_error(std::string(who) + ": defined here only for real s > 1");
    if (precision < 1 || precision > 40)
        throw domain_error(std::string(who) + ": precision must be in [1, 40] digits");
}

inline BigFloat rounding_slack(const BigFloat& value, uint64_t terms) {
    return abs(value) * std::numeric_limits<BigFloat>::epsilon() * BigFloat(terms + 16);
}

} // namespace detail

/**
 * Riemann zeta for real s > 1: direct sum to N plus the integral-test
 * bracket of the tail. The tail lies between the integrals from N+1 and
 * from N, so taking their midpoint leaves a certified half-width error.
 */
inline ZetaValue zeta(const BigFloat& s, int precision = 12) {
    detail::check_series_args(s, precision, "zeta");
    const BigFloat target = pow(BigFloat(10), -precision);
    const auto integral_from = [&](uint64_t m) { // int_m^inf x^-s dx
        return 1 / (detail::pow_of_uint(m, s - 1) * (s - 1));
    };
    uint64_t n_terms = 16;
    while ((integral_from(n_terms) - integral_from(n_terms + 1)) / 2 > target / 2) {
        n_terms *= 2;
        if (n_terms > detail::kMaxSeriesTerms)
            throw resource_error("zeta: requested precision is out of reach of the direct sum at this s");
    }
    BigFloat sum = 0;
    for (uint64_t n = 1; n <= n_terms; ++n) sum += 1 / detail::pow_of_uint(n, s);
    const BigFloat lo = integral_from(n_terms + 1), hi = integral_from(n_terms);
    const BigFloat value = sum + (lo + hi) / 2;
    return {s, value, (hi - lo) / 2 + detail::rounding_slack(value, n_terms)};
}

/// chi(n) mod 4: 1, 0, -1, 0 for n = 1, 2, 3, 0 (mod 4); the character
/// behind the Dirichlet L-function that beta() evaluates.
inline int chi1(const mpz_class& n) {
    const unsigned long r = mpz_class(((n % 4) + 4) % 4).get_ui();
    if (r == 1) return 1;
    if (r == 3) return -1;
    return 0;
}

/**
 * Dirichlet beta for real s > 1 via the alternating series
 * sum (-1)^n (2n+1)^-s. Consecutive partial sums bracket the limit, so the
 * midpoint carries a certified error of half the first omitted term.
 */
inline ZetaValue beta(const BigFloat& s, int precision = 12) {
    detail::check_series_args(s, precision, "beta");
    const BigFloat target = pow(BigFloat(10), -precision);
    uint64_t n_terms = 8;
    while (1 / (2 * detail::pow_of_uint(2 * n_terms + 1, s)) > target / 2) {
        n_terms *= 2;
        if (n_terms > detail::kMaxSeriesTerms)
            throw resource_error("beta: requested precision is out of reach of the direct sum at this s");
    }
    BigFloat sum = 0;
    for (uint64_t n = 0; n < n_terms; ++n) {
        const BigFloat term = 1 / detail::pow_of_uint(2 * n + 1, s);
        if (n & 1) sum -= term;
        else sum += term;
    }
    BigFloat half_next = 1 / (2 * detail::pow_of_uint(2 * n_terms + 1, s));
    const BigFloat value = (n_terms & 1) ? sum - half_next : sum + half_next;
    return {s, value, half_next + detail::rounding_slack(value, n_terms)};
}

/// zeta_Q[i](s) = zeta(s) * beta(s), with the factor error bounds
/// propagated through the product.
inline ZetaValue dedekind_zeta_qi(const BigFloat& s, int precision = 12) {
    const int inner = precision <= 38 ? precision + 2 : 40;
    const ZetaValue z = zeta(s, inner);
    const ZetaValue b = beta(s, inner);
    const BigFloat value = z.value * b.value;
    BigFloat bound = z.abs_error_bound * abs(b.value) + b.abs_error_bound * abs(z.value) +
                     z.abs_error_bound * b.abs_error_bound;
    bound += detail::rounding_slack(value, 4);
    return {s, value, bound};
}

/**
 * Partial Euler product over the canonical Gaussian primes of norm <=
 * norm_limit: prod 1/(1 - ||pi||^-s). Monotone nondecreasing in the limit
 * and always below the full zeta_Q[i](s).
 */
inline BigFloat dedekind_zeta_euler_product(const BigFloat& s, uint64_t norm_limit) {
    if (!(s > 1)) throw domain_error("dedekind_zeta_euler_product: requires s > 1");
    BigFloat prod = 1;
    for (const GaussianInt& pi : primes_by_norm(norm_limit)) {
        const uint64_t n = pi.norm().get_ui();
        prod *= 1 / (1 - 1 / detail::pow_of_uint(n, s));
    }
    return prod;
}

/**
 * The three power-gap predicates, each evaluated exactly as a norm
 * (squared absolute value) comparison in integer arithmetic:
 *
 *   partial_sum_exceeds_top:  ||1 + eta + ... + eta^n|| >  ||eta^n||
 *   one_step_gap:             ||eta^n - 1||             >  ||eta^n - eta||
 *   multi_step_gap:           ||eta^n - 1||             >= ||eta^n - eta^m||,
 *                             with exact equality required when m = 0.
 *
 * Preconditions: Re(eta) > 0, ||eta|| > 1, n >= 1, 0 <= m <= n.
 */
struct LemmaInequalityResult {
    bool partial_sum_exceeds_top = false;
    bool one_step_gap = false;
    bool multi_step_gap = false;

    bool all() const { return partial_sum_exceeds_top && one_step_gap && multi_step_gap; }
};

inline LemmaInequalityResult lemma_inequality_check(const GaussianInt& eta, unsigned n, unsigned m) {
    if (eta.re() <= 0) throw domain_error("lemma_inequality_check: requires Re(eta) > 0");
    if (eta.norm() <= 1) throw domain_error("lemma_inequality_check: requires ||eta|| > 1");
    if (n < 1 || m > n) throw domain_error("lemma_inequality_check: requires n >= 1 and 0 <= m <= n");

    std::vector<GaussianInt> p{GaussianInt(1, 0)};
    for (unsigned j = 1; j <= n; ++j) p.push_back(p.back() * eta);
    GaussianInt partial(0, 0);
    for (const GaussianInt& w : p) partial += w;

    LemmaInequalityResult r;
    r.partial_sum_exceeds_top = partial.norm() > p[n].norm();
    r.one_step_gap = (p[n] - GaussianInt(1, 0)).norm() > (p[n] - eta).norm();
    const mpz_class lhs = (p[n] - GaussianInt(1, 0)).norm();
    const mpz_class rhs = (p[n] - p[m]).norm();
    r.multi_step_gap = (m == 0) ? (lhs == rhs) : (lhs >= rhs);
    return r;
}

/**
 * True iff the exact rational ||I_k(eta)|| lies strictly below the
 * certified upper estimate value + error of zeta_Q[i](k). The comparison
 * runs in 50-digit floats with a few ulps of padding on the left side;
 * the zeta error bound dwarfs that padding.
 */
inline bool abundancy_norm_bound(const GaussianInt& eta, unsigned k, int precision = 12) {
    if (k < 2) throw domain_error("abundancy_norm_bound: the bound is only claimed for k >= 2");
    const mpq_class q = abundancy_norm(eta, k); // throws on zero eta
    const ZetaValue zq = dedekind_zeta_qi(BigFloat(k), precision);
    const BigFloat upper = zq.value + zq.abs_error_bound;
    const BigFloat lhs = to_bigfloat(q);
    return lhs * (1 + 4 * std::numeric_limits<BigFloat>::epsilon()) < upper;
}

} // namespace gaussint
