#pragma once

#include <gmpxx.h>

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "gaussint/errors.hpp"

namespace gaussint {

/**
 * Exact element a+bi of Z[i]. Components are arbitrary-magnitude integers;
 * every operation is exact. Values are immutable in spirit: all operations
 * return new values, so sharing across threads is safe.
 */
class GaussianInt {
public:
    GaussianInt() : re_(0), im_(0) {}
    GaussianInt(mpz_class re) : re_(std::move(re)), im_(0) {}
    GaussianInt(mpz_class re, mpz_class im) : re_(std::move(re)), im_(std::move(im)) {}
    GaussianInt(long re, long im = 0) : re_(re), im_(im) {}

    const mpz_class& re() const { return re_; }
    const mpz_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_unit() const { return norm() == 1; }
    bool is_one() const { return re_ == 1 && im_ == 0; }

    /// ||a+bi|| = a^2 + b^2, the field norm down to Z. Totally multiplicative.
    mpz_class norm() const { return re_ * re_ + im_ * im_; }

    GaussianInt conj() const { return {re_, -im_}; }

    GaussianInt operator-() const { return {-re_, -im_}; }

    GaussianInt operator+(const GaussianInt& o) const { return {re_ + o.re_, im_ + o.im_}; }
    GaussianInt operator-(const GaussianInt& o) const { return {re_ - o.re_, im_ - o.im_}; }
    GaussianInt operator*(const GaussianInt& o) const {
        return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
    }

    GaussianInt& operator+=(const GaussianInt& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GaussianInt& operator-=(const GaussianInt& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    GaussianInt& operator*=(const GaussianInt& o) { *this = *this * o; return *this; }

    bool operator==(const GaussianInt& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussianInt& o) const { return !(*this == o); }

    /// Lexicographic (re, im) order; container use only, not a semantic order.
    bool operator<(const GaussianInt& o) const {
        int c = cmp(re_, o.re_);
        if (c != 0) return c < 0;
        return cmp(im_, o.im_) < 0;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianInt& z);

private:
    mpz_class re_, im_;
};

/**
 * One of the four ring units {1, i, -1, -i}, stored as the exponent t of i.
 * Multiplication is exponent addition mod 4, so unit bookkeeping in the
 * canonicalization hot path never touches bignums.
 */
class Unit {
public:
    constexpr explicit Unit(unsigned i_exp = 0) : t_(i_exp & 3u) {}

    static constexpr Unit one() { return Unit(0); }
    static constexpr Unit i() { return Unit(1); }

    constexpr unsigned i_exponent() const { return t_; }

    constexpr Unit operator*(Unit o) const { return Unit(t_ + o.t_); }
    constexpr Unit inverse() const { return Unit(4u - t_); }
    constexpr Unit pow(unsigned long k) const { return Unit(unsigned(t_ * (k & 3u))); }

    constexpr bool operator==(Unit o) const { return t_ == o.t_; }
    constexpr bool operator!=(Unit o) const { return t_ != o.t_; }

    GaussianInt value() const {
        switch (t_) {
            case 0: return {1, 0};
            case 1: return {0, 1};
            case 2: return {-1, 0};
            default: return {0, -1};
        }
    }

private:
    unsigned t_; // 0..3
};

inline GaussianInt operator*(Unit u, const GaussianInt& z) {
    switch (u.i_exponent()) {
        case 0: return z;
        case 1: return {-z.im(), z.re()};
        case 2: return -z;
        default: return {z.im(), -z.re()};
    }
}

/// True iff z is the canonical representative of its associate class:
/// re > 0 and im >= 0, i.e. arg(z) in [0, pi/2).
inline bool is_canonical(const GaussianInt& z) {
    return z.re() > 0 && z.im() >= 0;
}

struct CanonicalForm {
    Unit unit;         // eta = unit * value
    GaussianInt value; // the unique first-quadrant associate
};

/// Decompose eta = u * c with c canonical. Exactly one of the four
/// associates satisfies the first-quadrant predicate.
inline CanonicalForm canonicalize(const GaussianInt& eta) {
    if (eta.is_zero()) throw domain_error("canonicalize: zero has no canonical associate");
    GaussianInt c = eta;
    for (unsigned t = 0; t < 4; ++t) {
        if (is_canonical(c)) return {Unit(t), c};
        c = Unit(3) * c; // c = (-i)^(t+1) * eta, so eta = i^(t+1) * c
    }
    throw internal_error("canonicalize: no canonical associate found");
}

inline bool associated(const GaussianInt& a, const GaussianInt& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return canonicalize(a).value == canonicalize(b).value;
}

inline GaussianInt pow(const GaussianInt& base, unsigned long exp) {
    GaussianInt r(1, 0);
    GaussianInt b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

/// Round a/n to the nearest integer with exact halves toward zero; n > 0.
inline mpz_class round_div_ties_to_zero(const mpz_class& a, const mpz_class& n) {
    if (a >= 0) return (2 * a + n - 1) / (2 * n);
    return -mpz_class((-2 * a + n - 1) / (2 * n));
}

/// True iff alpha divides beta: beta * conj(alpha) must have both
/// components divisible by ||alpha||.
inline bool divides(const GaussianInt& alpha, const GaussianInt& beta) {
    if (alpha.is_zero()) throw domain_error("divides: zero divisor");
    const mpz_class n = alpha.norm();
    const GaussianInt p = beta * alpha.conj();
    return p.re() % n == 0 && p.im() % n == 0;
}

/// Exact quotient beta / alpha; the division must be exact.
inline GaussianInt exact_div(const GaussianInt& beta, const GaussianInt& alpha) {
    if (alpha.is_zero()) throw domain_error("exact_div: zero divisor");
    const mpz_class n = alpha.norm();
    const GaussianInt p = beta * alpha.conj();
    if (p.re() % n != 0 || p.im() % n != 0)
        throw domain_error("exact_div: not an exact divisor");
    return {p.re() / n, p.im() / n};
}

/**
 * Canonical greatest common divisor via the Euclidean algorithm with
 * rounded quotients. Each step satisfies ||r|| <= ||b||/2, so the loop
 * terminates; the result is the canonical generator of the ideal (a, b).
 */
inline GaussianInt gcd(const GaussianInt& a, const GaussianInt& b) {
    if (a.is_zero() && b.is_zero()) throw domain_error("gcd: gcd(0, 0) is undefined");
    GaussianInt x = a, y = b;
    while (!y.is_zero()) {
        const mpz_class n = y.norm();
        const GaussianInt p = x * y.conj();
        const GaussianInt q(round_div_ties_to_zero(p.re(), n), round_div_ties_to_zero(p.im(), n));
        const GaussianInt r = x - q * y;
        x = y;
        y = r;
    }
    return canonicalize(x).value;
}

// ----------------------------------------------------------------- text form

/// Render in the exchange syntax: "0", "7", "2i", "-i", "3-2i", "-1+i".
inline std::string to_string(const GaussianInt& z) {
    const mpz_class &a = z.re(), &b = z.im();
    if (b == 0) return a.get_str();
    std::string im_part;
    if (b == 1) im_part = "i";
    else if (b == -1) im_part = "-i";
    else im_part = b.get_str() + "i";
    if (a == 0) return im_part;
    if (b > 0) return a.get_str() + "+" + im_part;
    return a.get_str() + im_part;
}

inline std::ostream& operator<<(std::ostream& os, const GaussianInt& z) {
    return os << to_string(z);
}

namespace detail {

inline bool parse_int_token(std::string_view s, size_t& pos, bool digits_required,
                            mpz_class& out, bool& had_digits) {
    std::string txt;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        neg = (s[pos] == '-');
        ++pos;
    }
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        txt += s[pos];
        ++pos;
    }
    had_digits = pos > start;
    if (!had_digits) {
        if (digits_required) return false;
        out = neg ? -1 : 1;
        return true;
    }
    out = mpz_class(txt, 10);
    if (neg) out = -out;
    return true;
}

} // namespace detail

/**
 * Parse the exchange syntax: `a`, `bi`, `a+bi`, `a-bi`, with optional
 * spaces anywhere between tokens (e.g. "3-2i", "-1+i", "7", "- 2 i").
 * Exact; no floating point involved.
 */
inline GaussianInt parse_gaussian(std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw parse_error("empty Gaussian-integer literal");

    size_t pos = 0;
    mpz_class first;
    bool had_digits = false;
    if (!detail::parse_int_token(s, pos, /*digits_required=*/false, first, had_digits))
        throw parse_error("bad Gaussian-integer literal: " + std::string(text));

    // pure-imaginary forms: "i", "-i", "2i", "-17i"
    if (pos < s.size() && s[pos] == 'i') {
        ++pos;
        if (pos != s.size())
            throw parse_error("trailing characters in Gaussian-integer literal: " + std::string(text));
        return GaussianInt(0, first);
    }
    if (!had_digits)
        throw parse_error("bad Gaussian-integer literal: " + std::string(text));
    if (pos == s.size()) return GaussianInt(first, 0); // pure real

    // real part followed by signed imaginary part ending in 'i'
    if (s[pos] != '+' && s[pos] != '-')
        throw parse_error("bad Gaussian-integer literal: " + std::string(text));
    mpz_class second;
    bool dummy = false;
    if (!detail::parse_int_token(s, pos, /*digits_required=*/false, second, dummy) ||
        pos >= s.size() || s[pos] != 'i')
        throw parse_error("bad Gaussian-integer literal: " + std::string(text));
    ++pos;
    if (pos != s.size())
        throw parse_error("trailing characters in Gaussian-integer literal: " + std::string(text));
    return GaussianInt(first, second);
}

// ------------------------------------------------------------ Q[i] elements

/**
 * Exact element of Q[i] in canonical reduced form: a Gaussian-integer
 * numerator over a positive rational-integer denominator with
 * gcd(num.re, num.im, den) = 1. Two values are equal in Q[i] iff their
 * canonical forms are componentwise equal, so equality is O(1).
 */
class GaussianRational {
public:
    GaussianRational() : num_(0, 0), den_(1) {}
    GaussianRational(const GaussianInt& num) : num_(num), den_(1) {}
    GaussianRational(long value) : num_(value, 0), den_(1) {}
    GaussianRational(GaussianInt num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw domain_error("GaussianRational: zero denominator");
        reduce();
    }

    const GaussianInt& num() const { return num_; }
    const mpz_class& den() const { return den_; }

    bool is_integral() const { return den_ == 1; }
    bool is_zero() const { return num_.is_zero(); }

    /// ||num||/den^2 as an exact rational.
    mpq_class norm() const {
        mpq_class q(num_.norm(), den_ * den_);
        q.canonicalize();
        return q;
    }

    GaussianRational operator+(const GaussianRational& o) const {
        return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
    }
    GaussianRational operator-(const GaussianRational& o) const {
        return {num_ * o.den_ - o.num_ * den_, den_ * o.den_};
    }
    GaussianRational operator*(const GaussianRational& o) const {
        return {num_ * o.num_, den_ * o.den_};
    }

    bool operator==(const GaussianRational& o) const {
        return den_ == o.den_ && num_ == o.num_;
    }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    /// Container order only: (den, num) lexicographic.
    bool operator<(const GaussianRational& o) const {
        int c = cmp(den_, o.den_);
        if (c != 0) return c < 0;
        return num_ < o.num_;
    }

    std::string to_string() const {
        if (den_ == 1) return gaussint::to_string(num_);
        return "(" + gaussint::to_string(num_) + ")/" + den_.get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& q) {
        return os << q.to_string();
    }

private:
    void reduce() {
        if (den_ < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num_.re().get_mpz_t(), num_.im().get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
        if (g > 1) {
            num_ = GaussianInt(num_.re() / g, num_.im() / g);
            den_ /= g;
        }
    }

    GaussianInt num_;
    mpz_class den_;
};

inline GaussianInt operator*(const GaussianInt& z, Unit u) { return u * z; }

} // namespace gaussint
