#pragma once

#include <json.hpp>

#include <iomanip>
#include <sstream>
#include <string>

#include "gaussint/analytic.hpp"
#include "gaussint/gfactor.hpp"
#include "gaussint/gint.hpp"
#include "gaussint/gprimes.hpp"
#include "gaussint/solitary.hpp"

// JSON exchange forms. All exact payloads round-trip bit-for-bit through
// the text parser; analytic reals are one-way (value + error bound).

namespace gaussint {

inline void to_json(nlohmann::json& j, const GaussianInt& z) { j = to_string(z); }
inline void from_json(const nlohmann::json& j, GaussianInt& z) {
    z = parse_gaussian(j.get<std::string>());
}

inline void to_json(nlohmann::json& j, const Unit& u) {
    j = "i^" + std::to_string(u.i_exponent());
}
inline void from_json(const nlohmann::json& j, Unit& u) {
    const std::string s = j.get<std::string>();
    if (s.size() != 3 || s.rfind("i^", 0) != 0 || s[2] < '0' || s[2] > '3')
        throw parse_error("bad unit literal: " + s);
    u = Unit(static_cast<unsigned>(s[2] - '0'));
}

inline void to_json(nlohmann::json& j, const GaussianRational& q) {
    j = nlohmann::json{{"num", to_string(q.num())}, {"den", q.den().get_str()}};
}
inline void from_json(const nlohmann::json& j, GaussianRational& q) {
    const GaussianInt num = parse_gaussian(j.at("num").get<std::string>());
    const mpz_class den(j.at("den").get<std::string>(), 10);
    q = GaussianRational(num, den);
}

inline void to_json(nlohmann::json& j, const Factorization& f) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& [pi, e] : f.factors)
        factors.push_back(nlohmann::json::array({to_string(pi), e}));
    j = nlohmann::json{{"unit", f.unit}, {"factors", factors}};
}
inline void from_json(const nlohmann::json& j, Factorization& f) {
    f.unit = j.at("unit").get<Unit>();
    f.factors.clear();
    for (const auto& entry : j.at("factors"))
        f.factors.emplace_back(parse_gaussian(entry.at(0).get<std::string>()),
                               entry.at(1).get<unsigned>());
}

inline SolitaryFamily solitary_family_from_string(const std::string& s) {
    if (s == "greening") return SolitaryFamily::greening;
    if (s == "prime_power") return SolitaryFamily::prime_power;
    if (s == "prime_conjugate_pair") return SolitaryFamily::prime_conjugate_pair;
    if (s == "none") return SolitaryFamily::none;
    throw parse_error("bad solitary family: " + s);
}

inline void to_json(nlohmann::json& j, const SolitaryCertificate& c) {
    j = nlohmann::json{{"eta", to_string(c.eta)},
                       {"k", c.k},
                       {"gcd", to_string(c.gcd_value)},
                       {"certified", c.certified},
                       {"family", to_string(c.family)}};
}
inline void from_json(const nlohmann::json& j, SolitaryCertificate& c) {
    c.eta = parse_gaussian(j.at("eta").get<std::string>());
    c.k = j.at("k").get<unsigned>();
    c.gcd_value = parse_gaussian(j.at("gcd").get<std::string>());
    c.certified = j.at("certified").get<bool>();
    c.family = solitary_family_from_string(j.at("family").get<std::string>());
}

inline std::string format_bigfloat(const BigFloat& x, int digits = 30) {
    std::ostringstream oss;
    oss << std::setprecision(digits) << x;
    return oss.str();
}

inline void to_json(nlohmann::json& j, const ZetaValue& v) {
    j = nlohmann::json{{"s", format_bigfloat(v.s)},
                       {"value", format_bigfloat(v.value)},
                       {"abs_error_bound", format_bigfloat(v.abs_error_bound, 6)}};
}

} // namespace gaussint
