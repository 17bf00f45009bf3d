#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nsbox/errors.hpp"

namespace nsbox {

// Expression templates are off so that `auto` always yields a value.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using Vector = std::vector<Rational>;

/// "p/q" in lowest terms, or a bare integer when q == 1.
inline std::string to_string(const Rational& q) { return q.str(); }

namespace detail {

inline bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

}  // namespace detail

/// Parses "p", "p/q" or "-p/q". Non-reduced input is accepted and canonicalized.
inline Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const auto num_part = text.substr(0, slash);
    if (!detail::is_integer_literal(num_part)) {
        throw ParseError("malformed rational \"" + std::string(text) + "\"");
    }
    Integer num(std::string(num_part.front() == '+' ? num_part.substr(1) : num_part));
    if (slash == std::string_view::npos) return Rational(num);

    const auto den_part = text.substr(slash + 1);
    if (!detail::is_integer_literal(den_part) || den_part.front() == '-' ||
        den_part.front() == '+') {
        throw ParseError("malformed rational \"" + std::string(text) + "\"");
    }
    Integer den{std::string(den_part)};
    if (den == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    return Rational(num, den);
}

inline Rational dot(const Vector& a, const Vector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    }
    return s;
}

/// Scales `v` to the primitive integer vector on the same ray (gcd 1).
inline void make_primitive(Vector& v) {
    Integer lcm_den = 1;
    for (const auto& q : v) {
        if (!q.is_zero()) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(q));
    }
    Integer g = 0;
    for (const auto& q : v) {
        if (q.is_zero()) continue;
        Integer scaled = numerator(q) * (lcm_den / denominator(q));
        g = boost::multiprecision::gcd(g, scaled);
    }
    if (g == 0) return;
    const Rational factor(lcm_den, g);
    for (auto& q : v) {
        if (!q.is_zero()) q *= factor;
    }
}

}  // namespace nsbox
