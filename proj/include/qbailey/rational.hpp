#pragma once

// Exact rationals used across the library.
//
// Coefficients live in GMP rationals (they grow without bound in products of
// Pochhammer symbols). Exponents of q stay small, so they use a fixed-width
// boost::rational.

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>
#include <gmpxx.h>

#include "qbailey/error.hpp"

namespace qbailey {

using Exponent = boost::rational<std::int64_t>;
using BigRational = mpq_class;

inline std::string to_string(const Exponent& e) {
    if (e.denominator() == 1) {
        return std::to_string(e.numerator());
    }
    return std::to_string(e.numerator()) + "/" + std::to_string(e.denominator());
}

inline std::string to_string(const BigRational& x) { return x.get_str(); }

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

inline std::int64_t floor(const Exponent& e) { return floor_div(e.numerator(), e.denominator()); }

inline std::int64_t ceil(const Exponent& e) { return -floor_div(-e.numerator(), e.denominator()); }

inline bool is_integer(const Exponent& e) { return e.denominator() == 1; }

inline std::int64_t lcm_den(std::int64_t den, const Exponent& e) { return std::lcm(den, e.denominator()); }

namespace detail {

inline std::int64_t parse_int(std::string_view s, std::string_view what) {
    if (s.empty()) {
        throw ParseError("empty integer in " + std::string(what));
    }
    std::size_t pos = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        pos = 1;
    }
    if (pos == s.size()) {
        throw ParseError("malformed integer '" + std::string(s) + "' in " + std::string(what));
    }
    std::int64_t v = 0;
    for (; pos < s.size(); ++pos) {
        if (s[pos] < '0' || s[pos] > '9') {
            throw ParseError("malformed integer '" + std::string(s) + "' in " + std::string(what));
        }
        v = v * 10 + (s[pos] - '0');
    }
    return neg ? -v : v;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace detail

/// Parses "p", "-p" or "p/q".
inline Exponent parse_exponent(std::string_view text) {
    text = detail::trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Exponent(detail::parse_int(text, "exponent"));
    }
    auto num = detail::parse_int(detail::trim(text.substr(0, slash)), "exponent");
    auto den = detail::parse_int(detail::trim(text.substr(slash + 1)), "exponent");
    if (den == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Exponent(num, den);
}

inline BigRational parse_big_rational(std::string_view text) {
    text = detail::trim(text);
    BigRational r;
    if (text.empty() || r.set_str(std::string(text), 10) != 0) {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    if (r.get_den() == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    r.canonicalize();
    return r;
}

/// Exact m-th root of a nonnegative rational, if it exists.
inline std::optional<BigRational> exact_root(const BigRational& x, unsigned m) {
    if (sgn(x) < 0) {
        return std::nullopt;
    }
    mpz_class num, den;
    if (mpz_root(num.get_mpz_t(), x.get_num_mpz_t(), m) == 0) {
        return std::nullopt;
    }
    if (mpz_root(den.get_mpz_t(), x.get_den_mpz_t(), m) == 0) {
        return std::nullopt;
    }
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace qbailey
