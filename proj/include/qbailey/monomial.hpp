#pragma once

// Monomials u*q^x used for specialized parameters, with an INFINITY marker
// for parameters that are sent to infinity in limiting cases.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "qbailey/cyclo.hpp"
#include "qbailey/error.hpp"
#include "qbailey/rational.hpp"

namespace qbailey {

struct Monomial {
    Cyclo unit{1};
    Exponent exp{0};
    bool infinite = false;

    Monomial() = default;
    Monomial(Cyclo u, Exponent e) : unit(std::move(u)), exp(e) {}

    static Monomial q_pow(Exponent e) { return Monomial(Cyclo(1), e); }
    static Monomial constant(Cyclo u) { return Monomial(std::move(u), Exponent(0)); }
    static Monomial infinity() {
        Monomial m;
        m.infinite = true;
        return m;
    }

    bool is_zero() const { return !infinite && unit.is_zero(); }

    Monomial operator-() const {
        require_finite("negation");
        return Monomial(-unit, exp);
    }

    friend Monomial operator*(const Monomial& x, const Monomial& y) {
        x.require_finite("product");
        y.require_finite("product");
        return Monomial(x.unit * y.unit, x.exp + y.exp);
    }

    friend Monomial operator/(const Monomial& x, const Monomial& y) {
        x.require_finite("quotient");
        y.require_finite("quotient");
        if (y.unit.is_zero()) {
            throw DivisionByZero("division by the zero monomial");
        }
        return Monomial(x.unit / y.unit, x.exp - y.exp);
    }

    friend bool operator==(const Monomial& x, const Monomial& y) {
        if (x.infinite || y.infinite) {
            return x.infinite == y.infinite;
        }
        return x.unit == y.unit && x.exp == y.exp;
    }

    Monomial pow(long k) const {
        require_finite("power");
        return Monomial(unit.pow(k), exp * k);
    }

    /// The m-th root with unit of the form s*zeta^j; fails when none exists
    /// in the coefficient field.
    Monomial root(unsigned m) const {
        require_finite("root");
        auto u = unit.root(m);
        if (!u) {
            throw DomainError("no " + std::to_string(m) + "-th root of " + unit.str() + " in Q(zeta_12)");
        }
        return Monomial(*u, exp / static_cast<std::int64_t>(m));
    }

    Monomial scaled_exponent(Exponent c) const {
        require_finite("exponent scaling");
        return Monomial(unit, exp * c);
    }

    std::string str() const {
        if (infinite) {
            return "inf";
        }
        if (exp == Exponent(0)) {
            return unit.tag();
        }
        std::string q = "q^(" + to_string(exp) + ")";
        if (unit.is_one()) {
            return q;
        }
        if (unit.is_minus_one()) {
            return "-" + q;
        }
        return (unit.is_rational() ? unit.tag() : "(" + unit.tag() + ")") + "*" + q;
    }

  private:
    void require_finite(const char* what) const {
        if (infinite) {
            throw DomainError(std::string(what) + " of an infinite parameter");
        }
    }
};

inline std::ostream& operator<<(std::ostream& os, const Monomial& m) { return os << m.str(); }

namespace detail {

inline Monomial parse_q_power(std::string_view s) {
    // s starts with 'q'
    s.remove_prefix(1);
    s = trim(s);
    if (s.empty()) {
        return Monomial::q_pow(1);
    }
    if (s[0] != '^') {
        throw ParseError("expected '^' after q");
    }
    s = trim(s.substr(1));
    if (!s.empty() && s.front() == '(') {
        if (s.back() != ')') {
            throw ParseError("unbalanced parenthesis in exponent");
        }
        s = s.substr(1, s.size() - 2);
    }
    return Monomial::q_pow(parse_exponent(s));
}

} // namespace detail

/// Parses "c*q^(p/r)", "q", "-q^2", "i*q", "3", "omega", or "inf".
inline Monomial parse_monomial(std::string_view text) {
    auto s = detail::trim(text);
    if (s == "inf" || s == "INFINITY" || s == "infinity") {
        return Monomial::infinity();
    }
    if (s.empty()) {
        throw ParseError("empty monomial");
    }
    Monomial result;
    bool negate = false;
    if (s.front() == '-') {
        auto rest = detail::trim(s.substr(1));
        if (!rest.empty() && (rest.front() == 'q' || rest.front() == 'i' || rest.front() == 'o' || rest.front() == 'z')) {
            negate = true;
            s = rest;
        }
    }
    // split on '*' outside parentheses
    int depth = 0;
    std::size_t start = 0;
    auto take = [&](std::string_view tok) {
        tok = detail::trim(tok);
        if (tok.empty()) {
            throw ParseError("empty factor in monomial '" + std::string(text) + "'");
        }
        if (tok.front() == 'q') {
            result = result * detail::parse_q_power(tok);
        } else {
            result = result * Monomial::constant(parse_cyclo(tok));
        }
    };
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == '(') {
            ++depth;
        } else if (s[k] == ')') {
            --depth;
        } else if (s[k] == '*' && depth == 0) {
            take(s.substr(start, k - start));
            start = k + 1;
        }
    }
    take(s.substr(start));
    return negate ? -result : result;
}

} // namespace qbailey
