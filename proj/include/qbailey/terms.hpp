#pragma once

// Summands of single and double q-series: a monomial part with a quadratic
// q-exponent in the summation indices, and a product of finite Pochhammer
// symbols whose lengths are linear in those indices.

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbailey/monomial.hpp"
#include "qbailey/qproducts.hpp"

namespace qbailey {

struct LinearForm {
    std::int64_t n = 0;
    std::int64_t r = 0;
    std::int64_t c = 0;

    std::int64_t operator()(std::int64_t nv, std::int64_t rv) const { return n * nv + r * rv + c; }
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// A n^2 + B n r + C r^2 + D n + E r + F.
struct QuadForm {
    Exponent A{0}, B{0}, C{0}, D{0}, E{0}, F{0};

    Exponent operator()(std::int64_t n, std::int64_t r) const {
        return A * (n * n) + B * (n * r) + C * (r * r) + D * n + E * r + F;
    }
    friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

/// unit^power(n, r), e.g. (-1)^(n+r) or i^n.
struct UnitPower {
    Cyclo unit{1};
    LinearForm power;
};

/// (a^a_power base_unit q^base_exp ; step_unit q^step_exp)_length ^ power.
struct TermPoch {
    int a_power = 0;
    Cyclo base_unit{1};
    Exponent base_exp{0};
    Cyclo step_unit{1};
    Exponent step_exp{1};
    LinearForm length;
    int power = 1;
};

struct TermSpec {
    int indices = 2;
    std::vector<UnitPower> units;
    QuadForm q_exponent;
    LinearForm a_power;
    std::vector<TermPoch> factors;
};

namespace detail {

/// Splits "3n-r+1" style sums into signed terms.
inline std::vector<std::string> signed_terms(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == ' ') {
            continue;
        }
        if (ch == '(' || ch == '{') {
            ++depth;
        } else if (ch == ')' || ch == '}') {
            --depth;
        }
        if ((ch == '+' || ch == '-') && depth == 0 && !cur.empty() && cur.back() != '^') {
            out.push_back(cur);
            cur.clear();
        }
        cur += ch;
    }
    if (!cur.empty()) {
        out.push_back(cur);
    }
    return out;
}

/// Splits "5/2n^2" into the rational coefficient and the monomial "n^2".
inline std::pair<Exponent, std::string> split_coefficient(const std::string& term) {
    std::size_t k = 0;
    while (k < term.size() && (std::isdigit(static_cast<unsigned char>(term[k])) || term[k] == '/' || term[k] == '+' ||
                               term[k] == '-')) {
        ++k;
    }
    std::string num = term.substr(0, k);
    std::string var = term.substr(k);
    if (num.empty() || num == "+") {
        num = "1";
    } else if (num == "-") {
        num = "-1";
    } else if (num[0] == '+') {
        num = num.substr(1);
    }
    return {parse_exponent(num), var};
}

} // namespace detail

/// Parses "2n+r-1", "n-2r", "3" into a LinearForm.
inline LinearForm parse_linear_form(std::string_view text) {
    LinearForm f;
    for (const auto& term : detail::signed_terms(text)) {
        auto [c, var] = detail::split_coefficient(term);
        if (!is_integer(c)) {
            throw ParseError("non-integer coefficient in index expression '" + std::string(text) + "'");
        }
        std::int64_t v = c.numerator();
        if (var.empty()) {
            f.c += v;
        } else if (var == "n") {
            f.n += v;
        } else if (var == "r") {
            f.r += v;
        } else {
            throw ParseError("unknown index '" + var + "' in '" + std::string(text) + "'");
        }
    }
    return f;
}

/// Parses "5/2n^2-1/2n+4nr+2r^2" into a QuadForm.
inline QuadForm parse_quad_form(std::string_view text) {
    QuadForm f;
    for (const auto& term : detail::signed_terms(text)) {
        auto [c, var] = detail::split_coefficient(term);
        if (var.empty()) {
            f.F += c;
        } else if (var == "n^2") {
            f.A += c;
        } else if (var == "nr" || var == "rn") {
            f.B += c;
        } else if (var == "r^2") {
            f.C += c;
        } else if (var == "n") {
            f.D += c;
        } else if (var == "r") {
            f.E += c;
        } else {
            throw ParseError("unknown monomial '" + var + "' in '" + std::string(text) + "'");
        }
    }
    return f;
}

/// Parses a Pochhammer symbol written like "(-aq;q)_{n+r}", "(iaq;q)_{2n}^2",
/// "(a^3q^3;q^3)_{n+r}" or "(q;q)_n". The base may carry a sign, i or omega,
/// a power of a, and a power of q.
inline TermPoch parse_term_poch(std::string_view text, int sign = 1) {
    auto s = detail::trim(text);
    if (s.empty() || s.front() != '(') {
        throw ParseError("Pochhammer symbol must start with '(': " + std::string(text));
    }
    auto close = s.find(')');
    auto semi = s.find(';');
    if (close == std::string_view::npos || semi == std::string_view::npos || semi > close) {
        throw ParseError("malformed Pochhammer symbol: " + std::string(text));
    }
    std::string base(detail::trim(s.substr(1, semi - 1)));
    auto step = parse_monomial(s.substr(semi + 1, close - semi - 1));
    auto rest = detail::trim(s.substr(close + 1));
    if (rest.empty() || rest.front() != '_') {
        throw ParseError("Pochhammer symbol needs a length: " + std::string(text));
    }
    rest.remove_prefix(1);
    int power = 1;
    std::string len;
    if (!rest.empty() && rest.front() == '{') {
        auto end = rest.find('}');
        if (end == std::string_view::npos) {
            throw ParseError("unbalanced brace in " + std::string(text));
        }
        len = rest.substr(1, end - 1);
        rest = detail::trim(rest.substr(end + 1));
    } else {
        len = rest.substr(0, 1);
        rest = detail::trim(rest.substr(1));
    }
    if (!rest.empty()) {
        if (rest.front() != '^') {
            throw ParseError("unexpected trailing text in " + std::string(text));
        }
        power = static_cast<int>(detail::parse_int(rest.substr(1), "Pochhammer power"));
    }
    TermPoch f;
    f.step_unit = step.unit;
    f.step_exp = step.exp;
    f.length = parse_linear_form(len);
    f.power = power * sign;
    // base: [-][i|omega][a[^k]][q[^x]] or a plain constant
    std::string_view b = base;
    Cyclo unit(1);
    if (!b.empty() && b.front() == '-') {
        unit = -unit;
        b.remove_prefix(1);
    }
    if (b.starts_with("omega")) {
        unit = unit * Cyclo::omega();
        b.remove_prefix(5);
    } else if (b.starts_with("i")) {
        unit = unit * Cyclo::i();
        b.remove_prefix(1);
    }
    if (b.starts_with("a")) {
        b.remove_prefix(1);
        f.a_power = 1;
        if (b.starts_with("^")) {
            std::size_t k = 1;
            while (k < b.size() && std::isdigit(static_cast<unsigned char>(b[k]))) {
                ++k;
            }
            f.a_power = static_cast<int>(detail::parse_int(b.substr(1, k - 1), "power of a"));
            b.remove_prefix(k);
        }
    }
    if (b.empty()) {
        f.base_unit = unit;
        f.base_exp = 0;
    } else if (b.front() == 'q') {
        auto m = detail::parse_q_power(b);
        f.base_unit = unit;
        f.base_exp = m.exp;
    } else if (f.a_power == 0) {
        f.base_unit = unit * parse_cyclo(b);
    } else {
        throw ParseError("cannot read Pochhammer base '" + base + "'");
    }
    return f;
}

/// Collects the factors of the (n, r) summand with the symbol a set to `a`.
inline FactorBag term_bag(const TermSpec& t, const Monomial& a, std::int64_t n, std::int64_t r) {
    FactorBag bag;
    for (const auto& u : t.units) {
        auto p = u.power(n, r);
        if (p != 0) {
            bag.mul_monomial(u.unit.pow(p), Exponent(0));
        }
    }
    bag.mul_monomial(Cyclo(1), t.q_exponent(n, r));
    if (auto p = t.a_power(n, r); p != 0) {
        Monomial ap = a.pow(p);
        bag.mul_monomial(ap.unit, ap.exp);
    }
    for (const auto& f : t.factors) {
        Monomial base = a.pow(f.a_power) * Monomial(f.base_unit, f.base_exp);
        bag.add_pochhammer(PochFactor::finite(base.unit, base.exp, f.step_unit, f.step_exp, f.length(n, r), f.power));
    }
    return bag;
}

/// The (n, r) summand modulo q^T; zero when a numerator factor vanishes.
inline QSeries term_eval(const TermSpec& t, const Monomial& a, std::int64_t n, std::int64_t r, Exponent T) {
    FactorBag bag = term_bag(t, a, n, r);
    if (bag.zero_divisor()) {
        throw DivisionByZero("summand at (n, r) = (" + std::to_string(n) + ", " + std::to_string(r) +
                             ") has a vanishing denominator");
    }
    return bag.evaluate(T);
}

/// Strict copositivity of the quadratic part on the quadrant n, r >= 0, which
/// makes every sublevel set {Q < T} finite.
inline bool coercive(const TermSpec& t) {
    const auto& q = t.q_exponent;
    if (!(q.A > 0)) {
        return false;
    }
    if (t.indices == 1) {
        return true;
    }
    return q.C > 0 && (q.B >= 0 || q.B * q.B < 4 * q.A * q.C);
}

namespace detail {

/// Lower bound for min over real r >= 0 of Q(n, r).
inline Exponent section_min(const QuadForm& q, std::int64_t n) {
    Exponent lin = q.B * n + q.E;
    Exponent at0 = q(n, 0);
    if (lin >= 0) {
        return at0;
    }
    return at0 - lin * lin / (4 * q.C);
}

/// First index from which the real minimiser of the r-section is constant in
/// its formula and the section minimum is increasing in n.
inline std::int64_t section_stable_from(const QuadForm& q) {
    // switch point where B n + E changes sign
    Exponent sw = q.B == Exponent(0) ? Exponent(0) : -q.E / q.B;
    std::int64_t start = std::max<std::int64_t>(0, ceil(sw));
    // final regime quadratic a2 n^2 + a1 n + ...
    Exponent a2 = q.A;
    Exponent a1 = q.D;
    if (q.B < 0 || (q.B == Exponent(0) && q.E < 0)) {
        a2 -= q.B * q.B / (4 * q.C);
        a1 -= q.B * q.E / (2 * q.C);
    }
    if (!(a2 > 0)) {
        throw DomainError("quadratic exponent is not coercive");
    }
    return std::max(start, ceil(-a1 / (2 * a2)) + 1);
}

} // namespace detail

/// Sum of the term over all index points with Q(n, r) < T. Sound because every
/// summand has valuation at least Q(n, r); a summand violating that bound is
/// reported instead of silently dropped.
inline QSeries sum_lhs(const TermSpec& t, Exponent T, const Monomial& a = Monomial()) {
    if (!coercive(t)) {
        throw DomainError("summand exponent is not coercive");
    }
    const auto& q = t.q_exponent;
    QSeries acc(T);
    auto add_point = [&](std::int64_t n, std::int64_t r) {
        FactorBag bag = term_bag(t, a, n, r);
        if (bag.vanishes()) {
            return;
        }
        if (bag.zero_divisor()) {
            throw DivisionByZero("summand at (n, r) = (" + std::to_string(n) + ", " + std::to_string(r) +
                                 ") has a vanishing denominator");
        }
        if (bag.valuation() < q(n, r)) {
            throw DomainError("summand at (n, r) = (" + std::to_string(n) + ", " + std::to_string(r) +
                              ") has valuation below its quadratic exponent");
        }
        acc += bag.evaluate(T);
    };
    if (t.indices == 1) {
        std::int64_t vertex = std::max<std::int64_t>(0, ceil(-q.D / (2 * q.A)));
        for (std::int64_t n = 0;; ++n) {
            Exponent v = q(n, 0);
            if (v >= T) {
                if (n >= vertex) {
                    break;
                }
                continue;
            }
            add_point(n, 0);
        }
        return acc;
    }
    std::int64_t n_stable = detail::section_stable_from(q);
    for (std::int64_t n = 0;; ++n) {
        if (detail::section_min(q, n) >= T) {
            if (n >= n_stable) {
                break;
            }
            continue;
        }
        Exponent lin = q.B * n + q.E;
        std::int64_t r_vertex = lin >= 0 ? 0 : ceil(-lin / (2 * q.C));
        for (std::int64_t r = 0;; ++r) {
            if (q(n, r) >= T) {
                if (r >= r_vertex) {
                    break;
                }
                continue;
            }
            add_point(n, r);
        }
    }
    return acc;
}

} // namespace qbailey
