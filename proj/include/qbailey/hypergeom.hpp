#pragma once

// Basic hypergeometric series p+1 phi p, the very-well-poised abbreviation W,
// and checks of six classical transformation formulas at monomial
// specializations of their parameters.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "qbailey/error.hpp"
#include "qbailey/monomial.hpp"
#include "qbailey/qproducts.hpp"
#include "qbailey/qseries.hpp"

namespace qbailey {

inline constexpr std::int64_t default_max_terms = 10000;

struct PhiSpec {
    std::vector<Monomial> upper;
    std::vector<Monomial> lower;
    Monomial base = Monomial::q_pow(1);
    Monomial argument = Monomial::q_pow(1);
};

struct WSpec {
    Monomial a;
    std::vector<Monomial> tail;
    Monomial base = Monomial::q_pow(1);
    Monomial argument = Monomial::q_pow(1);
};

namespace detail {

inline void require_finite(const Monomial& m, const char* where) {
    if (m.infinite) {
        throw DomainError(std::string("infinite parameter in ") + where);
    }
}

/// Index j >= 0 at which (p; base)_r picks up an exactly vanishing factor.
inline std::optional<std::int64_t> vanishing_index(const Monomial& p, const Monomial& base) {
    if (p.is_zero()) {
        return std::nullopt;
    }
    Exponent j = -p.exp / base.exp;
    if (j < 0 || !is_integer(j)) {
        return std::nullopt;
    }
    std::int64_t jj = j.numerator();
    if ((p.unit * base.unit.pow(jj)).is_one()) {
        return jj;
    }
    return std::nullopt;
}

/// First index from which every factor (1 - p base^j) has positive exponent.
inline std::int64_t positivity_index(const Monomial& p, const Monomial& base) {
    Exponent j = -p.exp / base.exp;
    return std::max<std::int64_t>(0, floor(j) + 1);
}

} // namespace detail

/// Sums the series term by term. A terminating series (some upper parameter
/// is a unit multiple of base^-j that makes a factor vanish) is summed through
/// r = j; otherwise summation stops once the term valuation has passed T and
/// can only grow.
inline QSeries phi_eval(const PhiSpec& s, Exponent T, std::int64_t max_terms = default_max_terms) {
    for (const auto& p : s.upper) {
        detail::require_finite(p, "phi upper parameters");
    }
    for (const auto& p : s.lower) {
        detail::require_finite(p, "phi lower parameters");
    }
    detail::require_finite(s.base, "phi base");
    detail::require_finite(s.argument, "phi argument");
    if (s.base.exp <= 0 || s.base.is_zero()) {
        throw DomainError("phi base must have a positive exponent");
    }
    // a terminating series stops at its first vanishing upper factor even if
    // a lower parameter vanishes at the same index
    std::optional<std::int64_t> last;
    std::int64_t r0 = 0;
    for (const auto& p : s.upper) {
        if (auto j = detail::vanishing_index(p, s.base)) {
            last = last ? std::min(*last, *j) : *j;
        }
        r0 = std::max(r0, detail::positivity_index(p, s.base));
    }
    for (const auto& p : s.lower) {
        r0 = std::max(r0, detail::positivity_index(p, s.base));
    }
    bool terminating = last.has_value();
    if (!terminating && s.argument.exp <= 0) {
        throw DomainError("non-terminating phi series with argument exponent " + to_string(s.argument.exp) +
                          " does not converge q-adically");
    }

    QSeries acc(T);
    FactorBag bag;
    Cyclo base_pow(1);  // base.unit^r
    for (std::int64_t r = 0;; ++r) {
        if (bag.zero_divisor()) {
            throw DivisionByZero("phi series: lower parameter gives a vanishing denominator at term " +
                                 std::to_string(r));
        }
        if (bag.vanishes()) {
            break;
        }
        Exponent val = bag.valuation();
        if (val < T) {
            acc += bag.evaluate(T);
        } else if (r >= r0 && !terminating) {
            break;
        }
        if (terminating && r == *last) {
            break;
        }
        if (r + 1 >= max_terms) {
            throw DomainError("phi series did not finish within " + std::to_string(max_terms) + " terms");
        }
        for (const auto& p : s.upper) {
            bag.add_binomial(p.unit * base_pow, p.exp + s.base.exp * r, 1);
        }
        for (const auto& p : s.lower) {
            bag.add_binomial(p.unit * base_pow, p.exp + s.base.exp * r, -1);
        }
        base_pow = base_pow * s.base.unit;
        bag.add_binomial(base_pow, s.base.exp * (r + 1), -1);
        bag.mul_monomial(s.argument.unit, s.argument.exp);
    }
    return acc;
}

/// Exact valuations of the first `count` terms (a vanishing term reports
/// nullopt).
inline std::vector<std::optional<Exponent>> phi_term_valuations(const PhiSpec& s, std::int64_t count) {
    std::vector<std::optional<Exponent>> out;
    FactorBag bag;
    Cyclo base_pow(1);
    for (std::int64_t r = 0; r < count; ++r) {
        if (bag.zero_divisor()) {
            throw DivisionByZero("phi series: vanishing denominator at term " + std::to_string(r));
        }
        out.push_back(bag.vanishes() ? std::nullopt : std::optional<Exponent>(bag.valuation()));
        for (const auto& p : s.upper) {
            bag.add_binomial(p.unit * base_pow, p.exp + s.base.exp * r, 1);
        }
        for (const auto& p : s.lower) {
            bag.add_binomial(p.unit * base_pow, p.exp + s.base.exp * r, -1);
        }
        base_pow = base_pow * s.base.unit;
        bag.add_binomial(base_pow, s.base.exp * (r + 1), -1);
        bag.mul_monomial(s.argument.unit, s.argument.exp);
    }
    return out;
}

/// Definitional rewrite of the very-well-poised abbreviation.
inline PhiSpec w_expand(const WSpec& w) {
    detail::require_finite(w.a, "W parameter a");
    Monomial sa = w.a.root(2);
    PhiSpec s;
    s.base = w.base;
    s.argument = w.argument;
    s.upper = {w.a, w.base * sa, -(w.base * sa)};
    s.lower = {sa, -sa};
    for (const auto& t : w.tail) {
        s.upper.push_back(t);
        s.lower.push_back(w.a * w.base / t);
    }
    return s;
}

inline QSeries w_eval(const WSpec& w, Exponent T, std::int64_t max_terms = default_max_terms) {
    return phi_eval(w_expand(w), T, max_terms);
}

/// t = ed + |2k - ed - 2d + 1| + 2.
inline long vwp_order(long d, long e, long k) {
    if (d < 1 || e < 1 || k < 1) {
        throw DomainError("vwp_order needs positive d, e, k");
    }
    return e * d + std::labs(2 * k - e * d - 2 * d + 1) + 2;
}

/// Product of finite Pochhammer symbols with a common base and length.
inline QSeries poch_quotient(const std::vector<Monomial>& num, const std::vector<Monomial>& den, const Monomial& base,
                             std::optional<std::int64_t> length, Exponent T) {
    FactorBag bag;
    auto add = [&](const Monomial& m, int power) {
        if (length) {
            bag.add_pochhammer(PochFactor::finite(m.unit, m.exp, base.unit, base.exp, *length, power));
        } else {
            bag.add_infinite(PochFactor::infinite(m.unit, m.exp, base.unit, base.exp, power), T);
        }
    };
    for (const auto& m : num) {
        add(m, 1);
    }
    for (const auto& m : den) {
        add(m, -1);
    }
    return bag.evaluate(T);
}

using Assignment = std::map<std::string, Monomial>;

struct TransformReport {
    std::string id;
    Comparison comparison;
    QSeries lhs;
    QSeries rhs;
    bool equal() const { return comparison.equal; }
};

inline const std::vector<std::string>& transformation_ids() {
    static const std::vector<std::string> ids = {"WQW", "VJ1", "VJ2", "VJ3", "VJ4", "VWP87"};
    return ids;
}

/// Parameter names each transformation needs (besides n).
inline std::vector<std::string> transformation_parameters(const std::string& id) {
    if (id == "WQW") {
        return {"a", "b", "c", "d", "e"};
    }
    if (id == "VJ1" || id == "VJ2") {
        return {"a", "b", "x", "y"};
    }
    if (id == "VJ3" || id == "VJ4" || id == "VWP87") {
        return {"a", "x", "y"};
    }
    throw DomainError("unknown transformation '" + id + "'");
}

inline bool transformation_terminates(const std::string& id) { return id != "VWP87"; }

struct TransformSample {
    Assignment assignment;
    std::int64_t n = 0;
};

/// Three checked assignments per transformation; the VJ3/VJ4 ones make the
/// omega parts cancel.
inline const std::vector<TransformSample>& transformation_samples(const std::string& id) {
    static const std::map<std::string, std::vector<TransformSample>> table = [] {
        auto M = [](const char* s) { return parse_monomial(s); };
        std::map<std::string, std::vector<TransformSample>> t;
        t["WQW"] = {{{{"a", M("q^4")}, {"b", M("q")}, {"c", M("q^2")}, {"d", M("q^3")}, {"e", M("q")}}, 3},
                    {{{"a", M("4*q^2")}, {"b", M("3*q")}, {"c", M("1/2*q^2")}, {"d", M("2*q^3")}, {"e", M("-q")}}, 4},
                    {{{"a", M("9*q^(3/2)")}, {"b", M("-2*q")}, {"c", M("i*q")}, {"d", M("3*q^2")}, {"e", M("1/3*q^(1/2)")}},
                     5}};
        t["VJ1"] = {{{{"a", M("4*q^2")}, {"b", M("3*q")}, {"x", M("2*q")}, {"y", M("1/3*q^2")}}, 3},
                    {{{"a", M("q^4")}, {"b", M("q")}, {"x", M("3*q^2")}, {"y", M("q")}}, 2},
                    {{{"a", M("9*q^3")}, {"b", M("-2*q^2")}, {"x", M("i*q")}, {"y", M("5*q")}}, 6}};
        t["VJ2"] = {{{{"a", M("4*q^2")}, {"b", M("q")}, {"x", M("2*q")}, {"y", M("3*q^2")}}, 3},
                    {{{"a", M("q^5")}, {"b", M("4*q^2")}, {"x", M("q")}, {"y", M("-q")}}, 4},
                    {{{"a", M("9*q")}, {"b", M("q^2")}, {"x", M("1/2*q^3")}, {"y", M("3*q")}}, 6}};
        t["VJ3"] = {{{{"a", M("q^6")}, {"x", M("q")}, {"y", M("q^2")}}, 2},
                    {{{"a", M("4*q^4")}, {"x", M("2*q")}, {"y", M("3*q")}}, 3},
                    {{{"a", M("9*q^2")}, {"x", M("1/2*q^2")}, {"y", M("q")}}, 5}};
        t["VJ4"] = {{{{"a", M("64*q^6")}, {"x", M("2*q")}, {"y", M("3*q^2")}}, 3},
                    {{{"a", M("q^6")}, {"x", M("q")}, {"y", M("5*q")}}, 2},
                    {{{"a", M("729*q^12")}, {"x", M("-q^2")}, {"y", M("1/3*q")}}, 6}};
        t["VWP87"] = {{{{"a", M("4*q^4")}, {"x", M("2*q")}, {"y", M("9*q^2")}}, 0},
                      {{{"a", M("q^6")}, {"x", M("q")}, {"y", M("q^2")}}, 0},
                      {{{"a", M("q^5")}, {"x", M("-q^2")}, {"y", M("4*q")}}, 0}};
        return t;
    }();
    auto it = table.find(id);
    if (it == table.end()) {
        throw DomainError("unknown transformation '" + id + "'");
    }
    return it->second;
}

namespace detail {

inline const Monomial& param(const Assignment& m, const std::string& key, const std::string& id) {
    auto it = m.find(key);
    if (it == m.end()) {
        throw DomainError(id + ": assignment is missing parameter '" + key + "'");
    }
    if (it->second.infinite || it->second.is_zero()) {
        throw DomainError(id + ": parameter '" + key + "' must be a nonzero finite monomial");
    }
    return it->second;
}

inline QSeries transformation_side(const std::string& id, const Assignment& p, std::int64_t n, bool left, Exponent T) {
    const Monomial q = Monomial::q_pow(1);
    const Monomial one = Monomial::constant(Cyclo(1));
    const Monomial w = Monomial::constant(Cyclo::omega());
    const Monomial w2 = Monomial::constant(Cyclo::omega() * Cyclo::omega());
    auto P = [&](const char* k) { return param(p, k, id); };
    Monomial qn = q.pow(-n);

    if (id == "WQW") {
        auto a = P("a"), b = P("b"), c = P("c"), d = P("d"), e = P("e");
        if (left) {
            return w_eval({a, {b, c, d, e, qn}, q, a.pow(2) * q.pow(n + 2) / (b * c * d * e)}, T);
        }
        auto pre = poch_quotient({a * q, a * q / (d * e)}, {a * q / d, a * q / e}, q, n, T);
        PhiSpec s{{a * q / (b * c), d, e, qn}, {a * q / b, a * q / c, d * e * qn / a}, q, q};
        return pre * phi_eval(s, T);
    }
    if (id == "VJ1") {
        auto a = P("a"), b = P("b"), x = P("x"), y = P("y");
        Monomial q2 = q.pow(2);
        if (left) {
            return w_eval({a, {b, x, -x, y, -y, qn, -qn}, q, -(a.pow(3) * q.pow(2 * n + 3) / (b * x.pow(2) * y.pow(2)))},
                          T);
        }
        Monomial a2q2 = a.pow(2) * q2;
        auto pre = poch_quotient({a2q2, a2q2 / (x.pow(2) * y.pow(2))}, {a2q2 / x.pow(2), a2q2 / y.pow(2)}, q2, n, T);
        PhiSpec s{{q.pow(-2 * n), x.pow(2), y.pow(2), -(a * q / b), -(a * q2 / b)},
                  {x.pow(2) * y.pow(2) * q.pow(-2 * n) / a.pow(2), a2q2 / b.pow(2), -(a * q), -(a * q2)},
                  q2,
                  q2};
        return pre * phi_eval(s, T);
    }
    if (id == "VJ2") {
        auto a = P("a"), b = P("b"), x = P("x"), y = P("y");
        if (left) {
            // the W side runs in base q^2; with base q the identity fails
            return w_eval({a, {b, x, x * q, y, y * q, q.pow(1 - n), qn}, q.pow(2),
                           a.pow(3) * q.pow(2 * n + 3) / (b * x.pow(2) * y.pow(2))},
                          T);
        }
        auto pre = poch_quotient({a * q, a * q / (x * y)}, {a * q / x, a * q / y}, q, n, T);
        Monomial s1 = (a * q / b).root(2);
        Monomial s2 = (a * q).root(2);
        PhiSpec s{{x, y, s1, -s1, qn}, {s2, -s2, a * q / b, x * y * qn / a}, q, q};
        return pre * phi_eval(s, T);
    }
    if (id == "VJ3") {
        auto a = P("a"), x = P("x"), y = P("y");
        Monomial q3 = q.pow(3);
        if (left) {
            // positive argument; the negated one does not give an identity
            return w_eval({a, {x, w * x, w2 * x, y, w * y, w2 * y, qn, w * qn, w2 * qn}, q,
                           a.pow(4) * q.pow(3 * n + 4) / (x.pow(3) * y.pow(3))},
                          T);
        }
        Monomial a3q3 = a.pow(3) * q3;
        auto pre = poch_quotient({a3q3, a3q3 / (x.pow(3) * y.pow(3))}, {a3q3 / x.pow(3), a3q3 / y.pow(3)}, q3, n, T);
        Monomial aq32 = (a * q).root(2).pow(3);
        Monomial a32q3 = a.root(2).pow(3) * q3;
        PhiSpec s{{q.pow(-3 * n), x.pow(3), y.pow(3), a * q, a * q.pow(2), a * q3},
                  {aq32, -aq32, a32q3, -a32q3, x.pow(3) * y.pow(3) * q.pow(-3 * n) / a.pow(3)},
                  q3,
                  q3};
        return pre * phi_eval(s, T);
    }
    if (id == "VJ4") {
        auto a = P("a"), x = P("x"), y = P("y");
        if (left) {
            // the W side runs in base q^3
            return w_eval({a, {x, x * q, x * q.pow(2), y, y * q, y * q.pow(2), q.pow(2 - n), q.pow(1 - n), qn}, q.pow(3),
                           a.pow(4) * q.pow(3 * n + 3) / (x.pow(3) * y.pow(3))},
                          T);
        }
        auto pre = poch_quotient({a * q, a * q / (x * y)}, {a * q / x, a * q / y}, q, n, T);
        Monomial c = a.root(3);
        Monomial s1 = a.root(2);
        Monomial s2 = (a * q).root(2);
        PhiSpec s{{c, w * c, w2 * c, x, y, qn}, {s1, -s1, s2, -s2, x * y * qn / a}, q, q};
        return pre * phi_eval(s, T);
    }
    if (id == "VWP87") {
        auto a = P("a"), x = P("x"), y = P("y");
        Monomial z = a.pow(2) * q / (y.pow(2) * x);
        if (left) {
            Monomial sy = y.root(2);
            Monomial syq = (y * q).root(2);
            return w_eval({a, {sy, -sy, syq, -syq, x}, q, z}, T);
        }
        auto pre = poch_quotient({a * q, a.pow(2) * q / y.pow(2)}, {a * q / y, a.pow(2) * q / y}, q, std::nullopt, T);
        PhiSpec s{{y, x * y / a}, {a * q / x}, q, z};
        return pre * phi_eval(s, T);
    }
    throw DomainError("unknown transformation '" + id + "'");
}

} // namespace detail

/// Evaluates both sides of transformation `id` and compares them below T.
/// Entries of `rhs_override` replace assignment values on the right side only.
inline TransformReport verify_transformation(const std::string& id, const Assignment& assignment, std::int64_t n,
                                             Exponent T, const Assignment& rhs_override = {}) {
    transformation_parameters(id);  // rejects unknown ids
    if (transformation_terminates(id) && n < 0) {
        throw DomainError(id + " needs n >= 0");
    }
    Assignment right = assignment;
    for (const auto& [k, v] : rhs_override) {
        right[k] = v;
    }
    // prefactors with negative valuation cost precision in the product, so
    // work at a raised order until both sides are known to T
    auto side = [&](const Assignment& p, bool left) {
        Exponent work = T;
        while (true) {
            QSeries s = detail::transformation_side(id, p, n, left, work);
            if (s.order() >= T) {
                return s.truncated(T);
            }
            work += T - s.order();
        }
    };
    TransformReport rep;
    rep.id = id;
    rep.lhs = side(assignment, true);
    rep.rhs = side(right, false);
    rep.comparison = equal_to_order(rep.lhs, rep.rhs, T);
    return rep;
}

} // namespace qbailey
