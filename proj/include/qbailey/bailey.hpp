#pragma once

// The multiparameter Bailey pair (d, e, k): alpha, the definitional beta, the
// closed-form beta sums, the Bailey transform, and the Bailey lemma with its
// limiting cases.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbailey/monomial.hpp"
#include "qbailey/qproducts.hpp"
#include "qbailey/terms.hpp"

namespace qbailey {

/// b empty means b -> 0; an infinite monomial means b -> infinity.
struct BaileyPairSpec {
    long d = 1;
    long e = 1;
    long k = 1;
    Monomial a;
    std::optional<Monomial> b;
};

namespace detail {

inline void require_dek(long d, long e, long k) {
    if (d < 1 || e < 1 || k < 1) {
        throw DomainError("(d, e, k) must be positive");
    }
}

inline void add_poch(FactorBag& bag, const Monomial& base, const Monomial& step, std::int64_t n, int power = 1) {
    bag.add_pochhammer(PochFactor::finite(base.unit, base.exp, step.unit, step.exp, n, power));
}

/// (a q^2d; q^2d)_r (a; q^d)_r / ((a; q^2d)_r (q^d; q^d)_r), with the j = 0
/// factors of the two a-symbols cancelled so that a = 1 is regular.
inline void add_alpha_ratio(FactorBag& bag, const Monomial& a, long d, std::int64_t r) {
    Monomial qd = Monomial::q_pow(d);
    Monomial q2d = Monomial::q_pow(2 * d);
    add_poch(bag, a * q2d, q2d, r);
    if (r > 1) {
        add_poch(bag, a * qd, qd, r - 1);
        add_poch(bag, a * q2d, q2d, r - 1, -1);
    }
    add_poch(bag, qd, qd, r, -1);
}

} // namespace detail

/// Factors of alpha_{dr}(a^e, b^e, q^e), written in a and q.
inline FactorBag alpha_bag(const BaileyPairSpec& p, std::int64_t r) {
    detail::require_dek(p.d, p.e, p.k);
    const long d = p.d;
    const long k = p.k;
    FactorBag bag;
    detail::add_alpha_ratio(bag, p.a, d, r);
    if (!p.b) {
        // (-1)^r a^((k-d) r) q^((dk - d^2 + d/2) r^2 - (d/2) r)
        Monomial m = p.a.pow((k - d) * r);
        bag.mul_monomial(r % 2 == 0 ? m.unit : -m.unit,
                         m.exp + Exponent(2 * d * k - 2 * d * d + d, 2) * (r * r) - Exponent(d, 2) * r);
        return bag;
    }
    Monomial m = p.a.pow((k - d + 1) * r);
    Exponent qe = Exponent((k - d + 1) * d) * (r * r);
    if (p.b->infinite) {
        // (b; q^d)_r / (b^r (a q^d / b; q^d)_r) -> (-1)^r q^(d r(r-1)/2)
        bag.mul_monomial(r % 2 == 0 ? m.unit : -m.unit, m.exp + qe + Exponent(d * r * (r - 1), 2));
        return bag;
    }
    const Monomial& b = *p.b;
    Monomial qd = Monomial::q_pow(d);
    bag.mul_monomial(m.unit, m.exp + qe);
    Monomial binv = b.pow(-r);
    bag.mul_monomial(binv.unit, binv.exp);
    detail::add_poch(bag, b, qd, r);
    detail::add_poch(bag, p.a * qd / b, qd, r, -1);
    return bag;
}

/// alpha_n of the pair modulo q^T; zero unless d divides n.
inline QSeries smpbp_alpha(const BaileyPairSpec& p, std::int64_t n, Exponent T) {
    if (n < 0) {
        throw DomainError("alpha index must be nonnegative");
    }
    if (n % p.d != 0) {
        return QSeries(T);
    }
    FactorBag bag = alpha_bag(p, n / p.d);
    if (bag.zero_divisor()) {
        throw DivisionByZero("alpha has a vanishing denominator at n = " + std::to_string(n));
    }
    return bag.evaluate(T);
}

/// sum_{s<=n} alpha(s) / ((q^e;q^e)_{n-s} (a^e q^e;q^e)_{n+s}).
inline QSeries beta_from_alpha(const std::function<QSeries(std::int64_t)>& alpha, const Monomial& a, long e,
                               std::int64_t n, Exponent T) {
    if (n < 0) {
        throw DomainError("beta index must be nonnegative");
    }
    Monomial qe = Monomial::q_pow(e);
    Monomial aqe = a.pow(e) * qe;
    QSeries acc(T);
    for (std::int64_t s = 0; s <= n; ++s) {
        QSeries al = alpha(s);
        if (al.is_zero()) {
            continue;
        }
        FactorBag den;
        detail::add_poch(den, qe, qe, n - s, -1);
        detail::add_poch(den, aqe, qe, n + s, -1);
        if (den.zero_divisor()) {
            throw DivisionByZero("beta denominator vanishes at n = " + std::to_string(n));
        }
        Exponent v = al.valuation_or_order();
        acc += (al * den.evaluate(T - std::min(Exponent(0), v))).truncated(T);
    }
    return acc;
}

/// The definitional beta_n of the pair, assembled factor by factor.
inline QSeries beta_definition(const BaileyPairSpec& p, std::int64_t n, Exponent T) {
    if (n < 0) {
        throw DomainError("beta index must be nonnegative");
    }
    Monomial qe = Monomial::q_pow(p.e);
    Monomial aqe = p.a.pow(p.e) * qe;
    QSeries acc(T);
    for (std::int64_t r = 0; p.d * r <= n; ++r) {
        FactorBag bag = alpha_bag(p, r);
        detail::add_poch(bag, qe, qe, n - p.d * r, -1);
        detail::add_poch(bag, aqe, qe, n + p.d * r, -1);
        if (bag.zero_divisor()) {
            throw DivisionByZero("beta term has a vanishing denominator at n = " + std::to_string(n));
        }
        acc += bag.evaluate(T);
    }
    return acc;
}

struct PairFormula {
    std::string id;
    long d, e, k;
    TermSpec term;
};

namespace detail {

inline PairFormula pair_formula(std::string id, long d, long e, long k, std::vector<UnitPower> units,
                                std::string_view quad, std::string_view a_power, std::vector<std::string_view> num,
                                std::vector<std::string_view> den) {
    TermSpec t;
    t.units = std::move(units);
    t.q_exponent = parse_quad_form(quad);
    t.a_power = parse_linear_form(a_power);
    for (auto f : num) {
        t.factors.push_back(parse_term_poch(f, 1));
    }
    for (auto f : den) {
        t.factors.push_back(parse_term_poch(f, -1));
    }
    return PairFormula{std::move(id), d, e, k, std::move(t)};
}

inline UnitPower sign_power(std::string_view lf) { return UnitPower{Cyclo(-1), parse_linear_form(lf)}; }

} // namespace detail

/// Closed forms of beta_n(a^e, 0, q^e), each as a sum over r of a summand in
/// n and r; prefactors depending only on n sit inside the summand.
inline const std::vector<PairFormula>& pair_formulas() {
    using detail::pair_formula;
    using detail::sign_power;
    static const std::vector<PairFormula> table = {
        pair_formula("BP123", 1, 2, 3, {}, "r^2", "r", {}, {"(-q;q)_n", "(q;q)_r", "(q;q)_{n-r}", "(-aq;q)_{n+r}"}),
        pair_formula("BP124", 1, 2, 4, {}, "2r^2", "2r", {}, {"(-aq;q)_{2r}", "(q^2;q^2)_r", "(q^2;q^2)_{n-r}"}),
        pair_formula("BP131", 1, 3, 1, {sign_power("n+r")}, "-1/2n^2-1/2n+1/2r^2+1/2r-nr", "-n",
                     {"(q;q)_n", "(aq;q)_{n+r}", "(aq;q)_{2n+r}"},
                     {"(q^3;q^3)_n", "(aq;q)_{2n}", "(a^3q^3;q^3)_{n+r}", "(q;q)_r", "(q;q)_{n-r}"}),
        pair_formula("BP133", 1, 3, 3, {}, "r^2", "r", {"(q;q)_n", "(aq;q)_{2n+r}", "(aq;q)_{n+r}"},
                     {"(aq;q)_{2n}", "(q^3;q^3)_n", "(a^3q^3;q^3)_{n+r}", "(q;q)_r", "(q;q)_{n-r}"}),
        pair_formula("BP135", 1, 3, 5, {}, "3r^2", "3r", {"(aq;q)_{3r}"},
                     {"(a^3q^3;q^3)_{2r}", "(q^3;q^3)_r", "(q^3;q^3)_{n-r}"}),
        pair_formula("BP141", 1, 4, 1, {sign_power("n")}, "2n^2+3r^2-4nr", "0", {},
                     {"(-a^2q^2;q^2)_{2n}", "(q^2;q^2)_r", "(-aq;q)_{2r}", "(q^4;q^4)_{n-r}"}),
        pair_formula("BP142", 1, 4, 2,
                     {UnitPower{Cyclo::i(), parse_linear_form("n")}, UnitPower{-Cyclo::i(), parse_linear_form("r")}},
                     "n^2+r^2-2nr", "0", {"(iq;q)_n", "(q;q)_n", "(iaq;q)_{2n+r}"},
                     {"(q^4;q^4)_n", "(iaq;q)_{2n}^2", "(q;q)_r", "(-iaq;q)_{n+r}", "(-aq;q)_{n+r}", "(q;q)_{n-r}",
                      "(iq;q)_{n-r}"}),
        pair_formula("BP143", 1, 4, 3, {}, "r^2", "r", {"(iq;q)_n", "(q;q)_n", "(iaq;q)_{2n+r}"},
                     {"(q^4;q^4)_n", "(iaq;q)_{2n}^2", "(q;q)_r", "(-iaq;q)_{n+r}", "(-aq;q)_{n+r}", "(q;q)_{n-r}",
                      "(iq;q)_{n-r}"}),
        pair_formula("BP144", 1, 4, 4, {}, "2r^2", "2r", {},
                     {"(-a^2q^2;q^2)_{2n}", "(q^2;q^2)_r", "(-aq;q)_{2r}", "(q^4;q^4)_{n-r}"}),
        pair_formula("BP163", 1, 6, 3, {sign_power("r")}, "3r^2", "2r", {"(a^2q^2;q^2)_{3n-r}"},
                     {"(a^6q^6;q^6)_{2n}", "(q^2;q^2)_r", "(-aq;q)_{2r}", "(q^6;q^6)_{n-r}"}),
        pair_formula("BP164", 1, 6, 4, {}, "2r^2", "2r", {"(a^2q^2;q^2)_{3n-r}"},
                     {"(a^6q^6;q^6)_{2n}", "(q^2;q^2)_r", "(-aq;q)_{2r}", "(q^6;q^6)_{n-r}"}),
        pair_formula("BP215", 2, 1, 5, {}, "r^2", "r", {}, {"(q;q)_r", "(aq;q^2)_r", "(q;q)_{n-r}"}),
        pair_formula("BP222", 2, 2, 2, {sign_power("n+r")}, "n^2+3/2r^2-1/2r-2nr", "0", {},
                     {"(-aq;q)_{2n}", "(aq;q^2)_r", "(q;q)_r", "(q^2;q^2)_{n-r}"}),
        pair_formula("BP223", 2, 2, 3, {}, "2nr", "r", {"(aq^2;q^2)_n"},
                     {"(a^2q^2;q^2)_{2n}", "(q^2;q^2)_r", "(q^2;q^2)_{n-r}"}),
        pair_formula("BP224", 2, 2, 4, {}, "2r^2", "r", {"(aq^2;q^2)_n"},
                     {"(a^2q^2;q^2)_{2n}", "(q^2;q^2)_r", "(q^2;q^2)_{n-r}"}),
        pair_formula("BP225", 2, 2, 5, {}, "r^2", "r", {},
                     {"(-aq;q)_{2n}", "(q;q)_r", "(aq;q^2)_r", "(q^2;q^2)_{n-r}"}),
        pair_formula("BP327", 3, 2, 7, {}, "r^2", "r", {"(a;q^3)_r"},
                     {"(-aq;q)_{2n}", "(a;q)_{2r}", "(q;q)_r", "(q^2;q^2)_{n-r}"}),
        pair_formula("BP337", 3, 3, 7, {}, "r^2", "r", {"(a;q^3)_r", "(aq;q)_{3n-r}"},
                     {"(a^3q^3;q^3)_{2n}", "(q;q)_r", "(a;q)_{2r}", "(q^3;q^3)_{n-r}"}),
        pair_formula("BP417", 4, 1, 7, {}, "2r^2", "r", {},
                     {"(aq;q^2)_n", "(q^2;q^2)_r", "(aq^2;q^4)_r", "(q;q)_{n-2r}"}),
    };
    return table;
}

inline const PairFormula& pair_formula(const std::string& id) {
    for (const auto& f : pair_formulas()) {
        if (f.id == id) {
            return f;
        }
    }
    throw DomainError("unknown Bailey pair '" + id + "'");
}

inline const PairFormula* pair_formula_for(long d, long e, long k) {
    for (const auto& f : pair_formulas()) {
        if (f.d == d && f.e == e && f.k == k) {
            return &f;
        }
    }
    return nullptr;
}

/// The closed-form beta_n; every listed sum is cut off at r = n by a
/// denominator (q^x; q^x)_{n - r} or (q; q)_{n - 2r}.
inline QSeries beta_formula_eval(const PairFormula& f, const Monomial& a, std::int64_t n, Exponent T) {
    if (n < 0) {
        throw DomainError("beta index must be nonnegative");
    }
    QSeries acc(T);
    for (std::int64_t r = 0; r <= n; ++r) {
        FactorBag bag = term_bag(f.term, a, n, r);
        if (bag.vanishes()) {
            continue;
        }
        if (bag.zero_divisor()) {
            throw DivisionByZero(f.id + " has a vanishing denominator at n = " + std::to_string(n) +
                                 ", r = " + std::to_string(r));
        }
        acc += bag.evaluate(T);
    }
    return acc;
}

inline QSeries beta_formula_eval(const std::string& id, const Monomial& a, std::int64_t n, Exponent T) {
    return beta_formula_eval(pair_formula(id), a, n, T);
}

struct PairCheck {
    Monomial a;
    std::int64_t n;
    Comparison comparison;
    std::string error;

    bool ok() const { return error.empty() && comparison.equal; }
};

struct PairReport {
    std::string id;
    std::vector<PairCheck> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const PairCheck& c) { return c.ok(); });
    }
    const PairCheck* first_failure() const {
        for (const auto& c : checks) {
            if (!c.ok()) {
                return &c;
            }
        }
        return nullptr;
    }
};

inline const std::vector<Monomial>& standard_a_specs() {
    static const std::vector<Monomial> specs = {Monomial(), Monomial::q_pow(1), Monomial::q_pow(2),
                                                Monomial(Cyclo(3), 1)};
    return specs;
}

/// Closed form against the definitional sum for every a in a_specs and n <= n_max.
inline PairReport verify_bailey_pair(const PairFormula& f, const std::vector<Monomial>& a_specs, std::int64_t n_max,
                                     Exponent T) {
    PairReport rep{f.id, {}};
    for (const auto& a : a_specs) {
        BaileyPairSpec p{f.d, f.e, f.k, a, std::nullopt};
        for (std::int64_t n = 0; n <= n_max; ++n) {
            PairCheck c{a, n, {}, {}};
            try {
                c.comparison = equal_to_order(beta_formula_eval(f, a, n, T), beta_definition(p, n, T), T);
            } catch (const Error& ex) {
                c.error = ex.what();
            }
            rep.checks.push_back(std::move(c));
        }
    }
    return rep;
}

inline PairReport verify_bailey_pair(const std::string& id, const std::vector<Monomial>& a_specs, std::int64_t n_max,
                                     Exponent T) {
    return verify_bailey_pair(pair_formula(id), a_specs, n_max, T);
}

/// Sequences for the Bailey transform; u and v default to 1/(q;q)_n and 1/(aq;q)_n.
struct TransformSequences {
    std::vector<QSeries> alpha;
    std::vector<QSeries> delta;
    std::function<QSeries(std::int64_t, Exponent)> u;
    std::function<QSeries(std::int64_t, Exponent)> v;

    static TransformSequences canonical(std::vector<QSeries> alpha, std::vector<QSeries> delta, const Monomial& a) {
        TransformSequences s{std::move(alpha), std::move(delta), {}, {}};
        s.u = [](std::int64_t n, Exponent T) {
            FactorBag bag;
            detail::add_poch(bag, Monomial::q_pow(1), Monomial::q_pow(1), n, -1);
            return bag.evaluate(T);
        };
        s.v = [a](std::int64_t n, Exponent T) {
            FactorBag bag;
            detail::add_poch(bag, a * Monomial::q_pow(1), Monomial::q_pow(1), n, -1);
            return bag.evaluate(T);
        };
        return s;
    }
};

struct TransformCheck {
    QSeries alpha_gamma;
    QSeries beta_delta;
    Comparison comparison;
};

/// sum_n alpha_n gamma_n against sum_n beta_n delta_n, with beta and gamma
/// built from their defining sums.
inline TransformCheck bailey_transform_check(const TransformSequences& s, std::int64_t n_max, Exponent T) {
    auto at = [](const std::vector<QSeries>& v, std::int64_t n, Exponent T) {
        return n < static_cast<std::int64_t>(v.size()) ? v[static_cast<std::size_t>(n)].truncated(T) : QSeries(T);
    };
    std::int64_t R = std::max<std::int64_t>(n_max, static_cast<std::int64_t>(s.delta.size()) - 1);
    // operands may have negative valuation; carry a margin so products stay exact to T
    Exponent lo(0);
    for (const auto* v : {&s.alpha, &s.delta}) {
        for (const auto& x : *v) {
            lo = std::min(lo, x.valuation_or_order());
        }
    }
    Exponent W = T - lo;
    QSeries lhs(T);
    QSeries rhs(T);
    for (std::int64_t n = 0; n <= n_max; ++n) {
        QSeries beta(W);
        for (std::int64_t r = 0; r <= n; ++r) {
            beta += at(s.alpha, r, W) * s.u(n - r, W) * s.v(n + r, W);
        }
        QSeries gamma(W);
        for (std::int64_t r = n; r <= R; ++r) {
            gamma += at(s.delta, r, W) * s.u(r - n, W) * s.v(r + n, W);
        }
        lhs += (at(s.alpha, n, W) * gamma).truncated(T);
        rhs += (beta * at(s.delta, n, W)).truncated(T);
    }
    auto cmp = equal_to_order(lhs, rhs, T);
    return TransformCheck{std::move(lhs), std::move(rhs), cmp};
}

/// Parameters of the lemma. rho values are read in the lemma's own base q^e:
/// rho = c*q^x stands for the parameter c*q^(e x), so "-q^(1/2)" is -sqrt(q^e).
struct LemmaSpec {
    Monomial rho1 = Monomial::infinity();
    Monomial rho2 = Monomial::infinity();
    std::optional<std::int64_t> N;  // empty: N -> infinity
    Exponent order{40};
};

struct LemmaSides {
    QSeries lhs;
    QSeries rhs;
    /// (q^e;q^e)_inf times (a^e q^e / rho^e; q^e)_inf over finite rho when N is
    /// infinite, else 1; multiplying a side by it clears the infinite denominators.
    QSeries euler;
};

namespace detail {

struct LemmaSetup {
    long d, e, k;
    Monomial a, A, Q;
    std::vector<Monomial> finite_rho;  // in base q^e
    int infinite_rho = 0;
    Exponent T;

    /// Lower bound for the valuation of the x-weight (AQ)^j prod_rho (...) at index j.
    /// Returns (quadratic, linear) coefficients.
    std::pair<Exponent, Exponent> weight_coeffs() const {
        Exponent c2 = Exponent(e * infinite_rho, 2);
        Exponent c1 = A.exp + Q.exp - c2;
        for (const auto& R : finite_rho) {
            c1 -= R.exp;
        }
        return {c2, c1};
    }

    /// Lower bound for the valuation of alpha_{dr}(a^e, 0, q^e).
    Exponent alpha_low(std::int64_t r) const {
        return a.exp * ((k - d) * r) + Exponent(2 * d * k - 2 * d * d + d, 2) * (r * r) - Exponent(d, 2) * r;
    }
};

inline std::int64_t quad_stable_from(Exponent c2, Exponent c1) {
    if (c2 > 0) {
        return std::max<std::int64_t>(0, ceil(-c1 / (2 * c2)) + 1);
    }
    if (c2 == Exponent(0) && c1 > 0) {
        return 0;
    }
    throw DomainError("lemma sum does not converge q-adically for these parameters");
}

} // namespace detail

/// Both sides of the lemma with the multiparameter pair inserted, modulo q^order.
/// Infinite rho and N are taken as limits termwise. beta comes from the closed
/// form when one is registered for (d, e, k) and from the definition otherwise.
inline LemmaSides bailey_lemma_sides(long d, long e, long k, const Monomial& a, const LemmaSpec& L,
                                     bool use_formula = true) {
    detail::require_dek(d, e, k);
    detail::LemmaSetup S{d, e, k, a, a.pow(e), Monomial::q_pow(e), {}, 0, L.order};
    for (const auto* rho : {&L.rho1, &L.rho2}) {
        if (rho->infinite) {
            ++S.infinite_rho;
        } else {
            S.finite_rho.push_back(Monomial(rho->unit, rho->exp * e));
        }
    }
    if (a.exp < 0) {
        throw DomainError("lemma needs a with nonnegative exponent");
    }
    for (const auto& R : S.finite_rho) {
        if (R.exp < 0 || (S.A * S.Q / R).exp < 0) {
            throw DomainError("lemma parameters rho must satisfy 0 <= exp(rho^e) <= exp(a^e q^e)");
        }
    }
    if (2 * d * k - 2 * d * d + d <= 0) {
        throw DomainError("alpha exponents of this pair do not grow");
    }
    const Exponent T = L.order;
    const Monomial& A = S.A;
    const Monomial& Q = S.Q;
    const bool infinite_N = !L.N.has_value();
    const PairFormula* formula = use_formula ? pair_formula_for(d, e, k) : nullptr;
    BaileyPairSpec pair{d, e, k, a, std::nullopt};

    auto beta = [&](std::int64_t j, Exponent order) {
        return formula ? beta_formula_eval(*formula, a, j, order) : beta_definition(pair, j, order);
    };

    std::optional<Monomial> x;  // a^e q^e / (rho1^e rho2^e) when both rho are finite
    if (S.finite_rho.size() == 2) {
        x = A * Q / (S.finite_rho[0] * S.finite_rho[1]);
    }
    auto add_inf = [&](FactorBag& bag, const Monomial& base, int power, Exponent below) {
        if (base.exp <= 0) {
            throw DomainError("infinite product (" + base.str() + "; q^" + std::to_string(e) +
                              ")_inf does not converge");
        }
        bag.add_infinite(PochFactor::infinite(base.unit, base.exp, Q.unit, Q.exp, power), below);
    };
    // prefactors that do not depend on the summation index
    auto lhs_pre = [&](Exponent below) {
        FactorBag bag;
        for (const auto& R : S.finite_rho) {
            if (infinite_N) {
                add_inf(bag, A * Q / R, -1, below);
            } else {
                detail::add_poch(bag, A * Q / R, Q, *L.N, -1);
            }
        }
        if (infinite_N) {
            add_inf(bag, Q, -1, below);
            if (x) {
                add_inf(bag, *x, 1, below);
            }
        }
        return bag;
    };
    auto rhs_pre = [&](Exponent below) {
        FactorBag bag;
        if (infinite_N) {
            add_inf(bag, Q, -1, below);
            add_inf(bag, A * Q, -1, below);
        }
        return bag;
    };
    FactorBag euler;
    if (infinite_N) {
        for (const auto& R : S.finite_rho) {
            add_inf(euler, A * Q / R, 1, T);
        }
        add_inf(euler, Q, 1, T);
    }

    auto rho_part = [&](FactorBag& bag, std::int64_t j) {
        Monomial aq = (A * Q).pow(j);
        bag.mul_monomial(aq.unit, aq.exp);
        for (const auto& R : S.finite_rho) {
            detail::add_poch(bag, R, Q, j);
            Monomial rinv = R.pow(-j);
            bag.mul_monomial(rinv.unit, rinv.exp);
        }
        for (int c = 0; c < S.infinite_rho; ++c) {
            bag.mul_monomial(Cyclo(j % 2 == 0 ? 1 : -1), Exponent(e * j * (j - 1), 2));
        }
    };

    // left side
    auto [w2, w1] = S.weight_coeffs();
    Exponent alpha_min(0);
    {
        std::int64_t r = 0;
        std::int64_t stable = detail::quad_stable_from(Exponent(2 * d * k - 2 * d * d + d, 2),
                                                       a.exp * (k - d) - Exponent(d, 2));
        for (; r <= stable; ++r) {
            alpha_min = std::min(alpha_min, S.alpha_low(r));
        }
    }
    std::int64_t j_stable = infinite_N ? detail::quad_stable_from(w2, w1) : 0;
    QSeries lhs_sum(T);
    for (std::int64_t j = 0;; ++j) {
        if (!infinite_N && j > *L.N) {
            break;
        }
        Exponent bound = w2 * (j * j) + w1 * j;
        if (infinite_N && j >= j_stable && bound + alpha_min >= T) {
            break;
        }
        FactorBag w;
        rho_part(w, j);
        if (!infinite_N) {
            if (x) {
                detail::add_poch(w, *x, Q, *L.N - j);
            }
            detail::add_poch(w, Q, Q, *L.N - j, -1);
        }
        if (w.vanishes()) {
            continue;
        }
        if (w.zero_divisor()) {
            throw DivisionByZero("lemma weight has a vanishing denominator at j = " + std::to_string(j));
        }
        Exponent wv = w.valuation();
        if (wv >= T - alpha_min) {
            continue;
        }
        QSeries b = beta(j, T - wv);
        lhs_sum += (w.evaluate(T - alpha_min) * b).truncated(T);
    }

    // right side
    Exponent r2 = Exponent(2 * d * k - 2 * d * d + d, 2) + Exponent(e * d * d * S.infinite_rho, 2);
    Exponent r1 = a.exp * (k - d) - Exponent(d, 2) + d * (A.exp + Q.exp) - Exponent(e * d * S.infinite_rho, 2);
    for (const auto& R : S.finite_rho) {
        r1 -= d * R.exp;
    }
    std::int64_t r_stable = infinite_N ? detail::quad_stable_from(r2, r1) : 0;
    QSeries rhs_sum(T);
    for (std::int64_t r = 0;; ++r) {
        std::int64_t s = d * r;
        if (!infinite_N && s > *L.N) {
            break;
        }
        Exponent bound = r2 * (r * r) + r1 * r;
        if (infinite_N && r >= r_stable && bound >= T) {
            break;
        }
        FactorBag t = alpha_bag(pair, r);
        rho_part(t, s);
        for (const auto& R : S.finite_rho) {
            detail::add_poch(t, A * Q / R, Q, s, -1);
        }
        if (!infinite_N) {
            detail::add_poch(t, Q, Q, *L.N - s, -1);
            detail::add_poch(t, A * Q, Q, *L.N + s, -1);
        }
        if (t.vanishes()) {
            continue;
        }
        if (t.zero_divisor()) {
            throw DivisionByZero("lemma alpha term has a vanishing denominator at r = " + std::to_string(r));
        }
        if (t.valuation() < bound) {
            throw DomainError("lemma alpha term at r = " + std::to_string(r) + " is below its valuation bound");
        }
        rhs_sum += t.evaluate(T);
    }

    // prefactors are unit series; a sum of negative valuation needs them a little further
    auto finish = [&](const auto& pre, const QSeries& sum) {
        Exponent below = T - std::min(Exponent(0), sum.valuation_or_order());
        return (pre(below).evaluate(below) * sum).truncated(T);
    };
    return LemmaSides{finish(lhs_pre, lhs_sum), finish(rhs_pre, rhs_sum), euler.evaluate(T)};
}

} // namespace qbailey
