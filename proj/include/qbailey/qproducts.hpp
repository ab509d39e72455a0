#pragma once

// q-Pochhammer symbols and products of them.
//
// Every product of Pochhammer symbols is flattened into a FactorBag: a
// monomial prefactor times a multiset of binomials (1 - u q^e). Binomials
// that occur in both numerator and denominator cancel, and exact zeros
// (1 - 1) are counted rather than multiplied, which is how the negative-length
// convention and the removable singularities at a = 1 are handled.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "qbailey/cyclo.hpp"
#include "qbailey/error.hpp"
#include "qbailey/qseries.hpp"
#include "qbailey/rational.hpp"

namespace qbailey {

/// ((base_unit q^base_exp) ; (step_unit q^step_exp))_length ^ power.
///
/// Factor j of a finite symbol is 1 - base_unit step_unit^j q^(base_exp + j step_exp).
/// A negative length -m means 1 / ((base step^-m ; step)_m).
struct PochFactor {
    Cyclo base_unit{1};
    Exponent base_exp{0};
    Cyclo step_unit{1};
    Exponent step_exp{1};
    std::optional<std::int64_t> length;  // empty: infinite product
    int power = 1;

    bool is_infinite() const { return !length.has_value(); }

    static PochFactor finite(Cyclo bu, Exponent be, Cyclo su, Exponent se, std::int64_t n, int power = 1) {
        return PochFactor{std::move(bu), be, std::move(su), se, n, power};
    }
    static PochFactor infinite(Cyclo bu, Exponent be, Cyclo su, Exponent se, int power = 1) {
        return PochFactor{std::move(bu), be, std::move(su), se, std::nullopt, power};
    }
};

/// A product of Pochhammer symbols, e.g. (q^4,q^5,q^9;q^9)_inf / (q^2;q^2)_inf.
struct ProductSpec {
    std::vector<PochFactor> factors;
};

class FactorBag {
  public:
    /// Multiplies by (u q^e)^power.
    void mul_monomial(const Cyclo& u, Exponent e, int power = 1) {
        if (power == 0) {
            return;
        }
        if (u.is_zero()) {
            if (power < 0) {
                throw DivisionByZero("monomial prefactor is zero");
            }
            unit_ = Cyclo();
        } else if (!u.is_one()) {
            unit_ = unit_ * u.pow(power);
        }
        exp_ += e * power;
    }

    /// Multiplies by (1 - u q^e)^power.
    void add_binomial(const Cyclo& u, Exponent e, int power = 1) {
        if (power == 0 || u.is_zero()) {
            return;
        }
        if (e == Exponent(0)) {
            if (u.is_one()) {
                zeros_ += power;
            } else {
                Cyclo c = Cyclo(1) - u;
                unit_ = unit_ * c.pow(power);
            }
            return;
        }
        if (e < 0) {
            // 1 - u q^e = -u q^e (1 - u^-1 q^-e)
            mul_monomial(-u, e, power);
            add_binomial(u.inverse(), -e, power);
            return;
        }
        auto key = std::make_pair(e, u);
        auto it = binomials_.find(key);
        if (it == binomials_.end()) {
            binomials_.emplace(std::move(key), power);
        } else if ((it->second += power) == 0) {
            binomials_.erase(it);
        }
    }

    /// Adds a finite Pochhammer symbol; infinite ones need a truncation order
    /// and go through add_infinite.
    void add_pochhammer(const PochFactor& f) {
        if (f.is_infinite()) {
            throw DomainError("infinite Pochhammer symbol added without a truncation order");
        }
        std::int64_t n = *f.length;
        std::int64_t start = n >= 0 ? 0 : n;
        std::int64_t stop = n >= 0 ? n : 0;
        int power = n >= 0 ? f.power : -f.power;
        Cyclo su = f.step_unit.pow(start);
        for (std::int64_t j = start; j < stop; ++j) {
            add_binomial(f.base_unit * su, f.base_exp + f.step_exp * j, power);
            if (!f.step_unit.is_one()) {
                su = su * f.step_unit;
            }
        }
    }

    /// Adds the factors of an infinite symbol with exponent below `below`.
    void add_infinite(const PochFactor& f, Exponent below) {
        if (f.base_exp <= 0 || f.step_exp <= 0) {
            throw DomainError("infinite Pochhammer symbol needs positive base and step exponents");
        }
        Cyclo su(1);
        for (Exponent e = f.base_exp; e < below; e += f.step_exp) {
            add_binomial(f.base_unit * su, e, f.power);
            if (!f.step_unit.is_one()) {
                su = su * f.step_unit;
            }
        }
    }

    void merge(const FactorBag& o) {
        mul_monomial(o.unit_, o.exp_);
        zeros_ += o.zeros_;
        for (const auto& [key, p] : o.binomials_) {
            add_binomial(key.second, key.first, p);
        }
    }

    /// True when an uncancelled (1 - 1) sits in the numerator.
    bool vanishes() const { return zeros_ > 0 || unit_.is_zero(); }

    /// True when an uncancelled (1 - 1) sits in the denominator.
    bool zero_divisor() const { return zeros_ < 0; }

    /// Exact valuation of the product (when it neither vanishes nor divides by zero).
    Exponent valuation() const { return exp_; }

    const Cyclo& leading_unit() const { return unit_; }

    bool has_rational_units() const {
        if (!unit_.is_rational()) {
            return false;
        }
        for (const auto& [key, p] : binomials_) {
            if (!key.second.is_rational()) {
                return false;
            }
        }
        return true;
    }

    /// Expands the product modulo q^T.
    QSeries evaluate(Exponent T) const {
        if (zero_divisor()) {
            throw DivisionByZero("product has an uncancelled zero factor in the denominator");
        }
        if (vanishes() || exp_ >= T) {
            return QSeries(T);
        }
        std::int64_t L = exp_.denominator();
        for (const auto& [key, p] : binomials_) {
            L = std::lcm(L, key.first.denominator());
        }
        std::int64_t n = ceil((T - exp_) * L);
        std::int64_t offset = (exp_ * L).numerator();
        if (has_rational_units()) {
            auto dense = expand<BigRational>(L, n);
            std::vector<Cyclo> coeffs;
            coeffs.reserve(dense.size());
            for (auto& x : dense) {
                coeffs.emplace_back(std::move(x));
            }
            return QSeries::from_dense(L, offset, std::move(coeffs), T);
        }
        return QSeries::from_dense(L, offset, expand<Cyclo>(L, n), T);
    }

  private:
    static const BigRational& unit_as(const Cyclo& c, const BigRational*) { return c.rational_part(); }
    static const Cyclo& unit_as(const Cyclo& c, const Cyclo*) { return c; }
    static bool is_zero(const BigRational& x) { return sgn(x) == 0; }
    static bool is_zero(const Cyclo& x) { return x.is_zero(); }

    template <class Scalar>
    std::vector<Scalar> expand(std::int64_t L, std::int64_t n) const {
        std::vector<Scalar> v(static_cast<std::size_t>(n));
        v[0] = unit_as(unit_, static_cast<const Scalar*>(nullptr));
        std::int64_t hi = 0;  // highest possibly nonzero index
        // multiplications first while the support is short
        for (const auto& [key, p] : binomials_) {
            if (p < 0) {
                continue;
            }
            std::int64_t m = (key.first * L).numerator();
            if (m >= n) {
                continue;
            }
            const Scalar& u = unit_as(key.second, static_cast<const Scalar*>(nullptr));
            bool one = key.second.is_one();
            bool minus_one = key.second.is_minus_one();
            for (int rep = 0; rep < p; ++rep) {
                hi = std::min(n - 1, hi + m);
                for (std::int64_t k = hi; k >= m; --k) {
                    const Scalar& src = v[static_cast<std::size_t>(k - m)];
                    if (is_zero(src)) {
                        continue;
                    }
                    Scalar& dst = v[static_cast<std::size_t>(k)];
                    if (one) {
                        dst -= src;
                    } else if (minus_one) {
                        dst += src;
                    } else {
                        dst -= u * src;
                    }
                }
            }
        }
        for (const auto& [key, p] : binomials_) {
            if (p > 0) {
                continue;
            }
            std::int64_t m = (key.first * L).numerator();
            if (m >= n) {
                continue;
            }
            const Scalar& u = unit_as(key.second, static_cast<const Scalar*>(nullptr));
            bool one = key.second.is_one();
            bool minus_one = key.second.is_minus_one();
            for (int rep = 0; rep < -p; ++rep) {
                for (std::int64_t k = m; k < n; ++k) {
                    const Scalar& src = v[static_cast<std::size_t>(k - m)];
                    if (is_zero(src)) {
                        continue;
                    }
                    Scalar& dst = v[static_cast<std::size_t>(k)];
                    if (one) {
                        dst += src;
                    } else if (minus_one) {
                        dst -= src;
                    } else {
                        dst += u * src;
                    }
                }
            }
        }
        return v;
    }

    Cyclo unit_{1};
    Exponent exp_{0};
    int zeros_ = 0;
    std::map<std::pair<Exponent, Cyclo>, int> binomials_;  // exponents > 0
};

/// Marks a reciprocal Pochhammer symbol with an exactly vanishing factor.
struct ZeroDivisor {};

/// Evaluates a finite Pochhammer symbol modulo q^T.
inline std::variant<QSeries, ZeroDivisor> poch_eval(const PochFactor& f, Exponent T) {
    if (f.is_infinite()) {
        throw DomainError("poch_eval expects a finite length");
    }
    FactorBag bag;
    bag.add_pochhammer(f);
    if (bag.zero_divisor()) {
        return ZeroDivisor{};
    }
    return bag.evaluate(T);
}

/// Evaluates an infinite Pochhammer symbol modulo q^T.
inline QSeries poch_inf(const PochFactor& f, Exponent T) {
    if (!f.is_infinite()) {
        throw DomainError("poch_inf expects an infinite length");
    }
    FactorBag bag;
    bag.add_infinite(f, T);
    return bag.evaluate(T);
}

inline FactorBag product_bag(const ProductSpec& p, Exponent T) {
    FactorBag bag;
    for (const auto& f : p.factors) {
        if (!f.is_infinite()) {
            bag.add_pochhammer(f);
        }
    }
    // finite factors may carry a negative valuation, which lowers the
    // exponent at which infinite factors stop mattering
    Exponent below = T - std::min(Exponent(0), bag.valuation());
    for (const auto& f : p.factors) {
        if (f.is_infinite()) {
            bag.add_infinite(f, below);
        }
    }
    return bag;
}

inline QSeries product_spec_eval(const ProductSpec& p, Exponent T) {
    FactorBag bag = product_bag(p, T);
    if (bag.zero_divisor()) {
        throw DivisionByZero("product has a vanishing factor in the denominator");
    }
    return bag.evaluate(T);
}

/// Bilateral theta sum sum_j (-1)^j q^(m j(j-1)/2 + a j), which equals
/// (q^a, q^(m-a), q^m; q^m)_inf by the triple product identity.
inline QSeries jtp_theta_oracle(Exponent a, Exponent m, Exponent T) {
    if (!(a > 0 && a < m)) {
        throw DomainError("theta oracle needs 0 < a < m");
    }
    auto exponent = [&](std::int64_t j) { return m * (j * (j - 1)) / 2 + a * j; };
    std::vector<std::pair<Exponent, Cyclo>> terms;
    for (std::int64_t j = 0; exponent(j) < T; ++j) {
        terms.emplace_back(exponent(j), Cyclo(j % 2 == 0 ? 1 : -1));
    }
    for (std::int64_t j = -1; exponent(j) < T; --j) {
        terms.emplace_back(exponent(j), Cyclo(j % 2 == 0 ? 1 : -1));
    }
    return QSeries::from_terms(terms, T);
}

/// A (q^a, q^(m-a), q^m; q^m)_inf block found inside a product.
struct TripleBlock {
    Exponent a;
    Exponent m;
};

/// Finds the triple-product blocks among the plain infinite factors of p.
inline std::vector<TripleBlock> triple_product_blocks(const ProductSpec& p) {
    std::map<Exponent, std::vector<Exponent>> by_step;
    for (const auto& f : p.factors) {
        if (f.is_infinite() && f.power == 1 && f.base_unit.is_one() && f.step_unit.is_one()) {
            by_step[f.step_exp].push_back(f.base_exp);
        }
    }
    std::vector<TripleBlock> blocks;
    for (auto& [m, bases] : by_step) {
        while (true) {
            auto full = std::find(bases.begin(), bases.end(), m);
            if (full == bases.end()) {
                break;
            }
            bool found = false;
            for (std::size_t x = 0; x < bases.size() && !found; ++x) {
                for (std::size_t y = x + 1; y < bases.size() && !found; ++y) {
                    if (bases[x] == m || bases[y] == m || bases[x] + bases[y] != m) {
                        continue;
                    }
                    Exponent a = std::min(bases[x], bases[y]);
                    blocks.push_back({a, m});
                    Exponent bx = bases[x];
                    Exponent by = bases[y];
                    bases.erase(std::find(bases.begin(), bases.end(), m));
                    bases.erase(std::find(bases.begin(), bases.end(), bx));
                    bases.erase(std::find(bases.begin(), bases.end(), by));
                    found = true;
                }
            }
            if (!found) {
                break;
            }
        }
    }
    return blocks;
}

inline ProductSpec triple_block_product(const TripleBlock& b) {
    return ProductSpec{{PochFactor::infinite(1, b.a, 1, b.m), PochFactor::infinite(1, b.m - b.a, 1, b.m),
                        PochFactor::infinite(1, b.m, 1, b.m)}};
}

} // namespace qbailey
