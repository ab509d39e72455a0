#pragma once

// Truncated generalized power series in q with rational exponents and
// coefficients in Q(zeta_12).
//
// A QSeries is "known modulo q^T": every stored exponent is < T and nothing is
// claimed about exponents >= T. Exponents may be negative or fractional.
// Storage is dense on the lattice (1/den) Z; that is an internal detail, the
// observable state is the finite map exponent -> nonzero coefficient plus T.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qbailey/cyclo.hpp"
#include "qbailey/error.hpp"
#include "qbailey/rational.hpp"

namespace qbailey {

class QSeries {
  public:
    /// The zero series known to order 0 (knows nothing).
    QSeries() = default;

    /// The zero series known modulo q^order.
    explicit QSeries(Exponent order) : order_(order) {}

    static QSeries constant(const Cyclo& c, Exponent order) { return monomial(c, Exponent(0), order); }

    static QSeries one(Exponent order) { return constant(Cyclo(1), order); }

    static QSeries monomial(const Cyclo& c, Exponent e, Exponent order) {
        QSeries s(order);
        if (e < order && !c.is_zero()) {
            s.den_ = e.denominator();
            s.offset_ = e.numerator();
            s.coeffs_.push_back(c);
        }
        return s;
    }

    static QSeries from_terms(const std::vector<std::pair<Exponent, Cyclo>>& terms, Exponent order) {
        QSeries s(order);
        for (const auto& [e, c] : terms) {
            s += monomial(c, e, order);
        }
        return s;
    }

    /// Builds a series from a dense coefficient vector; entry k is the
    /// coefficient of q^((offset + k)/den).
    static QSeries from_dense(std::int64_t den, std::int64_t offset, std::vector<Cyclo> coeffs, Exponent order) {
        QSeries s(order);
        s.den_ = den;
        s.offset_ = offset;
        s.coeffs_ = std::move(coeffs);
        s.normalize();
        return s;
    }

    const Exponent& order() const { return order_; }

    bool is_zero() const { return coeffs_.empty(); }

    /// Least stored exponent, or nullopt for the zero series.
    std::optional<Exponent> valuation() const {
        if (coeffs_.empty()) {
            return std::nullopt;
        }
        return Exponent(offset_, den_);
    }

    /// Valuation with the convention val(0) = order.
    Exponent valuation_or_order() const { return coeffs_.empty() ? order_ : Exponent(offset_, den_); }

    std::vector<std::pair<Exponent, Cyclo>> terms() const {
        std::vector<std::pair<Exponent, Cyclo>> out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (!coeffs_[k].is_zero()) {
                out.emplace_back(Exponent(offset_ + static_cast<std::int64_t>(k), den_), coeffs_[k]);
            }
        }
        return out;
    }

    std::size_t term_count() const {
        return static_cast<std::size_t>(
            std::count_if(coeffs_.begin(), coeffs_.end(), [](const Cyclo& c) { return !c.is_zero(); }));
    }

    /// Coefficient of q^e; e must lie below the truncation order.
    Cyclo coefficient(const Exponent& e) const {
        if (e >= order_) {
            throw TruncationError("coefficient of q^" + to_string(e) + " requested, series known only mod q^" +
                                  to_string(order_));
        }
        if (coeffs_.empty()) {
            return Cyclo();
        }
        Exponent scaled = e * den_;
        if (!is_integer(scaled)) {
            return Cyclo();
        }
        std::int64_t k = scaled.numerator() - offset_;
        if (k < 0 || k >= static_cast<std::int64_t>(coeffs_.size())) {
            return Cyclo();
        }
        return coeffs_[static_cast<std::size_t>(k)];
    }

    bool has_rational_coefficients() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Cyclo& c) { return c.is_rational(); });
    }

    /// Least common denominator of the stored exponents.
    std::int64_t exponent_denominator() const { return den_; }

    /// Forgets everything at or above min(T, order).
    QSeries truncated(Exponent T) const {
        QSeries s = *this;
        s.order_ = std::min(order_, T);
        s.normalize();
        return s;
    }

    QSeries operator-() const {
        QSeries s = *this;
        for (auto& c : s.coeffs_) {
            c = -c;
        }
        return s;
    }

    QSeries& operator+=(const QSeries& o) { return accumulate(o, false); }
    QSeries& operator-=(const QSeries& o) { return accumulate(o, true); }

    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }

    /// Product, known to min(T_f + val g, T_g + val f).
    friend QSeries operator*(const QSeries& f, const QSeries& g) {
        Exponent order = std::min(f.order_ + g.valuation_or_order(), g.order_ + f.valuation_or_order());
        QSeries out(order);
        if (f.coeffs_.empty() || g.coeffs_.empty()) {
            return out;
        }
        std::int64_t L = std::lcm(f.den_, g.den_);
        auto fv = f.aligned(L);
        auto gv = g.aligned(L);
        std::int64_t fo = f.offset_ * (L / f.den_);
        std::int64_t go = g.offset_ * (L / g.den_);
        std::int64_t off = fo + go;
        std::int64_t limit = index_limit(order, L, off);
        if (limit <= 0) {
            return out;
        }
        std::vector<Cyclo> acc(static_cast<std::size_t>(limit));
        for (std::size_t a = 0; a < fv.size(); ++a) {
            if (fv[a].is_zero()) {
                continue;
            }
            for (std::size_t b = 0; b < gv.size() && static_cast<std::int64_t>(a + b) < limit; ++b) {
                if (!gv[b].is_zero()) {
                    acc[a + b] += fv[a] * gv[b];
                }
            }
        }
        return from_dense(L, off, std::move(acc), order);
    }

    QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

    QSeries scaled(const Cyclo& c) const {
        if (c.is_zero()) {
            return QSeries(order_);
        }
        QSeries s = *this;
        for (auto& x : s.coeffs_) {
            if (!x.is_zero()) {
                x = x * c;
            }
        }
        return s;
    }

    /// Multiplies by the monomial c q^e; the order shifts by e.
    QSeries shifted(const Cyclo& c, Exponent e) const {
        QSeries s = scaled(c);
        s.order_ += e;
        if (!s.coeffs_.empty()) {
            std::int64_t L = lcm_den(s.den_, e);
            s.coeffs_ = s.aligned(L);
            s.offset_ = s.offset_ * (L / s.den_) + (e * L).numerator();
            s.den_ = L;
            s.normalize();
        }
        return s;
    }

    /// In place multiplication by (1 - u q^e), e > 0. The order is unchanged.
    QSeries& mul_binomial(const Cyclo& u, Exponent e) {
        if (e <= 0) {
            throw DomainError("mul_binomial needs a positive exponent");
        }
        if (coeffs_.empty() || u.is_zero()) {
            return *this;
        }
        align_to(lcm_den(den_, e));
        std::int64_t m = (e * den_).numerator();
        std::int64_t limit = index_limit(order_, den_, offset_);
        std::int64_t size = std::min<std::int64_t>(static_cast<std::int64_t>(coeffs_.size()) + m, limit);
        coeffs_.resize(static_cast<std::size_t>(std::max<std::int64_t>(size, 0)));
        bool plus = u.is_minus_one();
        bool minus = u.is_one();
        for (std::int64_t k = size - 1; k >= m; --k) {
            const Cyclo& src = coeffs_[static_cast<std::size_t>(k - m)];
            if (src.is_zero()) {
                continue;
            }
            auto& dst = coeffs_[static_cast<std::size_t>(k)];
            if (minus) {
                dst -= src;
            } else if (plus) {
                dst += src;
            } else {
                dst -= u * src;
            }
        }
        normalize();
        return *this;
    }

    /// In place division by (1 - u q^e), e > 0. The order is unchanged.
    QSeries& div_binomial(const Cyclo& u, Exponent e) {
        if (e <= 0) {
            throw DomainError("div_binomial needs a positive exponent");
        }
        if (coeffs_.empty() || u.is_zero()) {
            return *this;
        }
        align_to(lcm_den(den_, e));
        std::int64_t m = (e * den_).numerator();
        std::int64_t limit = index_limit(order_, den_, offset_);
        coeffs_.resize(static_cast<std::size_t>(std::max<std::int64_t>(limit, 0)));
        bool plus = u.is_one();
        bool minus = u.is_minus_one();
        for (std::int64_t k = m; k < limit; ++k) {
            const Cyclo& src = coeffs_[static_cast<std::size_t>(k - m)];
            if (src.is_zero()) {
                continue;
            }
            auto& dst = coeffs_[static_cast<std::size_t>(k)];
            if (plus) {
                dst += src;
            } else if (minus) {
                dst -= src;
            } else {
                dst += u * src;
            }
        }
        normalize();
        return *this;
    }

    /// Multiplicative inverse. The leading monomial c q^v is factored out, so
    /// a series known mod q^T yields an inverse known mod q^(T - 2v).
    QSeries inverse() const {
        if (coeffs_.empty()) {
            throw DivisionByZero("inverse of a series with no known nonzero term");
        }
        const Cyclo& lead = coeffs_.front();
        Cyclo lead_inv = lead.inverse();
        Exponent v(offset_, den_);
        Exponent unit_order = order_ - v;
        std::int64_t limit = index_limit(unit_order, den_, 0);
        std::vector<Cyclo> g(coeffs_.size());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (!coeffs_[k].is_zero()) {
                g[k] = coeffs_[k] * lead_inv;
            }
        }
        std::vector<Cyclo> h(static_cast<std::size_t>(std::max<std::int64_t>(limit, 0)));
        if (!h.empty()) {
            h[0] = Cyclo(1);
        }
        for (std::int64_t k = 1; k < limit; ++k) {
            Cyclo acc;
            std::int64_t jmax = std::min<std::int64_t>(k, static_cast<std::int64_t>(g.size()) - 1);
            for (std::int64_t j = 1; j <= jmax; ++j) {
                const Cyclo& gj = g[static_cast<std::size_t>(j)];
                const Cyclo& hk = h[static_cast<std::size_t>(k - j)];
                if (!gj.is_zero() && !hk.is_zero()) {
                    acc += gj * hk;
                }
            }
            h[static_cast<std::size_t>(k)] = -acc;
        }
        QSeries unit = from_dense(den_, 0, std::move(h), unit_order);
        return unit.shifted(lead_inv, -v);
    }

    /// The substitution q -> q^c for rational c > 0.
    QSeries scale_exponents(Exponent c) const {
        if (c <= 0) {
            throw DomainError("exponent scaling factor must be positive, got " + to_string(c));
        }
        Exponent order = order_ * c;
        if (coeffs_.empty()) {
            return QSeries(order);
        }
        std::int64_t p = c.numerator();
        std::int64_t s = c.denominator();
        std::vector<Cyclo> v((coeffs_.size() - 1) * static_cast<std::size_t>(p) + 1);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            v[k * static_cast<std::size_t>(p)] = coeffs_[k];
        }
        return from_dense(den_ * s, offset_ * p, std::move(v), order);
    }

    std::string str() const {
        std::string out;
        for (const auto& [e, c] : terms()) {
            std::string coef;
            bool negative = c.is_rational() && sgn(c.rational_part()) < 0;
            Cyclo shown = negative ? -c : c;
            if (e == Exponent(0)) {
                coef = shown.is_rational() ? shown.str() : "(" + shown.str() + ")";
            } else if (shown.is_one()) {
                coef = "q^(" + to_string(e) + ")";
            } else {
                coef = (shown.is_rational() ? shown.str() : "(" + shown.str() + ")") + "*q^(" + to_string(e) + ")";
            }
            if (out.empty()) {
                out = negative ? "-" + coef : coef;
            } else {
                out += negative ? " - " : " + ";
                out += coef;
            }
        }
        if (out.empty()) {
            out = "0";
        }
        return out + " (mod q^(" + to_string(order_) + "))";
    }

  private:
    // Number of lattice indices k >= 0 with (off + k)/L < order.
    static std::int64_t index_limit(const Exponent& order, std::int64_t L, std::int64_t off) {
        return ceil(order * L) - off;
    }

    std::vector<Cyclo> aligned(std::int64_t L) const {
        if (L == den_) {
            return coeffs_;
        }
        std::size_t f = static_cast<std::size_t>(L / den_);
        std::vector<Cyclo> v(coeffs_.empty() ? 0 : (coeffs_.size() - 1) * f + 1);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            v[k * f] = coeffs_[k];
        }
        return v;
    }

    void align_to(std::int64_t L) {
        if (L == den_) {
            return;
        }
        coeffs_ = aligned(L);
        offset_ *= L / den_;
        den_ = L;
    }

    QSeries& accumulate(const QSeries& o, bool subtract) {
        Exponent order = std::min(order_, o.order_);
        if (o.coeffs_.empty()) {
            order_ = order;
            normalize();
            return *this;
        }
        if (coeffs_.empty()) {
            *this = subtract ? -o : o;
            order_ = order;
            normalize();
            return *this;
        }
        std::int64_t L = std::lcm(den_, o.den_);
        align_to(L);
        auto ov = o.aligned(L);
        std::int64_t oo = o.offset_ * (L / o.den_);
        std::int64_t lo = std::min(offset_, oo);
        std::int64_t hi = std::max(offset_ + static_cast<std::int64_t>(coeffs_.size()),
                                   oo + static_cast<std::int64_t>(ov.size()));
        if (lo < offset_) {
            coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(offset_ - lo), Cyclo());
            offset_ = lo;
        }
        coeffs_.resize(static_cast<std::size_t>(hi - lo));
        for (std::size_t k = 0; k < ov.size(); ++k) {
            if (ov[k].is_zero()) {
                continue;
            }
            auto& dst = coeffs_[static_cast<std::size_t>(oo - lo) + k];
            if (subtract) {
                dst -= ov[k];
            } else {
                dst += ov[k];
            }
        }
        order_ = order;
        normalize();
        return *this;
    }

    void normalize() {
        std::int64_t limit = index_limit(order_, den_, offset_);
        if (limit < static_cast<std::int64_t>(coeffs_.size())) {
            coeffs_.resize(static_cast<std::size_t>(std::max<std::int64_t>(limit, 0)));
        }
        while (!coeffs_.empty() && coeffs_.back().is_zero()) {
            coeffs_.pop_back();
        }
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead].is_zero()) {
            ++lead;
        }
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            den_ = 1;
            offset_ = 0;
            return;
        }
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            offset_ += static_cast<std::int64_t>(lead);
        }
        std::int64_t g = den_;
        for (std::size_t k = 0; k < coeffs_.size() && g > 1; ++k) {
            if (!coeffs_[k].is_zero()) {
                g = std::gcd(g, offset_ + static_cast<std::int64_t>(k));
            }
        }
        if (g > 1) {
            std::vector<Cyclo> v((coeffs_.size() - 1) / static_cast<std::size_t>(g) + 1);
            for (std::size_t k = 0; k < coeffs_.size(); k += static_cast<std::size_t>(g)) {
                v[k / static_cast<std::size_t>(g)] = std::move(coeffs_[k]);
            }
            coeffs_ = std::move(v);
            den_ /= g;
            offset_ /= g;
        }
    }

    Exponent order_{0};
    std::int64_t den_ = 1;
    std::int64_t offset_ = 0;
    std::vector<Cyclo> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const QSeries& s) { return os << s.str(); }

inline QSeries invert(const QSeries& f) { return f.inverse(); }

inline QSeries scale_exponents(const QSeries& f, Exponent c) { return f.scale_exponents(c); }

/// Outcome of comparing two series below a given order.
struct Comparison {
    bool equal = true;
    Exponent exponent{0};  // first differing exponent when !equal
    Cyclo lhs;
    Cyclo rhs;
};

/// Compares f and g on all exponents < T; both must be known to at least T.
inline Comparison equal_to_order(const QSeries& f, const QSeries& g, Exponent T) {
    if (f.order() < T || g.order() < T) {
        throw TruncationError("comparison to order " + to_string(T) + " but series are known only mod q^" +
                              to_string(std::min(f.order(), g.order())));
    }
    QSeries diff = f.truncated(T) - g.truncated(T);
    auto v = diff.valuation();
    if (!v) {
        return {};
    }
    return Comparison{false, *v, f.coefficient(*v), g.coefficient(*v)};
}

} // namespace qbailey
