#pragma once

// Euler-product exponents of a unit series and their periodicity, for
// spotting sums that equal modular products.

#include <cstdint>
#include <optional>
#include <vector>

#include "qbailey/qseries.hpp"

namespace qbailey {

/// c[k] is c_(k+1) in f = prod_{n>=1} (1 - x^n)^(-c_n), where x = q^(1/rescale).
struct EulerExponents {
    std::vector<std::int64_t> c;
    std::int64_t rescale = 1;

    std::int64_t operator[](std::int64_t n) const { return c.at(static_cast<std::size_t>(n - 1)); }
};

/// Least L with every exponent of f in (1/L)Z.
inline std::int64_t exponent_denominator(const QSeries& f) {
    std::int64_t L = 1;
    for (const auto& [e, c] : f.terms()) {
        L = lcm_den(L, e);
    }
    return L;
}

/// Sieves c_1 .. c_(T-1) in the variable x = q^(1/L), L from exponent_denominator.
inline EulerExponents product_exponents(const QSeries& f, std::int64_t T) {
    std::int64_t L = exponent_denominator(f);
    QSeries g = L == 1 ? f : f.scale_exponents(Exponent(L));
    if (g.order() < Exponent(T)) {
        throw TruncationError("sieve to x^" + std::to_string(T) + " needs the series to that order, have " +
                              to_string(g.order()));
    }
    g = g.truncated(Exponent(T));
    if (g.coefficient(Exponent(0)) != Cyclo(1)) {
        throw DomainError("product exponents need constant term 1");
    }
    EulerExponents out{{}, L};
    for (std::int64_t n = 1; n < T; ++n) {
        Cyclo v = g.coefficient(Exponent(n));
        if (!v.is_rational() || v.coords()[0].get_den() != 1 || !v.coords()[0].get_num().fits_slong_p()) {
            throw DomainError("coefficient " + v.str() + " at x^" + std::to_string(n) +
                              " is not an integer; the series is not an Euler product of this shape");
        }
        std::int64_t cn = v.coords()[0].get_num().get_si();
        out.c.push_back(cn);
        for (std::int64_t t = 0; t < cn; ++t) {
            g.mul_binomial(Cyclo(1), Exponent(n));
        }
        for (std::int64_t t = 0; t < -cn; ++t) {
            g.div_binomial(Cyclo(1), Exponent(n));
        }
    }
    return out;
}

struct Periodicity {
    std::int64_t period;
    std::vector<std::int64_t> pattern;  // pattern[j] is the value on residue j + 1
};

/// Smallest p <= max_period with c_n = c_(n-p) throughout, confirmed on at
/// least two full periods past the first.
inline std::optional<Periodicity> periodicity_fit(const std::vector<std::int64_t>& c, std::int64_t max_period) {
    auto len = static_cast<std::int64_t>(c.size());
    for (std::int64_t p = 1; p <= max_period && 3 * p <= len; ++p) {
        bool ok = true;
        for (std::int64_t k = p; k < len && ok; ++k) {
            ok = c[static_cast<std::size_t>(k)] == c[static_cast<std::size_t>(k - p)];
        }
        if (ok) {
            return Periodicity{p, std::vector<std::int64_t>(c.begin(), c.begin() + p)};
        }
    }
    return std::nullopt;
}

/// The series with exponents c: prod_{n>=1} (1 - q^n)^(-c_n) modulo q^T.
inline QSeries euler_product(const std::vector<std::int64_t>& c, Exponent T) {
    QSeries f = QSeries::one(T);
    for (std::size_t k = 0; k < c.size(); ++k) {
        Exponent n(static_cast<std::int64_t>(k + 1));
        for (std::int64_t t = 0; t < c[k]; ++t) {
            f.div_binomial(Cyclo(1), n);
        }
        for (std::int64_t t = 0; t < -c[k]; ++t) {
            f.mul_binomial(Cyclo(1), n);
        }
    }
    return f;
}

} // namespace qbailey
