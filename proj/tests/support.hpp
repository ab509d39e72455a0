#pragma once

// Shared helpers for the test suites: random generators and brute-force
// oracles that do not go through the library's product machinery.

#include <cstdint>
#include <random>
#include <vector>

#include "qbailey/cyclo.hpp"
#include "qbailey/qseries.hpp"

namespace qbailey::oracle {

inline QSeries from_ints(const std::vector<long>& coeffs, Exponent order) {
    std::vector<std::pair<Exponent, Cyclo>> terms;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] != 0) {
            terms.emplace_back(Exponent(static_cast<std::int64_t>(k)), Cyclo(coeffs[k]));
        }
    }
    return QSeries::from_terms(terms, order);
}

inline BigRational random_rational(std::mt19937& rng, int span = 5) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, span);
    BigRational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline Cyclo random_cyclo(std::mt19937& rng) {
    return Cyclo(random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng));
}

/// Random series with half-integer exponents in [lo, lo + span).
inline QSeries random_series(std::mt19937& rng, Exponent order, bool cyclotomic = true, int lo = 0, int span = 12) {
    std::uniform_int_distribution<int> pick(0, 2);
    std::vector<std::pair<Exponent, Cyclo>> terms;
    for (int k = 0; k < 2 * span; ++k) {
        if (pick(rng) == 0) {
            Cyclo c = cyclotomic ? random_cyclo(rng) : Cyclo(random_rational(rng));
            terms.emplace_back(Exponent(lo) + Exponent(k, 2), c);
        }
    }
    return QSeries::from_terms(terms, order);
}

/// Number of partitions of n into parts drawn from `parts`, n < limit.
inline std::vector<long> restricted_partitions(const std::vector<int>& parts, int limit) {
    std::vector<long> p(static_cast<std::size_t>(limit), 0);
    p[0] = 1;
    for (int part : parts) {
        for (int n = part; n < limit; ++n) {
            p[static_cast<std::size_t>(n)] += p[static_cast<std::size_t>(n - part)];
        }
    }
    return p;
}

inline std::vector<int> parts_in_residues(int modulus, const std::vector<int>& residues, int limit) {
    std::vector<int> parts;
    for (int n = 1; n < limit; ++n) {
        for (int r : residues) {
            if (n % modulus == r) {
                parts.push_back(n);
                break;
            }
        }
    }
    return parts;
}

} // namespace qbailey::oracle
