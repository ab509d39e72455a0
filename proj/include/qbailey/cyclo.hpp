#pragma once

// Exact arithmetic in the 12th cyclotomic field Q(zeta), zeta = exp(2 pi i/12).
//
// Elements are c0 + c1 z + c2 z^2 + c3 z^3 reduced modulo z^4 = z^2 - 1.
// The field contains i = z^3 and omega = z^4 = z^2 - 1.

#include <array>
#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qbailey/error.hpp"
#include "qbailey/rational.hpp"

namespace qbailey {

class Cyclo {
  public:
    Cyclo() = default;
    Cyclo(long v) : c_{BigRational(v), 0, 0, 0} {}
    Cyclo(BigRational v) : c_{std::move(v), 0, 0, 0} {}
    Cyclo(BigRational c0, BigRational c1, BigRational c2, BigRational c3)
        : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

    static Cyclo zeta() { return Cyclo(0, 1, 0, 0); }
    static Cyclo i() { return Cyclo(0, 0, 0, 1); }
    static Cyclo omega() { return Cyclo(-1, 0, 1, 0); }

    /// zeta^k for any integer k.
    static Cyclo zeta_pow(long k) {
        k %= 12;
        if (k < 0) {
            k += 12;
        }
        Cyclo r(1);
        for (long j = 0; j < k; ++j) {
            r = r * zeta();
        }
        return r;
    }

    const BigRational& operator[](std::size_t k) const { return c_[k]; }
    const std::array<BigRational, 4>& coords() const { return c_; }

    bool is_zero() const { return sgn(c_[0]) == 0 && is_rational_tail_zero(); }
    bool is_rational() const { return is_rational_tail_zero(); }
    bool is_one() const { return is_rational_tail_zero() && c_[0] == 1; }
    bool is_minus_one() const { return is_rational_tail_zero() && c_[0] == -1; }
    const BigRational& rational_part() const { return c_[0]; }

    Cyclo operator-() const { return Cyclo(-c_[0], -c_[1], -c_[2], -c_[3]); }

    Cyclo& operator+=(const Cyclo& o) {
        for (std::size_t k = 0; k < 4; ++k) {
            if (sgn(o.c_[k]) != 0) {
                c_[k] += o.c_[k];
            }
        }
        return *this;
    }
    Cyclo& operator-=(const Cyclo& o) {
        for (std::size_t k = 0; k < 4; ++k) {
            if (sgn(o.c_[k]) != 0) {
                c_[k] -= o.c_[k];
            }
        }
        return *this;
    }
    Cyclo& operator*=(const Cyclo& o) {
        *this = *this * o;
        return *this;
    }
    Cyclo& operator/=(const Cyclo& o) {
        *this = *this * o.inverse();
        return *this;
    }

    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        if (b.is_rational()) {
            return a.scaled(b.c_[0]);
        }
        if (a.is_rational()) {
            return b.scaled(a.c_[0]);
        }
        std::array<BigRational, 7> p;
        for (std::size_t x = 0; x < 4; ++x) {
            if (sgn(a.c_[x]) == 0) {
                continue;
            }
            for (std::size_t y = 0; y < 4; ++y) {
                if (sgn(b.c_[y]) != 0) {
                    p[x + y] += a.c_[x] * b.c_[y];
                }
            }
        }
        // z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1
        return Cyclo(p[0] - p[4] - p[6], p[1] - p[5], p[2] + p[4], p[3] + p[5]);
    }

    friend bool operator==(const Cyclo& a, const Cyclo& b) { return a.c_ == b.c_; }

    /// Lexicographic order on coordinates; only used to key containers.
    friend bool operator<(const Cyclo& a, const Cyclo& b) {
        for (std::size_t k = 0; k < 4; ++k) {
            int c = cmp(a.c_[k], b.c_[k]);
            if (c != 0) {
                return c < 0;
            }
        }
        return false;
    }

    Cyclo scaled(const BigRational& s) const {
        if (sgn(s) == 0) {
            return Cyclo();
        }
        Cyclo r;
        for (std::size_t k = 0; k < 4; ++k) {
            if (sgn(c_[k]) != 0) {
                r.c_[k] = c_[k] * s;
            }
        }
        return r;
    }

    /// Image under the automorphism zeta -> zeta^k (k coprime to 12).
    Cyclo galois(long k) const {
        Cyclo zk = zeta_pow(k);
        Cyclo r(c_[0]);
        Cyclo power(1);
        for (std::size_t j = 1; j < 4; ++j) {
            power = power * zk;
            if (sgn(c_[j]) != 0) {
                r += power.scaled(c_[j]);
            }
        }
        return r;
    }

    /// Complex conjugation, zeta -> zeta^-1.
    Cyclo conj() const { return galois(11); }

    Cyclo inverse() const {
        if (is_zero()) {
            throw DivisionByZero("inverse of zero in Q(zeta_12)");
        }
        if (is_rational()) {
            return Cyclo(BigRational(1) / c_[0]);
        }
        Cyclo others = galois(5) * galois(7) * galois(11);
        Cyclo norm = *this * others;
        // the norm is rational by Galois invariance
        return others.scaled(BigRational(1) / norm.c_[0]);
    }

    Cyclo pow(long e) const {
        if (e < 0) {
            return inverse().pow(-e);
        }
        Cyclo result(1);
        Cyclo base = *this;
        while (e > 0) {
            if (e & 1) {
                result = result * base;
            }
            e >>= 1;
            if (e > 0) {
                base = base * base;
            }
        }
        return result;
    }

    /// k with zeta^k == *this, if this is a 12th root of unity.
    std::optional<int> root_of_unity_index() const {
        Cyclo z(1);
        for (int k = 0; k < 12; ++k) {
            if (z == *this) {
                return k;
            }
            z = z * zeta();
        }
        return std::nullopt;
    }

    /// Some y in the field with y^m == *this, restricted to y = s * zeta^j
    /// with s rational.
    std::optional<Cyclo> root(unsigned m) const {
        if (m == 0) {
            return std::nullopt;
        }
        if (is_zero()) {
            return Cyclo();
        }
        for (int k = 0; k < 12; ++k) {
            Cyclo rest = *this * zeta_pow(-k);
            if (!rest.is_rational()) {
                continue;
            }
            // *this = r * zeta^k, r rational
            BigRational r = rest.c_[0];
            int kk = k;
            if (sgn(r) < 0) {
                r = -r;
                kk = (k + 6) % 12;
            }
            auto s = exact_root(r, m);
            if (!s) {
                return std::nullopt;
            }
            for (int j = 0; j < 12; ++j) {
                if ((static_cast<long>(m) * j - kk) % 12 == 0) {
                    return zeta_pow(j).scaled(*s);
                }
            }
            return std::nullopt;
        }
        return std::nullopt;
    }

    /// Canonical rendering "a/b + (c/d)zeta + (e/f)zeta^2 + (g/h)zeta^3".
    std::string str() const {
        if (is_rational()) {
            return c_[0].get_str();
        }
        std::string out;
        static constexpr std::array<const char*, 4> names = {"", "zeta", "zeta^2", "zeta^3"};
        for (std::size_t k = 0; k < 4; ++k) {
            if (sgn(c_[k]) == 0) {
                continue;
            }
            if (!out.empty()) {
                out += " + ";
            }
            if (k == 0) {
                out += c_[k].get_str();
            } else {
                out += "(" + c_[k].get_str() + ")" + names[k];
            }
        }
        return out;
    }

    /// Short tag when the value is one of 0, +-1, +-i, omega, omega^2, or rational.
    std::string tag() const {
        if (is_rational()) {
            return c_[0].get_str();
        }
        if (*this == i()) {
            return "i";
        }
        if (*this == -i()) {
            return "-i";
        }
        if (*this == omega()) {
            return "omega";
        }
        if (*this == omega() * omega()) {
            return "omega^2";
        }
        return str();
    }

  private:
    bool is_rational_tail_zero() const { return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }

    std::array<BigRational, 4> c_{};
};

inline std::ostream& operator<<(std::ostream& os, const Cyclo& x) { return os << x.str(); }

namespace detail {

inline Cyclo parse_cyclo_atom(std::string_view s) {
    s = trim(s);
    if (s.empty()) {
        throw ParseError("empty unit");
    }
    if (s == "i") {
        return Cyclo::i();
    }
    if (s == "omega") {
        return Cyclo::omega();
    }
    if (s == "omega^2") {
        return Cyclo::omega() * Cyclo::omega();
    }
    if (s == "zeta") {
        return Cyclo::zeta();
    }
    if (s.starts_with("zeta^")) {
        return Cyclo::zeta_pow(parse_int(s.substr(5), "zeta power"));
    }
    return Cyclo(parse_big_rational(s));
}

} // namespace detail

/// Parses unit tags: rationals, "i", "-i", "omega", "omega^2", "zeta^k",
/// and '*'-products of those such as "3*i" or "-1/2*omega".
inline Cyclo parse_cyclo(std::string_view text) {
    auto s = detail::trim(text);
    bool neg = false;
    if (!s.empty() && s[0] == '-') {
        // "-3" is a rational on its own; "-i" needs the sign peeled
        auto rest = detail::trim(s.substr(1));
        if (!rest.empty() && (rest[0] < '0' || rest[0] > '9')) {
            neg = true;
            s = rest;
        }
    }
    Cyclo r(1);
    while (true) {
        auto star = s.find('*');
        r = r * detail::parse_cyclo_atom(s.substr(0, star));
        if (star == std::string_view::npos) {
            break;
        }
        s = s.substr(star + 1);
    }
    return neg ? -r : r;
}

} // namespace qbailey
