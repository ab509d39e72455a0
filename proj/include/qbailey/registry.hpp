#pragma once

// Identity registry: JSON loading, validation and the LHS = RHS verifier.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qbailey/bailey.hpp"
#include "qbailey/terms.hpp"

namespace qbailey {

using json = nlohmann::json;

struct IdentityMeta {
    std::optional<long> d, e, k;
    Monomial a;
    Monomial rho1 = Monomial::infinity();
    Monomial rho2 = Monomial::infinity();
    std::optional<std::int64_t> N;
    Exponent q_scale{1};
    ProductSpec lemma_factor;  // finite normaliser between lemma and identity
    std::string attribution;
    std::string source_typo;
    std::string same_as;
    json raw = json::object();

    bool has_pair() const { return d && e && k; }
};

struct IdentitySpec {
    std::string id;
    TermSpec lhs;
    ProductSpec rhs;
    IdentityMeta meta;
};

class Registry {
  public:
    Registry() = default;
    explicit Registry(std::vector<IdentitySpec> entries) : entries_(std::move(entries)) {}

    const std::vector<IdentitySpec>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    const IdentitySpec* find(std::string_view id) const {
        for (const auto& e : entries_) {
            if (e.id == id) {
                return &e;
            }
        }
        return nullptr;
    }
    const IdentitySpec& at(std::string_view id) const {
        if (const auto* p = find(id)) {
            return *p;
        }
        throw ValidationError("no identity '" + std::string(id) + "' in registry");
    }

  private:
    std::vector<IdentitySpec> entries_;
};

namespace detail {

/// Field reader that prefixes every error with the JSON path being read.
class Reader {
  public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    const json& value() const { return j_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_ + ": " + what); }

    bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

    Reader operator[](const char* key) const {
        if (!j_.is_object()) {
            fail("expected an object");
        }
        if (!j_.contains(key)) {
            fail(std::string("missing field '") + key + "'");
        }
        return Reader(j_.at(key), path_ + "." + key);
    }
    Reader operator[](std::size_t k) const { return Reader(j_.at(k), path_ + "[" + std::to_string(k) + "]"); }

    std::vector<Reader> items() const {
        if (!j_.is_array()) {
            fail("expected an array");
        }
        std::vector<Reader> out;
        for (std::size_t k = 0; k < j_.size(); ++k) {
            out.push_back((*this)[k]);
        }
        return out;
    }

    std::string str() const {
        if (!j_.is_string()) {
            fail("expected a string");
        }
        return j_.get<std::string>();
    }

    std::int64_t integer() const {
        if (!j_.is_number_integer()) {
            fail("expected an integer");
        }
        return j_.get<std::int64_t>();
    }

    template <class F>
    auto guarded(F&& f) const {
        try {
            return f();
        } catch (const ParseError& ex) {
            fail(ex.what());
        }
    }

    Exponent exponent() const {
        if (j_.is_number_integer()) {
            return Exponent(j_.get<std::int64_t>());
        }
        return guarded([&] { return parse_exponent(str()); });
    }

    BigRational big_rational() const {
        if (j_.is_number_integer()) {
            return BigRational(j_.get<long>());
        }
        return guarded([&] { return parse_big_rational(str()); });
    }

    /// Units are tags such as "-1", "i", "omega", or coordinate 4-tuples.
    Cyclo unit() const {
        if (j_.is_array()) {
            if (j_.size() != 4) {
                fail("unit tuple must have four coordinates");
            }
            auto it = items();
            return Cyclo(it[0].big_rational(), it[1].big_rational(), it[2].big_rational(), it[3].big_rational());
        }
        if (j_.is_number_integer()) {
            return Cyclo(j_.get<long>());
        }
        return guarded([&] { return parse_cyclo(str()); });
    }

    Monomial monomial() const {
        if (j_.is_number_integer()) {
            return Monomial::constant(Cyclo(j_.get<long>()));
        }
        return guarded([&] { return parse_monomial(str()); });
    }

  private:
    const json& j_;
    std::string path_;
};

inline LinearForm read_linear(const Reader& r) {
    LinearForm f;
    f.n = r.has("n") ? r["n"].integer() : 0;
    f.r = r.has("r") ? r["r"].integer() : 0;
    f.c = r.has("c") ? r["c"].integer() : 0;
    return f;
}

inline QuadForm read_quad(const Reader& r) {
    QuadForm q;
    Exponent* slots[] = {&q.A, &q.B, &q.C, &q.D, &q.E, &q.F};
    const char* names[] = {"A", "B", "C", "D", "E", "F"};
    for (int k = 0; k < 6; ++k) {
        if (r.has(names[k])) {
            *slots[k] = r[names[k]].exponent();
        }
    }
    return q;
}

inline bool is_inf(const Reader& r) { return r.value().is_string() && r.value().get<std::string>() == "inf"; }

inline TermPoch read_term_poch(const Reader& r, int sign) {
    TermPoch f;
    f.a_power = r.has("a_power") ? static_cast<int>(r["a_power"].integer()) : 0;
    f.base_unit = r["base_unit"].unit();
    f.base_exp = r["base_exp"].exponent();
    f.step_unit = r["step_unit"].unit();
    f.step_exp = r["step_exp"].exponent();
    if (is_inf(r["length"])) {
        r.fail("summand factors must have finite length");
    }
    f.length = read_linear(r["length"]);
    f.power = sign * static_cast<int>(r.has("power") ? r["power"].integer() : 1);
    if (f.power == 0) {
        r.fail("power must be nonzero");
    }
    return f;
}

inline PochFactor read_product_factor(const Reader& r) {
    PochFactor f;
    f.base_unit = r["base_unit"].unit();
    f.base_exp = r["base_exp"].exponent();
    f.step_unit = r["step_unit"].unit();
    f.step_exp = r["step_exp"].exponent();
    f.power = static_cast<int>(r.has("power") ? r["power"].integer() : 1);
    Reader len = r["length"];
    if (is_inf(len)) {
        f.length = std::nullopt;
        if (!(f.step_exp > 0)) {
            r.fail("infinite product needs a positive step exponent");
        }
    } else {
        LinearForm lf = read_linear(len);
        if (lf.n != 0 || lf.r != 0) {
            r.fail("product factor length cannot depend on summation indices");
        }
        f.length = lf.c;
    }
    return f;
}

inline std::optional<long> read_opt_long(const Reader& m, const char* key) {
    if (!m.has(key) || m.value().at(key).is_null()) {
        return std::nullopt;
    }
    return m[key].integer();
}

inline IdentityMeta read_meta(const Reader& m) {
    IdentityMeta out;
    out.raw = m.value();
    out.d = read_opt_long(m, "d");
    out.e = read_opt_long(m, "e");
    out.k = read_opt_long(m, "k");
    if (m.has("a")) {
        out.a = m["a"].monomial();
    }
    if (m.has("rho1")) {
        out.rho1 = m["rho1"].monomial();
    }
    if (m.has("rho2")) {
        out.rho2 = m["rho2"].monomial();
    }
    if (m.has("N") && !is_inf(m["N"])) {
        out.N = m["N"].integer();
    }
    if (m.has("q_scale")) {
        out.q_scale = m["q_scale"].exponent();
        if (!(out.q_scale > 0)) {
            m["q_scale"].fail("must be positive");
        }
    }
    if (m.has("lemma_factor")) {
        for (const auto& f : m["lemma_factor"].items()) {
            out.lemma_factor.factors.push_back(read_product_factor(f));
        }
    }
    auto text = [&](const char* key, std::string& dst) {
        if (m.has(key)) {
            dst = m[key].str();
        }
    };
    text("attribution", out.attribution);
    text("source_typo", out.source_typo);
    text("same_as", out.same_as);
    return out;
}

inline IdentitySpec read_identity(const Reader& r) {
    IdentitySpec s;
    s.id = r["id"].str();
    if (s.id.empty()) {
        r["id"].fail("empty id");
    }
    Reader lhs = r["lhs"];
    s.lhs.indices = static_cast<int>(r.has("indices") ? r["indices"].integer() : 2);
    if (s.lhs.indices != 1 && s.lhs.indices != 2) {
        r["indices"].fail("must be 1 or 2");
    }
    if (lhs.has("units")) {
        for (const auto& u : lhs["units"].items()) {
            s.lhs.units.push_back(UnitPower{u["unit"].unit(), read_linear(u["power"])});
        }
    }
    s.lhs.q_exponent = read_quad(lhs["q_exponent"]);
    if (lhs.has("a_power")) {
        s.lhs.a_power = read_linear(lhs["a_power"]);
    }
    for (const auto* side : {"numerator", "denominator"}) {
        if (lhs.has(side)) {
            int sign = std::string_view(side) == "numerator" ? 1 : -1;
            for (const auto& f : lhs[side].items()) {
                s.lhs.factors.push_back(read_term_poch(f, sign));
            }
        }
    }
    for (const auto& f : r["rhs"].items()) {
        s.rhs.factors.push_back(read_product_factor(f));
    }
    if (r.has("meta")) {
        s.meta = read_meta(r["meta"]);
    }
    return s;
}

inline void validate_identity(const IdentitySpec& s) {
    const auto& q = s.lhs.q_exponent;
    if (s.lhs.indices == 1) {
        bool uses_r = q.B != Exponent(0) || q.C != Exponent(0) || q.E != Exponent(0) || s.lhs.a_power.r != 0;
        for (const auto& u : s.lhs.units) {
            uses_r = uses_r || u.power.r != 0;
        }
        for (const auto& f : s.lhs.factors) {
            uses_r = uses_r || f.length.r != 0;
        }
        if (uses_r) {
            throw ValidationError(s.id + ": single-index summand refers to r");
        }
    }
    if (!coercive(s.lhs)) {
        throw ValidationError(s.id + ": quadratic exponent is not coercive on the summation range");
    }
    if (s.meta.has_pair()) {
        try {
            require_dek(*s.meta.d, *s.meta.e, *s.meta.k);
        } catch (const Error& ex) {
            throw ValidationError(s.id + ": " + ex.what());
        }
    }
}

inline std::string line_context(const std::string& text, std::size_t byte) {
    std::size_t line = 1 + std::count(text.begin(), text.begin() + std::min(byte, text.size()), '\n');
    return "line " + std::to_string(line);
}

} // namespace detail

/// Parses registry JSON; `source` names the input in error messages.
inline Registry parse_registry(const std::string& text, const std::string& source = "<registry>") {
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) {
        return Registry();
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw ParseError(source + ": " + detail::line_context(text, ex.byte) + ": " + ex.what());
    }
    detail::Reader root(doc, source);
    std::vector<IdentitySpec> out;
    std::map<std::string, std::size_t> seen;
    for (const auto& item : root["identities"].items()) {
        IdentitySpec s = detail::read_identity(item);
        if (!seen.emplace(s.id, out.size()).second) {
            throw ValidationError(item.path() + ": duplicate id '" + s.id + "'");
        }
        detail::validate_identity(s);
        out.push_back(std::move(s));
    }
    return Registry(std::move(out));
}

inline Registry load_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open registry file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_registry(buf.str(), path);
}

#ifdef QBAILEY_DEFAULT_REGISTRY
inline constexpr const char* default_registry_path = QBAILEY_DEFAULT_REGISTRY;
#else
inline constexpr const char* default_registry_path = "data/identities.json";
#endif

inline QSeries eval_lhs(const IdentitySpec& s, Exponent T) { return sum_lhs(s.lhs, T, s.meta.a); }

inline QSeries eval_rhs(const IdentitySpec& s, Exponent T) { return product_spec_eval(s.rhs, T); }

enum class Status { pass, fail, error };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    default:
        return "error";
    }
}

struct IdentityReport {
    std::string id;
    Status status = Status::pass;
    Exponent order{0};
    std::optional<Comparison> mismatch;
    std::string error;
    double millis = 0;

    bool ok() const { return status == Status::pass; }
};

inline IdentityReport verify_identity(const IdentitySpec& s, Exponent T) {
    IdentityReport rep{s.id, Status::pass, T, std::nullopt, {}, 0};
    auto t0 = std::chrono::steady_clock::now();
    try {
        Comparison c = equal_to_order(eval_lhs(s, T), eval_rhs(s, T), T);
        if (!c.equal) {
            rep.status = Status::fail;
            rep.mismatch = c;
        }
    } catch (const Error& ex) {
        rep.status = Status::error;
        rep.error = ex.what();
    }
    rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline IdentityReport verify_identity(const Registry& reg, std::string_view id, Exponent T) {
    return verify_identity(reg.at(id), T);
}

struct Summary {
    std::vector<IdentityReport> reports;  // sorted by id
    Exponent order{0};

    std::size_t passed() const {
        return std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.ok(); });
    }
    std::size_t failed() const { return reports.size() - passed(); }
    bool ok() const { return failed() == 0; }
};

/// Verifies every entry. threads == 0 picks the hardware concurrency; the
/// report order is by id whatever the thread count.
inline Summary verify_all(const Registry& reg, Exponent T, unsigned threads = 1) {
    const auto& es = reg.entries();
    std::vector<IdentityReport> reports(es.size());
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, std::max<std::size_t>(1, es.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < es.size(); k = next++) {
            reports[k] = verify_identity(es[k], T);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    std::sort(reports.begin(), reports.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
    return Summary{std::move(reports), T};
}

/// Cross-check against the Bailey lemma: with the entry's (d, e, k), a and
/// limits, the Euler-normalised lemma sides, read in q^(1/q_scale) and times
/// the entry's finite lemma_factor, must equal the identity's two sides.
struct LemmaCheck {
    Comparison lhs_vs_product;
    Comparison rhs_vs_sum;
    bool ok() const { return lhs_vs_product.equal && rhs_vs_sum.equal; }
};

inline LemmaCheck lemma_cross_check(const IdentitySpec& s, Exponent T) {
    if (!s.meta.has_pair()) {
        throw ValidationError(s.id + ": entry names no Bailey pair");
    }
    Exponent scale = s.meta.q_scale;
    LemmaSpec L{s.meta.rho1, s.meta.rho2, s.meta.N, T * scale};
    // the lemma runs in q^(1/q_scale) of the identity, so substitute back
    Monomial a(s.meta.a.unit, s.meta.a.exp * scale);
    LemmaSides sides = bailey_lemma_sides(*s.meta.d, *s.meta.e, *s.meta.k, a, L);
    QSeries norm = product_spec_eval(s.meta.lemma_factor, T);
    QSeries lhs = (sides.lhs * sides.euler).scale_exponents(Exponent(1) / scale) * norm;
    QSeries rhs = (sides.rhs * sides.euler).scale_exponents(Exponent(1) / scale) * norm;
    return LemmaCheck{equal_to_order(lhs, eval_rhs(s, T), T), equal_to_order(rhs, eval_lhs(s, T), T)};
}

} // namespace qbailey
