#pragma once

// The qbailey command line. run() parses, dispatches and returns the exit
// code: 0 when every check passes, 1 on a mismatch, 2 on usage or I/O errors.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbailey/bailey.hpp"
#include "qbailey/hypergeom.hpp"
#include "qbailey/recognizer.hpp"
#include "qbailey/registry.hpp"

namespace qbailey::cli {

enum Exit { ok = 0, mismatch = 1, usage = 2 };

/// Raised for bad user input that CLI11 cannot catch itself.
class UsageError : public Error {
  public:
    using Error::Error;
};

struct Options {
    std::string order;
    std::string format = "text";
    unsigned threads = 1;
    std::string registry;
    std::string output;
    bool no_timings = false;
};

namespace detail {

using ojson = nlohmann::ordered_json;

inline std::string env_or(const char* name, std::string fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : fallback;
}

inline Exponent order_of(const Options& o) {
    std::string text = o.order.empty() ? env_or("QBAILEY_ORDER", "60") : o.order;
    Exponent T;
    try {
        T = parse_exponent(text);
    } catch (const Error& ex) {
        throw UsageError("bad order '" + text + "': " + ex.what());
    }
    if (T < Exponent(0)) {
        throw UsageError("order must be nonnegative");
    }
    return T;
}

inline Registry registry_of(const Options& o) {
    std::string path = o.registry.empty() ? env_or("QBAILEY_REGISTRY", default_registry_path) : o.registry;
    try {
        return load_registry(path);
    } catch (const Error& ex) {
        throw UsageError(ex.what());
    }
}

inline Monomial monomial_arg(const std::string& text, const char* what) {
    try {
        return parse_monomial(text);
    } catch (const Error& ex) {
        throw UsageError(std::string("bad ") + what + " '" + text + "': " + ex.what());
    }
}

inline double millis(const Options& o, double ms) { return o.no_timings ? 0.0 : std::round(ms * 1000.0) / 1000.0; }

inline ojson mismatch_json(const Comparison& c) {
    return ojson{{"exponent", to_string(c.exponent)}, {"lhs", c.lhs.str()}, {"rhs", c.rhs.str()}};
}

inline std::string mismatch_text(const Comparison& c) {
    return "at q^" + to_string(c.exponent) + ": lhs " + c.lhs.str() + ", rhs " + c.rhs.str();
}

inline ojson report_json(const IdentityReport& r, const Options& o) {
    ojson j{{"id", r.id}, {"status", to_string(r.status)}, {"order", to_string(r.order)}};
    if (r.mismatch) {
        j["first_mismatch"] = mismatch_json(*r.mismatch);
    }
    if (!r.error.empty()) {
        j["error"] = r.error;
    }
    j["millis"] = millis(o, r.millis);
    return j;
}

inline std::string report_text(const IdentityReport& r, const Options& o) {
    std::ostringstream s;
    s << std::left << std::setw(6) << (r.ok() ? "PASS" : r.status == Status::fail ? "FAIL" : "ERROR") << std::setw(10)
      << r.id;
    if (r.mismatch) {
        s << " " << mismatch_text(*r.mismatch);
    }
    if (!r.error.empty()) {
        s << " " << r.error;
    }
    if (!o.no_timings) {
        s << " (" << std::fixed << std::setprecision(1) << r.millis << " ms)";
    }
    return s.str();
}

inline ojson series_json(const QSeries& f) {
    ojson terms = ojson::array();
    for (const auto& [e, c] : f.terms()) {
        terms.push_back(ojson::array({to_string(e), c.str()}));
    }
    return ojson{{"order", to_string(f.order())}, {"terms", terms}};
}

/// Resolves "ID", "ID.lhs" or "ID.rhs" against the registry.
struct SideRef {
    const IdentitySpec* spec;
    std::string side;  // "lhs", "rhs" or "" for both
};

inline SideRef side_ref(const Registry& reg, const std::string& target) {
    std::string id = target;
    std::string side;
    for (const char* s : {".lhs", ".rhs"}) {
        if (target.size() > 4 && target.ends_with(s)) {
            id = target.substr(0, target.size() - 4);
            side = s + 1;
        }
    }
    const IdentitySpec* p = reg.find(id);
    if (!p) {
        throw UsageError("no identity '" + id + "' in registry");
    }
    return {p, side};
}

/// Series from "exponent coefficient" lines; '#' starts a comment.
inline QSeries read_series(std::istream& in, Exponent T) {
    std::vector<std::pair<Exponent, Cyclo>> terms;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) {
            line.erase(h);
        }
        std::istringstream ls(line);
        std::string e, c;
        if (!(ls >> e)) {
            continue;
        }
        if (!(ls >> c)) {
            throw UsageError("line " + std::to_string(lineno) + ": expected 'exponent coefficient'");
        }
        try {
            terms.emplace_back(parse_exponent(e), parse_cyclo(c));
        } catch (const Error& ex) {
            throw UsageError("line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    return QSeries::from_terms(terms, T);
}

class Output {
  public:
    Output(const Options& o, std::ostream& out) : out_(out) {
        if (!o.output.empty()) {
            file_.open(o.output);
            if (!file_) {
                throw UsageError("cannot write '" + o.output + "'");
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : out_; }

  private:
    std::ostream& out_;
    std::ofstream file_;
};

inline bool json_format(const Options& o) {
    if (o.format != "text" && o.format != "json") {
        throw UsageError("format must be text or json");
    }
    return o.format == "json";
}

inline int verify_all_cmd(const Options& o, std::ostream& out) {
    Registry reg = registry_of(o);
    Exponent T = order_of(o);
    bool js = json_format(o);
    Summary sum = verify_all(reg, T, o.threads);
    Output w(o, out);
    if (js) {
        ojson entries = ojson::array();
        for (const auto& r : sum.reports) {
            entries.push_back(report_json(r, o));
        }
        ojson doc{{"order", to_string(T)},
                  {"passed", sum.passed()},
                  {"failed", sum.failed()},
                  {"identities", entries}};
        w.stream() << doc.dump(2) << "\n";
    } else {
        for (const auto& r : sum.reports) {
            w.stream() << report_text(r, o) << "\n";
        }
        w.stream() << sum.passed() << " passed, " << sum.failed() << " failed (order " << to_string(T) << ")\n";
    }
    return sum.ok() ? ok : mismatch;
}

inline int verify_identity_cmd(const Options& o, const std::string& id, std::ostream& out) {
    Registry reg = registry_of(o);
    Exponent T = order_of(o);
    bool js = json_format(o);
    const IdentitySpec* s = reg.find(id);
    if (!s) {
        throw UsageError("no identity '" + id + "' in registry");
    }
    IdentityReport r = verify_identity(*s, T);
    Output w(o, out);
    if (js) {
        w.stream() << report_json(r, o).dump(2) << "\n";
    } else {
        w.stream() << report_text(r, o) << "\n";
    }
    return r.ok() ? ok : mismatch;
}

inline int verify_pair_cmd(const Options& o, const std::string& id, const std::string& a, std::int64_t n,
                           std::ostream& out) {
    bool js = json_format(o);
    const PairFormula* f = nullptr;
    for (const auto& p : pair_formulas()) {
        if (p.id == id) {
            f = &p;
        }
    }
    if (!f) {
        throw UsageError("no Bailey pair '" + id + "'");
    }
    Exponent T = order_of(o);
    std::vector<Monomial> as = a.empty() ? standard_a_specs() : std::vector<Monomial>{monomial_arg(a, "a")};
    PairReport rep = verify_bailey_pair(*f, as, n, T);
    Output w(o, out);
    const PairCheck* bad = rep.first_failure();
    if (js) {
        ojson j{{"id", rep.id}, {"status", rep.ok() ? "pass" : "fail"}, {"order", to_string(T)},
                {"checks", rep.checks.size()}};
        if (bad) {
            ojson m{{"a", bad->a.str()}, {"n", bad->n}};
            if (!bad->error.empty()) {
                m["error"] = bad->error;
            } else {
                m.update(mismatch_json(bad->comparison));
            }
            j["first_mismatch"] = m;
        }
        w.stream() << j.dump(2) << "\n";
    } else {
        w.stream() << (rep.ok() ? "PASS " : "FAIL ") << rep.id << " (d,e,k) = (" << f->d << "," << f->e << "," << f->k
                   << "), " << rep.checks.size() << " checks to order " << to_string(T);
        if (bad) {
            w.stream() << "; a = " << bad->a.str() << ", n = " << bad->n << " "
                       << (bad->error.empty() ? mismatch_text(bad->comparison) : bad->error);
        }
        w.stream() << "\n";
    }
    return rep.ok() ? ok : mismatch;
}

inline int verify_transform_cmd(const Options& o, const std::string& id, const std::vector<std::string>& assign,
                                std::optional<std::int64_t> n, std::ostream& out) {
    bool js = json_format(o);
    const auto& ids = transformation_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
        throw UsageError("no transformation '" + id + "'");
    }
    Exponent T = order_of(o);
    std::vector<TransformSample> cases;
    if (assign.empty()) {
        cases = transformation_samples(id);
        if (n) {
            for (auto& c : cases) {
                c.n = *n;
            }
        }
    } else {
        TransformSample c;
        for (const auto& kv : assign) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw UsageError("--assign expects name=monomial, got '" + kv + "'");
            }
            c.assignment[kv.substr(0, eq)] = monomial_arg(kv.substr(eq + 1), "assignment");
        }
        for (const auto& p : transformation_parameters(id)) {
            if (!c.assignment.count(p)) {
                throw UsageError(id + " needs a value for '" + p + "'");
            }
        }
        c.n = n.value_or(3);
        cases.push_back(c);
    }
    Output w(o, out);
    ojson arr = ojson::array();
    bool all = true;
    for (const auto& c : cases) {
        ojson j{{"id", id}, {"n", c.n}, {"order", to_string(T)}};
        ojson params = ojson::object();
        for (const auto& [k, v] : c.assignment) {
            params[k] = v.str();
        }
        j["assignment"] = params;
        std::string line;
        try {
            TransformReport rep = verify_transformation(id, c.assignment, c.n, T);
            all = all && rep.equal();
            j["status"] = rep.equal() ? "pass" : "fail";
            line = rep.equal() ? "PASS" : "FAIL " + mismatch_text(rep.comparison);
            if (!rep.equal()) {
                j["first_mismatch"] = mismatch_json(rep.comparison);
            }
        } catch (const Error& ex) {
            all = false;
            j["status"] = "error";
            j["error"] = ex.what();
            line = std::string("ERROR ") + ex.what();
        }
        arr.push_back(j);
        if (!js) {
            std::string ps;
            for (const auto& [k, v] : c.assignment) {
                ps += (ps.empty() ? "" : ", ") + k + "=" + v.str();
            }
            w.stream() << id << " n=" << c.n << " [" << ps << "]: " << line << "\n";
        }
    }
    if (js) {
        w.stream() << arr.dump(2) << "\n";
    }
    return all ? ok : mismatch;
}

inline int lemma_cmd(const Options& o, const std::string& dek, const std::string& a, const std::string& rho1,
                     const std::string& rho2, const std::string& N, std::ostream& out) {
    bool js = json_format(o);
    std::vector<long> dk;
    std::istringstream parts(dek);
    for (std::string tok; std::getline(parts, tok, ',');) {
        try {
            dk.push_back(qbailey::detail::parse_int(tok, "d,e,k"));
        } catch (const Error&) {
            dk.clear();
            break;
        }
    }
    if (dk.size() != 3) {
        throw UsageError("expected d,e,k, got '" + dek + "'");
    }
    long d = dk[0], e = dk[1], k = dk[2];
    Exponent T = order_of(o);
    LemmaSpec L{monomial_arg(rho1, "rho1"), monomial_arg(rho2, "rho2"), std::nullopt, T};
    if (N != "inf") {
        try {
            L.N = qbailey::detail::parse_int(N, "N");
        } catch (const Error& ex) {
            throw UsageError(ex.what());
        }
    }
    Monomial am = monomial_arg(a, "a");
    LemmaSides sides;
    try {
        sides = bailey_lemma_sides(d, e, k, am, L);
    } catch (const DomainError& ex) {
        throw UsageError(ex.what());
    }
    Comparison c = equal_to_order(sides.lhs, sides.rhs, T);
    Output w(o, out);
    if (js) {
        ojson j{{"d", d}, {"e", e}, {"k", k}, {"a", am.str()}, {"rho1", rho1}, {"rho2", rho2}, {"N", N},
                {"order", to_string(T)}, {"status", c.equal ? "pass" : "fail"}};
        if (!c.equal) {
            j["first_mismatch"] = mismatch_json(c);
        }
        j["lhs"] = series_json(sides.lhs);
        j["rhs"] = series_json(sides.rhs);
        j["euler"] = series_json(sides.euler);
        w.stream() << j.dump(2) << "\n";
    } else {
        w.stream() << "lhs   = " << sides.lhs << "\n"
                   << "rhs   = " << sides.rhs << "\n"
                   << "euler = " << sides.euler << "\n"
                   << (c.equal ? "PASS" : "FAIL " + mismatch_text(c)) << "\n";
    }
    return c.equal ? ok : mismatch;
}

inline int expand_cmd(const Options& o, const std::string& target, std::ostream& out) {
    Registry reg = registry_of(o);
    Exponent T = order_of(o);
    bool js = json_format(o);
    SideRef ref = side_ref(reg, target);
    Output w(o, out);
    ojson j{{"id", ref.spec->id}};
    for (const char* side : {"lhs", "rhs"}) {
        if (!ref.side.empty() && ref.side != side) {
            continue;
        }
        QSeries f = std::string_view(side) == "lhs" ? eval_lhs(*ref.spec, T) : eval_rhs(*ref.spec, T);
        if (js) {
            j[side] = series_json(f);
        } else {
            w.stream() << ref.spec->id << "." << side << " = " << f << "\n";
        }
    }
    if (js) {
        w.stream() << j.dump(2) << "\n";
    }
    return ok;
}

inline int recognize_cmd(const Options& o, const std::string& target, const std::string& input,
                         std::int64_t max_period, std::istream& in, std::ostream& out) {
    bool js = json_format(o);
    Exponent T = order_of(o);
    QSeries f(T);
    std::string source;
    if (!target.empty()) {
        Registry reg = registry_of(o);
        SideRef ref = side_ref(reg, target);
        f = ref.side == "rhs" ? eval_rhs(*ref.spec, T) : eval_lhs(*ref.spec, T);
        source = ref.spec->id + "." + (ref.side.empty() ? "lhs" : ref.side);
    } else if (!input.empty() && input != "-") {
        std::ifstream file(input);
        if (!file) {
            throw UsageError("cannot read '" + input + "'");
        }
        f = read_series(file, T);
        source = input;
    } else {
        f = read_series(in, T);
        source = "stdin";
    }
    std::int64_t L = exponent_denominator(f);
    std::int64_t Tint = floor(T * L);
    EulerExponents ex;
    try {
        ex = product_exponents(f, Tint);
    } catch (const DomainError& err) {
        Output w(o, out);
        if (js) {
            w.stream() << ojson{{"source", source}, {"status", "fail"}, {"error", err.what()}}.dump(2) << "\n";
        } else {
            w.stream() << source << ": " << err.what() << "\n";
        }
        return mismatch;
    }
    auto fit = periodicity_fit(ex.c, max_period > 0 ? max_period : std::max<std::int64_t>(1, Tint / 3));
    Output w(o, out);
    if (js) {
        ojson j{{"source", source}, {"status", "pass"}, {"rescale", ex.rescale}, {"exponents", ex.c}};
        if (fit) {
            j["period"] = fit->period;
            j["pattern"] = fit->pattern;
        } else {
            j["period"] = nullptr;
        }
        w.stream() << j.dump(2) << "\n";
    } else {
        w.stream() << source << ": f = prod (1 - x^n)^(-c_n)";
        if (ex.rescale != 1) {
            w.stream() << " with x = q^(1/" << ex.rescale << ")";
        }
        w.stream() << "\nc_1.. = ";
        for (std::size_t k = 0; k < ex.c.size(); ++k) {
            w.stream() << (k ? " " : "") << ex.c[k];
        }
        w.stream() << "\n";
        if (fit) {
            w.stream() << "period " << fit->period << ", pattern on residues 1.." << fit->period << ": (";
            for (std::size_t k = 0; k < fit->pattern.size(); ++k) {
                w.stream() << (k ? "," : "") << fit->pattern[k];
            }
            w.stream() << ")\n";
        } else {
            w.stream() << "no period found\n";
        }
    }
    return ok;
}

inline int list_cmd(const Options& o, const std::string& what, std::ostream& out) {
    bool js = json_format(o);
    Output w(o, out);
    ojson arr = ojson::array();
    if (what == "identities") {
        Registry reg = registry_of(o);
        for (const auto& s : reg.entries()) {
            ojson j{{"id", s.id}};
            if (s.meta.has_pair()) {
                j["d"] = *s.meta.d;
                j["e"] = *s.meta.e;
                j["k"] = *s.meta.k;
            }
            j["a"] = s.meta.a.str();
            arr.push_back(j);
            if (!js) {
                w.stream() << std::left << std::setw(10) << s.id;
                if (s.meta.has_pair()) {
                    w.stream() << " (" << *s.meta.d << "," << *s.meta.e << "," << *s.meta.k << ") a=" << s.meta.a;
                }
                w.stream() << "\n";
            }
        }
    } else if (what == "pairs") {
        for (const auto& p : pair_formulas()) {
            arr.push_back(ojson{{"id", p.id}, {"d", p.d}, {"e", p.e}, {"k", p.k}});
            if (!js) {
                w.stream() << std::left << std::setw(8) << p.id << " (" << p.d << "," << p.e << "," << p.k << ")\n";
            }
        }
    } else if (what == "transforms") {
        for (const auto& id : transformation_ids()) {
            auto ps = transformation_parameters(id);
            arr.push_back(ojson{{"id", id}, {"parameters", ps}, {"terminating", transformation_terminates(id)}});
            if (!js) {
                w.stream() << std::left << std::setw(6) << id;
                for (const auto& p : ps) {
                    w.stream() << " " << p;
                }
                w.stream() << (transformation_terminates(id) ? " n" : "") << "\n";
            }
        }
    } else {
        throw UsageError("list takes identities, pairs or transforms");
    }
    if (js) {
        w.stream() << arr.dump(2) << "\n";
    }
    return ok;
}

} // namespace detail

/// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr,
               std::istream& in = std::cin) {
    CLI::App app{"Exact q-series verification of Bailey pairs and Rogers-Ramanujan type identities", "qbailey"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--order", o.order, "truncation order, a rational (default 60, or $QBAILEY_ORDER)");
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", o.threads, "worker threads for verify-all, 0 = all cores");
    app.add_option("--registry", o.registry, "identity file (default: bundled, or $QBAILEY_REGISTRY)");
    app.add_option("--output", o.output, "write the report to this file");
    app.add_flag("--no-timings", o.no_timings, "report 0 ms so output is reproducible");

    std::string id, a, lemma_a = "1", target, input, what = "identities", rho1 = "inf", rho2 = "inf", N = "inf", dek;
    std::vector<std::string> assign;
    std::int64_t pair_n = 6;
    std::int64_t max_period = 0;
    std::optional<std::int64_t> transform_n;

    auto* all = app.add_subcommand("verify-all", "verify every registry identity");
    auto* one = app.add_subcommand("verify-identity", "verify one registry identity");
    one->add_option("id", id, "identity id")->required();
    auto* pair = app.add_subcommand("verify-pair", "check a Bailey pair beta formula against its definition");
    pair->add_option("id", id, "pair id, e.g. BP123")->required();
    pair->add_option("--a", a, "value of a (default: 1, q, q^2, 3q)");
    pair->add_option("--n", pair_n, "largest n checked")->check(CLI::NonNegativeNumber);
    auto* tr = app.add_subcommand("verify-transform", "check a hypergeometric transformation");
    tr->add_option("id", id, "WQW, VJ1, VJ2, VJ3, VJ4 or VWP87")->required();
    tr->add_option("--assign", assign, "parameter values name=monomial");
    tr->add_option("--n", transform_n, "terminating index");
    auto* lem = app.add_subcommand("lemma", "evaluate both sides of the Bailey lemma");
    lem->add_option("dek", dek, "d,e,k")->required();
    lem->add_option("--a", lemma_a, "value of a (default 1)");
    lem->add_option("--rho1", rho1, "rho1 monomial or inf");
    lem->add_option("--rho2", rho2, "rho2 monomial or inf");
    lem->add_option("--N", N, "N or inf");
    auto* exp = app.add_subcommand("expand", "print a registry side as a series");
    exp->add_option("target", target, "ID, ID.lhs or ID.rhs")->required();
    auto* rec = app.add_subcommand("recognize", "sieve Euler product exponents and look for a period");
    rec->add_option("target", target, "ID, ID.lhs or ID.rhs");
    rec->add_option("--input", input, "file of 'exponent coefficient' lines, - for stdin");
    rec->add_option("--max-period", max_period, "largest period tried");
    auto* lst = app.add_subcommand("list", "list registry identities, pairs or transforms");
    lst->add_option("what", what, "identities, pairs or transforms");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& ex) {
        if (ex.get_exit_code() == 0) {
            out << app.help();
            return ok;
        }
        err << "qbailey: " << ex.what() << "\n\n" << app.help();
        return usage;
    }

    try {
        if (all->parsed()) {
            return detail::verify_all_cmd(o, out);
        }
        if (one->parsed()) {
            return detail::verify_identity_cmd(o, id, out);
        }
        if (pair->parsed()) {
            return detail::verify_pair_cmd(o, id, a, pair_n, out);
        }
        if (tr->parsed()) {
            return detail::verify_transform_cmd(o, id, assign, transform_n, out);
        }
        if (lem->parsed()) {
            return detail::lemma_cmd(o, dek, lemma_a, rho1, rho2, N, out);
        }
        if (exp->parsed()) {
            return detail::expand_cmd(o, target, out);
        }
        if (rec->parsed()) {
            return detail::recognize_cmd(o, target, input, max_period, in, out);
        }
        if (lst->parsed()) {
            return detail::list_cmd(o, what, out);
        }
    } catch (const UsageError& ex) {
        err << "qbailey: " << ex.what() << "\n";
        return usage;
    } catch (const std::exception& ex) {
        err << "qbailey: " << ex.what() << "\n";
        return mismatch;
    }
    return usage;
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args);
}

} // namespace qbailey::cli
