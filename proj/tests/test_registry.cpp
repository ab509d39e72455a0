#include <set>

#include <gtest/gtest.h>

#include "qbailey/registry.hpp"
#include "support.hpp"

using namespace qbailey;

namespace {

const Registry& shipped() {
    static const Registry reg = load_registry(default_registry_path);
    return reg;
}

std::vector<std::string> shipped_ids() {
    std::vector<std::string> out;
    for (const auto& e : shipped().entries()) {
        out.push_back(e.id);
    }
    return out;
}

std::string gtest_name(const ::testing::TestParamInfo<std::string>& info) {
    std::string s = info.param;
    for (char& c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c))) {
            c = '_';
        }
    }
    return s;
}

json shipped_json() {
    std::ifstream in(default_registry_path);
    return json::parse(in);
}

// Truncated power series in x over the rationals, dense, x^k for k < size.
struct Dense {
    std::vector<BigRational> c;

    explicit Dense(std::size_t n) : c(n) {}

    // multiply by (1 + s x^m)
    void mul(long s, std::size_t m) {
        for (std::size_t k = c.size(); k-- > m;) {
            c[k] += s * c[k - m];
        }
    }
    // divide by (1 + s x^m)
    void div(long s, std::size_t m) {
        for (std::size_t k = m; k < c.size(); ++k) {
            c[k] -= s * c[k - m];
        }
    }
};

} // namespace

TEST(Load, ShippedRegistryHasEveryEntry) {
    const auto& reg = shipped();
    EXPECT_EQ(reg.size(), 53u);
    for (const char* id : {"RRa1", "RRa2", "ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "PNS123", "ATNS123", "SS215",
                           "SS417", "PNS327", "PNS337", "ATNS417"}) {
        EXPECT_NE(reg.find(id), nullptr) << id;
    }
    std::set<std::string> ids;
    for (const auto& e : reg.entries()) {
        EXPECT_TRUE(ids.insert(e.id).second) << e.id;
    }
}

TEST(Load, EmptyInputIsEmptyRegistry) {
    EXPECT_TRUE(parse_registry("").empty());
    EXPECT_TRUE(parse_registry("  \n").empty());
    EXPECT_TRUE(parse_registry(R"({"identities": []})").empty());
}

TEST(Load, RejectsNonCoerciveEntry) {
    json doc = shipped_json();
    doc["identities"][0]["lhs"]["q_exponent"]["A"] = "0";
    EXPECT_THROW(parse_registry(doc.dump()), ValidationError);

    doc = shipped_json();
    auto& q = doc["identities"][12]["lhs"]["q_exponent"];
    q["B"] = "-10";
    EXPECT_THROW(parse_registry(doc.dump()), ValidationError);
}

TEST(Load, RejectsDuplicateIds) {
    json doc = shipped_json();
    doc["identities"][3]["id"] = doc["identities"][2]["id"];
    try {
        parse_registry(doc.dump());
        FAIL() << "duplicate accepted";
    } catch (const ValidationError& ex) {
        EXPECT_NE(std::string(ex.what()).find("identities[3]"), std::string::npos) << ex.what();
    }
}

TEST(Load, ErrorsCarryContext) {
    try {
        parse_registry("{\n\"identities\": [\n  {,}\n]}", "reg.json");
        FAIL() << "malformed json accepted";
    } catch (const ParseError& ex) {
        EXPECT_NE(std::string(ex.what()).find("line 3"), std::string::npos) << ex.what();
    }
    json doc = shipped_json();
    doc["identities"][5]["lhs"]["q_exponent"]["C"] = "3/x";
    try {
        parse_registry(doc.dump());
        FAIL() << "bad rational accepted";
    } catch (const ParseError& ex) {
        EXPECT_NE(std::string(ex.what()).find("identities[5].lhs.q_exponent.C"), std::string::npos) << ex.what();
    }
    doc = shipped_json();
    doc["identities"][5]["rhs"][0].erase("step_exp");
    EXPECT_THROW(parse_registry(doc.dump()), ParseError);
    EXPECT_THROW(load_registry("/nonexistent/registry.json"), Error);
}

TEST(Load, UnitTuplesMatchTags) {
    json doc = shipped_json();
    auto& units = doc["identities"][0]["lhs"]["units"];
    units.push_back({{"unit", "i"}, {"power", {{"n", 4}}}});
    units.push_back({{"unit", {"0", "0", "0", "1"}}, {"power", {{"n", -4}}}});
    Registry reg = parse_registry(doc.dump());
    const auto& u = reg.entries()[0].lhs.units;
    ASSERT_EQ(u.size(), 2u);
    EXPECT_EQ(u[0].unit, u[1].unit);
    EXPECT_TRUE(verify_identity(reg.entries()[0], 20).ok());
}

TEST(Load, SingleIndexEntriesMayNotUseR) {
    json doc = shipped_json();
    ASSERT_EQ(doc["identities"][0]["indices"], 1);
    doc["identities"][0]["lhs"]["q_exponent"]["C"] = "1";
    EXPECT_THROW(parse_registry(doc.dump()), ValidationError);
}

TEST(Meta, AnnotationsAreCarried) {
    const auto& reg = shipped();
    EXPECT_EQ(reg.at("PNS223").meta.attribution, "due to S. O. Warnaar");
    EXPECT_EQ(reg.at("PNS224").meta.attribution, "due to G. E. Andrews");
    for (const char* id : {"ex6", "SS417", "PNS417-2", "PNS417"}) {
        EXPECT_FALSE(reg.at(id).meta.source_typo.empty()) << id;
    }
    const auto& m = reg.at("ATNS123").meta;
    EXPECT_EQ(m.rho2, parse_monomial("-q^(1/2)"));
    EXPECT_TRUE(m.rho1.infinite);
    EXPECT_FALSE(m.N.has_value());
    EXPECT_EQ(*m.d, 1);
    EXPECT_EQ(*m.e, 2);
    EXPECT_EQ(*m.k, 3);
    EXPECT_EQ(reg.at("PNS337").meta.a, parse_monomial("q^3"));
    EXPECT_EQ(reg.at("ex2").meta.same_as, "ATNS223");
}

TEST(SumLhs, RogersRamanujanPrefix) {
    // sum_n q^(n^2) / (q;q)_n with 1/(q;q)_n read off a partition count
    const int T = 30;
    std::vector<long> want(T, 0);
    for (int n = 0; n * n < T; ++n) {
        std::vector<int> parts;
        for (int j = 1; j <= n; ++j) {
            parts.push_back(j);
        }
        auto p = oracle::restricted_partitions(parts, T - n * n);
        for (int k = 0; k + n * n < T; ++k) {
            want[k + n * n] += p[k];
        }
    }
    QSeries got = eval_lhs(shipped().at("RRa1"), T);
    EXPECT_TRUE(equal_to_order(got, oracle::from_ints(want, T), T).equal);
    EXPECT_EQ(eval_lhs(shipped().at("RRa1"), 7).str(), oracle::from_ints({1, 1, 1, 1, 2, 2, 3}, 7).str());
    EXPECT_EQ(eval_rhs(shipped().at("RRa1"), 7).str(), oracle::from_ints({1, 1, 1, 1, 2, 2, 3}, 7).str());
}

TEST(SumLhs, NegativeLengthTermVanishes) {
    const auto& s = shipped().at("PNS417");
    EXPECT_TRUE(term_bag(s.lhs, s.meta.a, 1, 1).vanishes());
    EXPECT_TRUE(term_eval(s.lhs, s.meta.a, 1, 1, 20).is_zero());
    EXPECT_FALSE(term_bag(s.lhs, s.meta.a, 2, 1).vanishes());
}

TEST(SumLhs, HalfIntegerLatticeAgainstDirectSum) {
    // SS215 in x = q^(1/2): x^(n^2+n+2nr+3r^2+r) (-1;q)_{n+r} / ((q;q)_n (q;q)_r (q;q^2)_r)
    const std::size_t N = 20;
    Dense total(N);
    for (std::size_t n = 0; n * n < N; ++n) {
        for (std::size_t r = 0; 3 * r * r < N; ++r) {
            std::size_t e = n * n + n + 2 * n * r + 3 * r * r + r;
            if (e >= N) {
                continue;
            }
            Dense t(N);
            t.c[e] = 1;
            for (std::size_t j = 0; j < n + r; ++j) {
                t.mul(1, 2 * j);
            }
            for (std::size_t j = 1; j <= n; ++j) {
                t.div(-1, 2 * j);
            }
            for (std::size_t j = 1; j <= r; ++j) {
                t.div(-1, 2 * j);
            }
            for (std::size_t j = 0; j < r; ++j) {
                t.div(-1, 2 + 4 * j);
            }
            for (std::size_t k = 0; k < N; ++k) {
                total.c[k] += t.c[k];
            }
        }
    }
    std::vector<std::pair<Exponent, Cyclo>> terms;
    for (std::size_t k = 0; k < N; ++k) {
        terms.emplace_back(Exponent(static_cast<std::int64_t>(k), 2), Cyclo(total.c[k]));
    }
    Exponent T(10);
    QSeries want = QSeries::from_terms(terms, T);
    QSeries got = eval_lhs(shipped().at("SS215"), T);
    EXPECT_TRUE(equal_to_order(got, want, T).equal) << got.truncated(3) << " vs " << want.truncated(3);
    // half-integer coefficients, yet every lattice value n(n+1)/2 + nr + r(3r+1)/2 is integral
    EXPECT_EQ(shipped().at("SS215").lhs.q_exponent.A, Exponent(1, 2));
    for (const auto& [e, c] : got.terms()) {
        EXPECT_TRUE(is_integer(e)) << to_string(e);
    }
}

TEST(EvalRhs, ConstantTermsAndExtraFactors) {
    EXPECT_EQ(eval_rhs(shipped().at("PNS123"), 5).coefficient(0), Cyclo(1));
    // (-q;q^2)_inf contributes q^1 with coefficient 1 and the rest starts at q^2
    QSeries atns = eval_rhs(shipped().at("ATNS123"), 3);
    EXPECT_EQ(atns.coefficient(0), Cyclo(1));
    EXPECT_EQ(atns.coefficient(1), Cyclo(1));
    bool has_extra = false;
    for (const auto& f : shipped().at("ATNS123").rhs.factors) {
        has_extra = has_extra || (f.base_unit == Cyclo(-1) && f.base_exp == Exponent(1) && f.step_exp == Exponent(2));
    }
    EXPECT_TRUE(has_extra);
}

TEST(Verify, CorruptedModulusIsDetected) {
    IdentitySpec s = shipped().at("PNS224");
    for (auto& f : s.rhs.factors) {
        if (f.step_exp == Exponent(13)) {
            f.step_exp = 12;
            if (f.base_exp == Exponent(13)) {
                f.base_exp = 12;
            }
        }
    }
    auto rep = verify_identity(s, 60);
    EXPECT_EQ(rep.status, Status::fail);
    ASSERT_TRUE(rep.mismatch.has_value());
    EXPECT_NE(rep.mismatch->lhs, rep.mismatch->rhs);
    EXPECT_LT(rep.mismatch->exponent, Exponent(60));
}

TEST(Verify, OneCorruptedEntryGivesOneFailure) {
    json doc = shipped_json();
    doc["identities"][20]["lhs"]["q_exponent"]["F"] = "1";
    Registry reg = parse_registry(doc.dump());
    auto sum = verify_all(reg, 30, 4);
    EXPECT_EQ(sum.failed(), 1u);
    for (const auto& r : sum.reports) {
        EXPECT_EQ(r.ok(), r.id != reg.entries()[20].id) << r.id;
    }
}

TEST(Verify, ZeroOrderIsVacuous) {
    auto sum = verify_all(shipped(), 0);
    EXPECT_EQ(sum.passed(), shipped().size());
}

TEST(Verify, EvaluationErrorsAreRecorded) {
    IdentitySpec s = shipped().at("RRa1");
    // (1;q)_n in the denominator vanishes at n >= 1
    s.lhs.factors.push_back(TermPoch{0, Cyclo(1), 0, Cyclo(1), 1, LinearForm{1, 0, 0}, -1});
    auto rep = verify_identity(s, 10);
    EXPECT_EQ(rep.status, Status::error);
    EXPECT_FALSE(rep.error.empty());
}

TEST(Verify, ReportOrderIgnoresThreadCount) {
    auto one = verify_all(shipped(), 20, 1);
    auto many = verify_all(shipped(), 20, 8);
    ASSERT_EQ(one.reports.size(), many.reports.size());
    for (std::size_t k = 0; k < one.reports.size(); ++k) {
        EXPECT_EQ(one.reports[k].id, many.reports[k].id);
        EXPECT_EQ(one.reports[k].status, many.reports[k].status);
    }
    EXPECT_TRUE(std::is_sorted(one.reports.begin(), one.reports.end(),
                               [](const auto& x, const auto& y) { return x.id < y.id; }));
}

TEST(Verify, PassesAreStableUnderDoubledOrder) {
    auto low = verify_all(shipped(), 30, 0);
    auto high = verify_all(shipped(), 60, 0);
    for (std::size_t k = 0; k < low.reports.size(); ++k) {
        if (low.reports[k].ok()) {
            EXPECT_TRUE(high.reports[k].ok()) << high.reports[k].id;
        }
    }
}

class Entry : public ::testing::TestWithParam<std::string> {};

TEST_P(Entry, VerifiesToOrderSixty) {
    auto rep = verify_identity(shipped(), GetParam(), 60);
    EXPECT_TRUE(rep.ok()) << rep.error << (rep.mismatch ? " at q^" + to_string(rep.mismatch->exponent) : "");
}

TEST_P(Entry, SidesAreRational) {
    const auto& s = shipped().at(GetParam());
    EXPECT_TRUE(eval_lhs(s, 40).has_rational_coefficients());
    EXPECT_TRUE(eval_rhs(s, 40).has_rational_coefficients());
}

TEST_P(Entry, TripleBlocksMatchThetaSeries) {
    const auto& s = shipped().at(GetParam());
    auto blocks = triple_product_blocks(s.rhs);
    EXPECT_FALSE(blocks.empty());
    for (const auto& b : blocks) {
        EXPECT_TRUE(equal_to_order(product_spec_eval(triple_block_product(b), 60), jtp_theta_oracle(b.a, b.m, 60), 60)
                        .equal)
            << to_string(b.a) << " " << to_string(b.m);
    }
}

TEST_P(Entry, AgreesWithBaileyLemma) {
    auto c = lemma_cross_check(shipped().at(GetParam()), 30);
    EXPECT_TRUE(c.lhs_vs_product.equal) << "product side at q^" << to_string(c.lhs_vs_product.exponent);
    EXPECT_TRUE(c.rhs_vs_sum.equal) << "sum side at q^" << to_string(c.rhs_vs_sum.exponent);
}

INSTANTIATE_TEST_SUITE_P(Shipped, Entry, ::testing::ValuesIn(shipped_ids()), gtest_name);
