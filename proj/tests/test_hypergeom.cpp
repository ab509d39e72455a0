#include <random>

#include <gtest/gtest.h>

#include "qbailey/hypergeom.hpp"
#include "support.hpp"

using namespace qbailey;

namespace {

Monomial M(const char* s) { return parse_monomial(s); }

// 1 - m as a series known far beyond T
QSeries one_minus(const Monomial& m, Exponent T) {
    return QSeries::one(T) - QSeries::monomial(m.unit, m.exp, T);
}

// Brute-force phi: every term is built from explicit factor series and
// series inversion, and terms are summed for r < terms.
QSeries brute_phi(const PhiSpec& s, int terms, Exponent T) {
    Exponent work = T + 40;
    QSeries acc(T);
    for (int r = 0; r < terms; ++r) {
        QSeries num = QSeries::one(work);
        QSeries den = QSeries::one(work);
        for (int j = 0; j < r; ++j) {
            Monomial bj = s.base.pow(j);
            for (const auto& p : s.upper) {
                num = num * one_minus(p * bj, work);
            }
            for (const auto& p : s.lower) {
                den = den * one_minus(p * bj, work);
            }
            den = den * one_minus(s.base.pow(j + 1), work);
        }
        if (num.is_zero()) {
            continue;
        }
        Monomial z = s.argument.pow(r);
        acc += (num * invert(den)).shifted(z.unit, z.exp).truncated(T);
    }
    return acc;
}

} // namespace

TEST(Monomial, Parse) {
    EXPECT_EQ(M("q"), Monomial::q_pow(1));
    EXPECT_EQ(M("-q^2"), Monomial(Cyclo(-1), 2));
    EXPECT_EQ(M("3*q^(1/2)"), Monomial(Cyclo(3), Exponent(1, 2)));
    EXPECT_EQ(M("-1/2*q^(-3)"), Monomial(Cyclo(BigRational(-1, 2)), -3));
    EXPECT_EQ(M("i*q"), Monomial(Cyclo::i(), 1));
    EXPECT_EQ(M("-i"), Monomial(-Cyclo::i(), 0));
    EXPECT_EQ(M("omega*q^3"), Monomial(Cyclo::omega(), 3));
    EXPECT_TRUE(M("inf").infinite);
    EXPECT_EQ(M("q*q"), Monomial::q_pow(2));
    EXPECT_THROW(M("q^"), ParseError);
    EXPECT_THROW(M("x"), ParseError);
    EXPECT_EQ(M("4*q^2").root(2), Monomial(Cyclo(2), 1));
    EXPECT_THROW(M("3*q").root(2), DomainError);
}

TEST(PhiEval, FirstTermIsOne) {
    PhiSpec s{{M("3*q"), M("q^2")}, {M("q^5")}, M("q"), M("q")};
    EXPECT_EQ(phi_eval(s, 1).terms(), oracle::from_ints({1}, 1).terms());
}

TEST(PhiEval, TerminatesAtNegativePower) {
    PhiSpec s{{M("q^-2"), M("2*q")}, {M("q^3")}, M("q"), M("q^-1")};
    auto v = phi_eval(s, 20);
    EXPECT_TRUE(equal_to_order(v, brute_phi(s, 3, 20), 20).equal);
    EXPECT_TRUE(equal_to_order(v, brute_phi(s, 8, 20), 20).equal);
    auto vals = phi_term_valuations(s, 6);
    EXPECT_TRUE(vals[2].has_value());
    EXPECT_FALSE(vals[3].has_value());
    EXPECT_FALSE(vals[5].has_value());
}

TEST(PhiEval, TwoPhiOneAgainstBruteForce) {
    PhiSpec s{{M("q"), M("q")}, {M("q^2")}, M("q"), M("q")};
    auto v = phi_eval(s, 5);
    EXPECT_TRUE(equal_to_order(v, brute_phi(s, 6, 5), 5).equal);
    // sum_r q^r (q;q)_r/(q^2;q)_r = sum_r q^r (1-q)/(1-q^{r+1})
    EXPECT_EQ(v.coefficient(0), Cyclo(1));
    EXPECT_TRUE(equal_to_order(phi_eval(s, 25), brute_phi(s, 26, 25), 25).equal);
}

TEST(PhiEval, Errors) {
    PhiSpec diverge{{M("q")}, {M("q^2")}, M("q"), M("1")};
    EXPECT_THROW(phi_eval(diverge, 10), DomainError);
    PhiSpec zero_den{{M("q^-3")}, {M("q^-1")}, M("q"), M("q")};
    EXPECT_THROW(phi_eval(zero_den, 10), DivisionByZero);
    PhiSpec slow{{M("q")}, {M("q^2")}, M("q"), M("q")};
    EXPECT_THROW(phi_eval(slow, 10, 3), DomainError);
}

TEST(WEval, MatchesDefinitionalExpansion) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> ex(1, 5);
    std::uniform_int_distribution<int> unit(1, 4);
    std::uniform_int_distribution<int> len(0, 4);
    std::uniform_int_distribution<int> small(1, 2);
    for (int trial = 0; trial < 20; ++trial) {
        std::int64_t n = len(rng);
        Monomial a(Cyclo(unit(rng) * unit(rng)).pow(2), 2 * ex(rng));
        std::vector<Monomial> tail = {Monomial(Cyclo(unit(rng)), small(rng)), Monomial(Cyclo(-unit(rng)), small(rng)),
                                      Monomial::q_pow(-n)};
        WSpec w{a, tail, M("q"), Monomial(Cyclo(unit(rng)), ex(rng))};
        PhiSpec p = w_expand(w);
        ASSERT_EQ(p.upper.size(), 6u);
        ASSERT_EQ(p.lower.size(), 5u);
        EXPECT_TRUE(equal_to_order(w_eval(w, 30), phi_eval(p, 30), 30).equal);
        EXPECT_TRUE(equal_to_order(w_eval(w, 30), brute_phi(p, static_cast<int>(n) + 1, 30), 30).equal);
    }
}

TEST(WEval, TerminatingRationalCase) {
    WSpec w{M("q^2"), {M("q^-3"), M("2*q"), M("q^2")}, M("q"), M("q^4")};
    auto v = w_eval(w, 30);
    EXPECT_TRUE(v.has_rational_coefficients());
    EXPECT_TRUE(equal_to_order(v, brute_phi(w_expand(w), 4, 30), 30).equal);
}

TEST(WEval, EmptyTail) {
    WSpec w{M("q^2"), {}, M("q"), M("q")};
    auto v = w_eval(w, 20);
    EXPECT_EQ(v.coefficient(0), Cyclo(1));
    EXPECT_TRUE(equal_to_order(v, brute_phi(w_expand(w), 21, 20), 20).equal);
}

TEST(WEval, TermValuationsNondecreasing) {
    WSpec w{M("9*q^4"), {M("2*q"), M("3*q^2"), M("q")}, M("q"), M("q^2")};
    auto vals = phi_term_valuations(w_expand(w), 30);
    for (std::size_t r = 1; r < vals.size(); ++r) {
        ASSERT_TRUE(vals[r] && vals[r - 1]);
        EXPECT_LE(*vals[r - 1], *vals[r]);
    }
}

TEST(VwpOrder, Examples) {
    EXPECT_EQ(vwp_order(2, 1, 5), 9);
    EXPECT_EQ(vwp_order(1, 1, 2), 5);
    EXPECT_EQ(vwp_order(1, 2, 3), 7);
    EXPECT_THROW(vwp_order(0, 1, 1), DomainError);
}

struct TransformCase {
    std::string id;
    Assignment assignment;
    std::int64_t n;
};

class Transformations : public ::testing::TestWithParam<TransformCase> {};

TEST_P(Transformations, VerifyExactlyToOrder40) {
    const auto& c = GetParam();
    auto rep = verify_transformation(c.id, c.assignment, c.n, 40);
    EXPECT_TRUE(rep.equal()) << c.id << " mismatch at q^" << to_string(rep.comparison.exponent) << ": "
                             << rep.comparison.lhs << " vs " << rep.comparison.rhs;
    EXPECT_GE(rep.lhs.order(), Exponent(40));
    EXPECT_FALSE(rep.lhs.is_zero());
}

static std::vector<TransformCase> all_samples() {
    std::vector<TransformCase> out;
    for (const auto& id : transformation_ids()) {
        for (const auto& s : transformation_samples(id)) {
            out.push_back({id, s.assignment, s.n});
        }
    }
    return out;
}

INSTANTIATE_TEST_SUITE_P(
    AllSix, Transformations, ::testing::ValuesIn(all_samples()),
    [](const ::testing::TestParamInfo<TransformCase>& info) {
        return info.param.id + "_" + std::to_string(info.index);
    });

TEST(Transformations, ThreeSamplesEach) {
    for (const auto& id : transformation_ids()) {
        const auto& samples = transformation_samples(id);
        EXPECT_EQ(samples.size(), 3u) << id;
        for (const auto& s : samples) {
            if (transformation_terminates(id)) {
                EXPECT_GE(s.n, 2) << id;
                EXPECT_LE(s.n, 6) << id;
            }
        }
    }
    EXPECT_THROW(transformation_samples("VJ9"), DomainError);
}

TEST(Transformations, OmegaCasesHaveRationalSides) {
    for (auto a : {M("q^6"), M("4*q^4")}) {
        auto rep = verify_transformation("VJ3", {{"a", a}, {"x", M("q")}, {"y", M("q^2")}}, 2, 40);
        EXPECT_TRUE(rep.equal());
        EXPECT_TRUE(rep.lhs.has_rational_coefficients());
        EXPECT_TRUE(rep.rhs.has_rational_coefficients());
    }
    auto rep = verify_transformation("VJ4", {{"a", M("64*q^6")}, {"x", M("2*q")}, {"y", M("3*q^2")}}, 3, 40);
    EXPECT_TRUE(rep.lhs.has_rational_coefficients());
    EXPECT_TRUE(rep.rhs.has_rational_coefficients());
}

TEST(Transformations, ConjugationSymmetricAssignmentsAreRational) {
    // x = i q and y = -i q form a conjugate pair
    auto rep = verify_transformation("VJ1", {{"a", M("q^4")}, {"b", M("q")}, {"x", M("i*q")}, {"y", M("-i*q")}}, 3, 40);
    EXPECT_TRUE(rep.equal());
    EXPECT_TRUE(rep.lhs.has_rational_coefficients());
}

TEST(Transformations, CorruptionIsDetected) {
    Assignment p{{"a", M("q^4")}, {"b", M("q")}, {"c", M("q^2")}, {"d", M("q^3")}, {"e", M("q")}};
    auto rep = verify_transformation("WQW", p, 3, 40, {{"d", M("2*q^3")}});
    EXPECT_FALSE(rep.equal());
}

TEST(Transformations, Errors) {
    EXPECT_THROW(verify_transformation("NOPE", {}, 2, 10), DomainError);
    EXPECT_THROW(verify_transformation("WQW", {{"a", M("q^4")}}, 2, 10), DomainError);
    EXPECT_THROW(verify_transformation("VJ2", {{"a", M("3*q^2")}, {"b", M("q")}, {"x", M("q")}, {"y", M("q")}}, 2, 10),
                 DomainError);
}
