#include <random>

#include <gtest/gtest.h>

#include "qbailey/qproducts.hpp"
#include "qbailey/qseries.hpp"
#include "support.hpp"

using namespace qbailey;
using oracle::from_ints;

namespace {

QSeries q_pow(Exponent e, Exponent order) { return QSeries::monomial(Cyclo(1), e, order); }

} // namespace

TEST(QSeries, Multiplication) {
    auto f = from_ints({1, -1}, 10);
    auto g = from_ints({1, 1}, 10);
    auto prod = f * g;
    EXPECT_EQ(prod.terms(), from_ints({1, 0, -1}, 10).terms());
    EXPECT_EQ(prod.order(), Exponent(10));

    auto h = q_pow(Exponent(1, 2), 10) * q_pow(Exponent(1, 2), 10);
    EXPECT_EQ(h.terms().size(), 1u);
    EXPECT_EQ(h.terms()[0].first, Exponent(1));
}

TEST(QSeries, TruncationRuleOfProducts) {
    // (1 - q mod q^3) * (1 mod q^5) -> 1 - q mod q^3
    auto f = from_ints({1, -1}, 3);
    auto g = from_ints({1}, 5);
    auto p = f * g;
    EXPECT_EQ(p.order(), Exponent(3));
    EXPECT_EQ(p.terms(), from_ints({1, -1}, 3).terms());
    // valuation raises the known range: q^2 (mod q^4) times 1 (mod q^5)
    auto r = q_pow(2, 4) * g;
    EXPECT_EQ(r.order(), Exponent(4));
    auto s = q_pow(2, 10) * from_ints({1}, 5);
    EXPECT_EQ(s.order(), Exponent(7));
}

TEST(QSeries, Inverse) {
    auto inv = invert(from_ints({1, -1}, 4));
    EXPECT_EQ(inv.terms(), from_ints({1, 1, 1, 1}, 4).terms());
    EXPECT_EQ(inv.order(), Exponent(4));

    auto half = invert(QSeries::constant(Cyclo(2), 5));
    EXPECT_EQ(half.coefficient(0), Cyclo(BigRational(1, 2)));

    EXPECT_THROW(invert(QSeries(Exponent(5))), DivisionByZero);
}

TEST(QSeries, InversePartitionOracle) {
    // 1/(q;q)_inf mod q^6 against partition counts
    auto euler = poch_inf(PochFactor::infinite(1, 1, 1, 1), 6);
    auto inv = invert(euler);
    auto counts = oracle::restricted_partitions({1, 2, 3, 4, 5}, 6);
    EXPECT_EQ(inv.terms(), from_ints(counts, 6).terms());
    EXPECT_EQ(counts, (std::vector<long>{1, 1, 2, 3, 5, 7}));
}

TEST(QSeries, InverseWithValuation) {
    // q^2 (1 - q) known mod q^8 -> q^-2 (1 + q + ...) known mod q^4
    auto f = q_pow(2, 8) - q_pow(3, 8);
    auto inv = invert(f);
    EXPECT_EQ(inv.order(), Exponent(4));
    EXPECT_EQ(inv.valuation(), Exponent(-2));
    auto one = f * inv;
    EXPECT_TRUE(equal_to_order(one, QSeries::one(2), 2).equal);
}

TEST(QSeries, ScaleExponents) {
    auto f = from_ints({1, 1}, 10);
    EXPECT_EQ(scale_exponents(f, 2).terms(), (from_ints({1, 0, 1}, 20)).terms());
    EXPECT_EQ(scale_exponents(f, 2).order(), Exponent(20));
    auto half = scale_exponents(f, Exponent(1, 2));
    EXPECT_EQ(half.terms()[1].first, Exponent(1, 2));
    EXPECT_EQ(half.order(), Exponent(5));
    EXPECT_THROW(scale_exponents(f, 0), DomainError);
    EXPECT_THROW(scale_exponents(f, -1), DomainError);
}

TEST(QSeries, ScaleIsRingHomomorphism) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = oracle::random_series(rng, 12, false);
        auto g = oracle::random_series(rng, 12, false);
        for (Exponent c : {Exponent(2), Exponent(1, 2), Exponent(3, 2)}) {
            auto lhs = scale_exponents(f * g, c);
            auto rhs = scale_exponents(f, c) * scale_exponents(g, c);
            EXPECT_EQ(lhs.order(), rhs.order());
            EXPECT_TRUE(equal_to_order(lhs, rhs, lhs.order()).equal);
        }
    }
}

TEST(QSeries, Coefficient) {
    auto f = from_ints({1, -1, -1, 0, 0, 1}, 7);
    EXPECT_EQ(f.coefficient(5), Cyclo(1));
    EXPECT_EQ(from_ints({1, 1}, 7).coefficient(Exponent(1, 2)), Cyclo(0));
    EXPECT_EQ(f.coefficient(6), Cyclo(0));
    EXPECT_THROW(f.coefficient(7), TruncationError);
    EXPECT_THROW(f.coefficient(8), TruncationError);
}

TEST(QSeries, EqualToOrder) {
    EXPECT_TRUE(equal_to_order(from_ints({1, 1}, 5), from_ints({1, 1}, 5), 2).equal);
    auto cmp = equal_to_order(from_ints({1, 1}, 5), from_ints({1, 2}, 5), 2);
    EXPECT_FALSE(cmp.equal);
    EXPECT_EQ(cmp.exponent, Exponent(1));
    EXPECT_EQ(cmp.lhs, Cyclo(1));
    EXPECT_EQ(cmp.rhs, Cyclo(2));
    EXPECT_TRUE(equal_to_order(from_ints({1}, 5), from_ints({1, 0, 0, 1}, 5), 2).equal);
    EXPECT_THROW(equal_to_order(from_ints({1}, 1), from_ints({1}, 5), 2), TruncationError);
}

TEST(QSeries, AdditionPrunesZerosAndTakesMinOrder) {
    auto f = from_ints({1, 1, 1}, 5);
    auto g = from_ints({0, -1, 0, 4}, 3);
    auto s = f + g;
    EXPECT_EQ(s.order(), Exponent(3));
    EXPECT_EQ(s.terms(), from_ints({1, 0, 1}, 3).terms());
    EXPECT_TRUE((f - f).is_zero());
    EXPECT_EQ((f - f).order(), Exponent(5));
}

TEST(QSeries, RingAxiomsToTruncation) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = oracle::random_series(rng, 9);
        auto g = oracle::random_series(rng, 10);
        auto h = oracle::random_series(rng, 11);
        auto lhs = (f + g) * h;
        auto rhs = f * h + g * h;
        Exponent common = std::min(lhs.order(), rhs.order());
        EXPECT_TRUE(equal_to_order(lhs, rhs, common).equal);
        auto fg = f * g;
        auto gf = g * f;
        EXPECT_EQ(fg.order(), gf.order());
        EXPECT_TRUE(equal_to_order(fg, gf, fg.order()).equal);
        auto assoc1 = (f * g) * h;
        auto assoc2 = f * (g * h);
        Exponent o = std::min(assoc1.order(), assoc2.order());
        EXPECT_TRUE(equal_to_order(assoc1, assoc2, o).equal);
    }
}

TEST(QSeries, InvertRoundTrip) {
    std::mt19937 rng(2024);
    int checked = 0;
    while (checked < 100) {
        auto f = oracle::random_series(rng, 8, true, -2);
        if (f.is_zero()) {
            continue;
        }
        auto inv = invert(f);
        auto one = f * inv;
        Exponent o = one.order();
        ASSERT_TRUE(equal_to_order(one, QSeries::one(o), o).equal) << f;
        ++checked;
    }
}

TEST(QSeries, BinomialFastPathsMatchGeneralProduct) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = oracle::random_series(rng, 10);
        Cyclo u = oracle::random_cyclo(rng);
        Exponent e(1 + trial % 3, 1 + trial % 2);
        auto binom = QSeries::one(100) - QSeries::monomial(u, e, 100);
        auto viaMul = f * binom;
        auto fast = f;
        fast.mul_binomial(u, e);
        EXPECT_TRUE(equal_to_order(fast, viaMul, 10).equal);
        auto slow = f * invert(binom);
        auto fastDiv = f;
        fastDiv.div_binomial(u, e);
        EXPECT_TRUE(equal_to_order(fastDiv, slow, 10).equal);
    }
}

TEST(QSeries, Rendering) {
    auto f = from_ints({1, 0, -1}, 5) + QSeries::monomial(Cyclo(2), Exponent(5, 2), 5);
    EXPECT_EQ(f.str(), "1 - q^(2) + 2*q^(5/2) (mod q^(5))");
    EXPECT_EQ(QSeries(Exponent(3)).str(), "0 (mod q^(3))");
}
