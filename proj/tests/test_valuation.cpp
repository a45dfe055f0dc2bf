#include <gtest/gtest.h>

#include <cubicpart/valuation.hpp>

#include <random>

using namespace cubicpart;

namespace {

struct Built {
    Basis basis;
    UMatrix a;
    UMatrix b;
    std::vector<WVector> ws;
};

const Built& built() {
    static const Built m = [] {
        Built x{compute_basis(), {}, {}, {}};
        x.a = build_matrix(BasisKind::a, 78, 3, x.basis.sigma, x.basis.a_seeds);
        x.b = build_matrix(BasisKind::fa, 30, 3, x.basis.sigma, x.basis.fa_seeds);
        x.ws = w_iterate(x.a, x.b, 4);
        return x;
    }();
    return m;
}

// Independent 5-adic order by repeated division.
long order_by_division(mpz_class m) {
    long e = 0;
    while (m % 5 == 0) {
        m /= 5;
        ++e;
    }
    return e;
}

} // namespace

TEST(Val5, Examples) {
    EXPECT_EQ(pval5(125), Val5::finite(3));
    EXPECT_EQ(pval5(31250), Val5::finite(6));
    EXPECT_EQ(pval5(-825), Val5::finite(2));
    EXPECT_EQ(pval5(7), Val5::finite(0));
    EXPECT_TRUE(pval5(0).is_infinite());
    EXPECT_TRUE(pval5(0).at_least(1000000));
    EXPECT_EQ(pval5(0).to_string(), "inf");
}

TEST(Val5, UltrametricLaws) {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> exp5(0, 12);
    for (int trial = 0; trial < 500; ++trial) {
        mpz_class m = static_cast<long>(rng() % 100000) - 50000;
        mpz_class n = static_cast<long>(rng() % 100000) - 50000;
        mpz_class p5;
        mpz_ui_pow_ui(p5.get_mpz_t(), 5, static_cast<unsigned long>(exp5(rng)));
        m *= p5;
        mpz_ui_pow_ui(p5.get_mpz_t(), 5, static_cast<unsigned long>(exp5(rng)));
        n *= p5;
        EXPECT_EQ(pval5(m * n), pval5(m) + pval5(n));
        const Val5 lo = min(pval5(m), pval5(n));
        EXPECT_FALSE(pval5(m + n) < lo);
        if (!(pval5(m) == pval5(n)))
            EXPECT_EQ(pval5(m + n), lo);
        if (m != 0)
            EXPECT_EQ(pval5(m).value(), order_by_division(m));
    }
}

TEST(Lemmas, FirstLemmaHolds) {
    const Report r = check_lemma_4_1(built().a, 30);
    EXPECT_EQ(r.count(Outcome::fail), 0U);
    EXPECT_GT(r.size(), 1000U);
    EXPECT_EQ(pval5(built().a.entry(2, 10)), Val5::finite(15));
    EXPECT_EQ(pval5(built().a.entry(1, 1)), Val5::finite(1));
    EXPECT_EQ(lemma_4_1_bound(1, 1), 1);
}

TEST(Lemmas, PrintedOrderTableDiff) {
    const PublishedTables t = load_published_tables();
    const Report r = check_lemma_4_1(built().a, 5, &t);
    EXPECT_EQ(r.count(Outcome::fail), 0U);
    bool saw_remap = false;
    for (const Check& c : r.with_outcome(Outcome::warn)) {
        ASSERT_NE(c.field("printed"), nullptr);
        if (c.field("printed_j") != nullptr) {
            saw_remap = true;
            EXPECT_EQ(*c.field("j"), "11");
            EXPECT_EQ(*c.field("pi"), "18");
        }
    }
    EXPECT_TRUE(saw_remap);
    EXPECT_EQ(pval5(built().a.entry(3, 11)), Val5::finite(18));
    EXPECT_LE(r.count(Outcome::warn), 12U);
}

TEST(Lemmas, SecondLemmaHolds) {
    const Report r = check_lemma_4_2(built().b, 30);
    EXPECT_EQ(r.count(Outcome::fail), 0U);
    EXPECT_EQ(pval5(built().b.entry(1, 1)), Val5::finite(0));
    EXPECT_EQ(pval5(built().b.entry(2, 2)), Val5::finite(2));
    EXPECT_EQ(lemma_4_2_bound(2, 2), 1);
}

TEST(Lemmas, BoundViolationIsReported) {
    const UMatrix fake(BasisKind::a, {APoly({0, 1})});
    const Report r = check_lemma_4_1(fake, 1);
    EXPECT_EQ(r.count(Outcome::fail), 1U);
    EXPECT_EQ(r.with_outcome(Outcome::fail)[0].status, "VIOLATION");
    EXPECT_THROW(check_lemma_4_1(fake, 2), Error);
}

TEST(WVectors, RowDemand) {
    EXPECT_EQ(w_row_demand(1), std::make_pair(0L, 0L));
    EXPECT_EQ(w_row_demand(2), std::make_pair(3L, 0L));
    EXPECT_EQ(w_row_demand(4), std::make_pair(78L, 15L));
}

TEST(WVectors, Iteration) {
    const auto& ws = built().ws;
    ASSERT_EQ(ws.size(), 4U);
    EXPECT_EQ(ws[0].entries, (std::vector<mpz_class>{3, 25, 125}));
    // 3 a_11 + 25 a_21 + 125 a_31 from the built matrix.
    const mpz_class w21 = 3 * built().a.entry(1, 1) + 25 * built().a.entry(2, 1) + 125 * built().a.entry(3, 1);
    EXPECT_EQ(ws[1][1], w21);
    EXPECT_EQ(w21, 5630);
    EXPECT_LE(ws[1].support(), 15);
    EXPECT_LE(ws[2].support(), 78);
    EXPECT_LE(ws[3].support(), 390);
    EXPECT_EQ(w_iterate(built().a, built().b, 1).size(), 1U);
    EXPECT_THROW(w_iterate(build_matrix(BasisKind::a, 2, 0, built().basis.sigma, built().basis.a_seeds), built().b, 2), Error);
}

TEST(WVectors, ThirdLemmaAndCongruences) {
    const Report r = check_lemma_4_3(built().ws, 1);
    EXPECT_EQ(r.count(Outcome::fail), 0U);
    for (const mpz_class& e : built().ws[1].entries)
        EXPECT_EQ(e % 5, 0);
    for (const mpz_class& e : built().ws[3].entries)
        EXPECT_EQ(e % 25, 0);
    EXPECT_GE(pval5(built().ws[3][1]).value(), 2);
    EXPECT_THROW(check_lemma_4_3(built().ws, 2), Error);
}

// W_2 is U^2(F); as a q-series it must match the direct double U_5.
TEST(WVectors, SecondVectorIsDoubleU) {
    const Exponent window = 30;
    const QSeries direct = u_p(u_p(expand(f_quotient(), 25 * window), 5), 5);
    const QSeries via_w = evaluate(built().ws[1].to_apoly(), expand(a_quotient(), window), window);
    EXPECT_EQ(first_difference(direct, via_w), std::nullopt);
}

TEST(WVectors, CrossRepresentation) {
    EXPECT_EQ(cross_representation(built().ws[1], 0, 40).outcome, Outcome::pass);
    EXPECT_EQ(cross_representation(built().ws[3], 1, 40).outcome, Outcome::pass);
    EXPECT_THROW(cross_representation(built().ws[2], 1), Error);
}
