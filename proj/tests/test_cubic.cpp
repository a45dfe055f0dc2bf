#include <gtest/gtest.h>

#include <cubicpart/cubic.hpp>

using namespace cubicpart;

namespace {

// Explicit enumeration: partitions into parts 1, 2, 2', 3, 4, 4', ... with
// non-increasing part labels. Independent of both the DP and the series code.
long enumerate(long remaining, long max_label) {
    if (remaining == 0)
        return 1;
    long total = 0;
    // label 2k-1 is part k; for even k, label 2k is the second color of k.
    for (long label = std::min(max_label, 2 * remaining); label >= 1; --label) {
        const long part = (label + 1) / 2;
        if (label % 2 == 0 && part % 2 == 1)
            continue;
        if (part <= remaining)
            total += enumerate(remaining - part, label);
    }
    return total;
}

} // namespace

TEST(Cubic, FirstValues) {
    const CubicSeries a = cubic_series(10);
    EXPECT_EQ(a(0), 1);
    EXPECT_EQ(a(1), 1);
    EXPECT_EQ(a(2), 3);
    EXPECT_EQ(a(3), 4);
    EXPECT_EQ(a(4), 9);
    EXPECT_EQ(a(5), 12);
    EXPECT_THROW(a(11), Error);
    EXPECT_THROW(cubic_series(-1), Error);
}

TEST(Cubic, BruteForceExamples) {
    EXPECT_EQ(cubic_bruteforce(0), 1);
    EXPECT_EQ(cubic_bruteforce(2), 3);
    EXPECT_EQ(cubic_bruteforce(5), 12);
    for (long n = 0; n <= 20; ++n)
        EXPECT_EQ(cubic_bruteforce(n), enumerate(n, 2 * n)) << n;
    EXPECT_THROW(cubic_bruteforce(2001), Error);
}

TEST(Cubic, OracleTriangle) {
    const CubicSeries rec = cubic_series(200);
    const auto dp = cubic_bruteforce_table(200);
    const auto inv = cubic_via_inversion(200);
    for (long n = 0; n <= 200; ++n) {
        ASSERT_EQ(rec(n), dp[static_cast<std::size_t>(n)]) << n;
        ASSERT_EQ(rec(n), inv[static_cast<std::size_t>(n)]) << n;
    }
}

TEST(Cubic, PositiveAndNondecreasing) {
    const CubicSeries a = cubic_series(500);
    for (long n = 1; n <= 500; ++n) {
        EXPECT_GT(a(n), 0);
        EXPECT_GE(a(n), a(n - 1));
    }
}

TEST(Cubic, ResidueSeriesAgreeWithExact) {
    const CubicSeries exact = cubic_series(500);
    for (long m : {3L, 5L, 25L, 125L, 1L << 20}) {
        const CubicSeries r = cubic_series(500, CoefficientRing::residues(m));
        for (long n = 0; n <= 500; ++n)
            ASSERT_EQ(r(n), exact(n) % m) << m << ' ' << n;
    }
    // Moduli above the machine-word path take the big-integer route.
    const mpz_class big = mpz_class(1) << 70;
    const CubicSeries r = cubic_series(500, CoefficientRing::residues(big));
    for (long n = 0; n <= 500; ++n)
        ASSERT_EQ(r(n), exact(n) % big) << n;
}

TEST(Cubic, Mod5AtTwentyTwo) { EXPECT_EQ(cubic_series(22, CoefficientRing::residues(5))(22), 0); }

TEST(Delta, Values) {
    const DeltaPair d0 = delta_pair(0);
    EXPECT_EQ(d0.delta, 22);
    EXPECT_EQ(d0.delta_prime, 3);
    const DeltaPair d1 = delta_pair(1);
    EXPECT_EQ(d1.delta, 547);
    EXPECT_EQ(d1.delta_prime, 78);
    const DeltaPair d2 = delta_pair(2);
    EXPECT_EQ((8 * d2.delta) % 15625, 1);
    EXPECT_EQ(d2.delta, 13672);
    EXPECT_EQ(d2.delta_prime, 1953);
    EXPECT_THROW(delta_pair(-1), Error);
}

TEST(Delta, Identities) {
    for (long alpha = 1; alpha <= 6; ++alpha) {
        const DeltaPair d = delta_pair(alpha);
        const DeltaPair prev = delta_pair(alpha - 1);
        EXPECT_EQ((8 * d.delta) % d.modulus, 1);
        EXPECT_EQ(d.delta + d.delta_prime, d.modulus);
        EXPECT_EQ(d.delta_prime - prev.delta_prime, 3 * pow_ui(25, static_cast<unsigned long>(alpha)));
    }
}

// a(M n + delta) over n >= 0 is a(M m - delta') over m >= 1.
TEST(Delta, IndexTranslation) {
    for (long alpha = 0; alpha <= 3; ++alpha) {
        const DeltaPair d = delta_pair(alpha);
        for (long n = 0; n <= 10; ++n)
            EXPECT_EQ(d.modulus * n + d.delta, d.modulus * (n + 1) - d.delta_prime);
    }
}

TEST(Theorems, ModFiveProgression) {
    const Report r = verify_theorem(Theorem::thm12, 0, 2000);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.size(), 2000U);
    EXPECT_EQ(r.checks().back().text(), "THM 1.2 alpha=0 n=1999 index=49997 residue=0 mod=5 PASS");
    EXPECT_THROW(verify_theorem(Theorem::thm12, 1, 5), Error);
    EXPECT_THROW(verify_theorem(Theorem::thm12, 0, 0), Error);
}

TEST(Theorems, PowersOfFive) {
    const Report r1 = verify_theorem(Theorem::thm14, 1, 200);
    EXPECT_TRUE(r1.ok());
    EXPECT_EQ(*r1.checks().back().field("index"), "124922");
    const Report r2 = verify_theorem(Theorem::thm14, 2, 3);
    EXPECT_TRUE(r2.ok());
    EXPECT_EQ(*r2.checks().front().field("index"), "13672");
    EXPECT_EQ(*r2.checks().front().field("mod"), "125");
}

TEST(Theorems, PowersOfThree) {
    const Progression p1 = theorem_progression(Theorem::thm11, 1);
    EXPECT_EQ(p1.offset, 2);
    EXPECT_EQ(p1.modulus, 3);
    const Progression p2 = theorem_progression(Theorem::thm11, 2);
    EXPECT_EQ(p2.offset, 8);
    EXPECT_EQ(p2.modulus, 27);
    EXPECT_EQ(theorem_progression(Theorem::thm11, 3).modulus, 27);
    EXPECT_EQ(theorem_progression(Theorem::thm11, 4).modulus, 243);
    EXPECT_TRUE(verify_theorem(Theorem::thm11, 1, 10000).ok());
    EXPECT_TRUE(verify_theorem(Theorem::thm11, 2, 300).ok());
    EXPECT_TRUE(verify_theorem(Theorem::thm11, 3, 100).ok());
    EXPECT_TRUE(verify_theorem(Theorem::thm11, 4, 30).ok());
    EXPECT_THROW(theorem_progression(Theorem::thm11, 0), Error);
}

// A progression that is not a congruence must produce FAIL lines.
TEST(Theorems, FailuresAreVisible) {
    const Report r = verify_progression(Progression{25, 22, 25}, "x", 0, 4);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.with_outcome(Outcome::fail).front().status, "FAIL");
    EXPECT_FALSE(verify_progression(Progression{5, 4, 5}, "x", 0, 50).ok());
}

TEST(Identity, ThreeNPlusTwo) {
    const Report r = verify_3n2_identity(50);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.size(), 50U);
    EXPECT_EQ(*r.checks()[0].field("lhs"), "3");
    EXPECT_EQ(*r.checks()[1].field("lhs"), "12");
    EXPECT_EQ(*r.checks()[1].field("rhs"), "12");
    EXPECT_THROW(verify_3n2_identity(5), Error);
}

TEST(Pipeline, AllStagesPass) {
    const Report r = verify_u_pipeline(300);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.size(), 6U);
    EXPECT_EQ(*r.checks()[1].field("apoly"), "\"3A + 25A^2 + 125A^3\"");
    EXPECT_EQ(*r.checks()[5].field("coefficient"), "1");
    EXPECT_THROW(verify_u_pipeline(59), Error);
}
