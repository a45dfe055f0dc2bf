#include <gtest/gtest.h>

#include <cubicpart/etaquot.hpp>

#include <vector>

using namespace cubicpart;

namespace {

std::vector<ExactRational> orders_at(const EtaQuotient& eq) {
    std::vector<ExactRational> out;
    for (const auto& [d, v] : ligozat_table(eq))
        out.push_back(v);
    return out;
}

std::vector<ExactRational> rationals(std::initializer_list<long> xs) {
    std::vector<ExactRational> out;
    for (long x : xs)
        out.emplace_back(x);
    return out;
}

} // namespace

TEST(EtaQuotient, ConstructionValidatesDivisors) {
    EXPECT_THROW(EtaQuotient(10, {{3, 1}}), Error);
    EXPECT_THROW(EtaQuotient(0, {}), Error);
    const EtaQuotient q(10, {{1, 0}, {5, 2}});
    EXPECT_EQ(q.exponents().size(), 1U);
    EXPECT_EQ(q.exponent(1), 0);
}

TEST(EtaQuotient, ParseAndFormat) {
    const EtaQuotient f = parse_eta_quotient("50; 25^1*50^1*1^-1*2^-1");
    EXPECT_EQ(f, f_quotient());
    EXPECT_EQ(format_eta_quotient(f), "50; 1^-1 * 2^-1 * 25^1 * 50^1");
    EXPECT_EQ(parse_eta_quotient(format_eta_quotient(a_quotient())), a_quotient());
    EXPECT_EQ(parse_eta_quotient("7;").exponents().size(), 0U);
    for (const char* bad : {"", "50", "50; 3^1", "50; 25", "x; 1^1", "50; 1^1 * 1^2", "50; 1^a"}) {
        try {
            parse_eta_quotient(bad);
            FAIL() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::parse_error) << bad;
        }
    }
}

TEST(EtaQuotient, NewmanConditions) {
    EXPECT_TRUE(check_newman(f_quotient()).is_modular_function);
    EXPECT_TRUE(check_newman(a_quotient()).is_modular_function);
    const NewmanCheck eta = check_newman(EtaQuotient(1, {{1, 1}}));
    EXPECT_EQ(eta.weight, make_rational(1, 2));
    EXPECT_FALSE(eta.is_modular_function);
    const NewmanCheck s2 = check_newman(EtaQuotient(2, {{1, -24}, {2, 24}}));
    EXPECT_TRUE(s2.cond_upper && s2.cond_lower);
    EXPECT_EQ(s2.s, make_rational(mpz_class(1) << 24));
    EXPECT_TRUE(s2.is_modular_function);
    // Upper sum not divisible by 24.
    EXPECT_FALSE(check_newman(EtaQuotient(2, {{1, 1}, {2, -1}})).cond_upper);
}

TEST(EtaQuotient, OrdersOfF) {
    EXPECT_EQ(ligozat_order(f_quotient(), Cusp{0, 1}), -3);
    EXPECT_EQ(orders_at(f_quotient()), rationals({-3, -3, 0, 0, 3, 3}));
}

TEST(EtaQuotient, OrdersOfA) {
    EXPECT_EQ(orders_at(a_quotient()), rationals({-1, -1, 1, 1}));
    EXPECT_EQ(orders_at(a_quotient().at_level(50)), rationals({-5, -5, 1, 1, 1, 1}));
    EXPECT_EQ(orders_at(EtaQuotient(50, {})), rationals({0, 0, 0, 0, 0, 0}));
}

TEST(EtaQuotient, OrderIndependentOfNumerator) {
    for (const EtaQuotient& q : {f_quotient(), a_quotient().at_level(50), (f_quotient() * a_quotient()).pow(-2)})
        for (const Cusp& c : cusp_representatives(50))
            EXPECT_EQ(ligozat_order(q, c), ligozat_order(q, Cusp{1, c.d})) << to_string(c);
}

TEST(EtaQuotient, CuspRepresentatives) {
    const auto c10 = cusp_representatives(10);
    ASSERT_EQ(c10.size(), 4U);
    EXPECT_EQ(c10[0], (Cusp{0, 1}));
    EXPECT_EQ(c10[1], (Cusp{1, 2}));
    EXPECT_EQ(c10[2], (Cusp{1, 5}));
    EXPECT_EQ(c10[3], (Cusp{1, 10}));

    const auto c50 = cusp_representatives(50);
    ASSERT_EQ(c50.size(), 12U);
    std::vector<std::int64_t> fives;
    std::size_t tens = 0;
    for (const Cusp& c : c50) {
        if (c.d == 5)
            fives.push_back(c.c);
        tens += c.d == 10 ? 1 : 0;
    }
    EXPECT_EQ(fives, (std::vector<std::int64_t>{1, 2, 3, 4}));
    EXPECT_EQ(tens, 4U);
    EXPECT_EQ(cusp_representatives(1).size(), 1U);
    for (std::int64_t n : {1, 2, 10, 12, 36, 50, 100})
        EXPECT_EQ(static_cast<std::int64_t>(cusp_representatives(n).size()), cusp_count(n)) << n;
}

// Weight-0 modular functions have as many zeros as poles, counted with the
// widths the Ligozat formula already includes.
TEST(EtaQuotient, DivisorDegreeIsZero) {
    for (const EtaQuotient& q : {f_quotient(), a_quotient(), a_quotient().at_level(50), f_quotient() * a_quotient().pow(3)}) {
        ExactRational total = 0;
        for (const Cusp& c : cusp_representatives(q.level()))
            total += ligozat_order(q, c);
        EXPECT_EQ(total, 0) << format_eta_quotient(q);
    }
}

TEST(EtaQuotient, U5OrderBounds) {
    const U5OrderBounds f = u5_order_bounds(ligozat_table(f_quotient()));
    EXPECT_EQ(f.raw.at(1), -3);
    EXPECT_EQ(f.raw.at(2), -3);
    EXPECT_EQ(f.raw.at(5), make_rational(3, 5));
    EXPECT_EQ(f.raw.at(10), make_rational(3, 5));
    EXPECT_EQ(f.ceiled.at(5), 1);
    EXPECT_EQ(f.ceiled.at(10), 1);

    const U5OrderBounds a = u5_order_bounds(ligozat_table(a_quotient().at_level(50)));
    EXPECT_EQ(a.raw.at(1), -5);
    EXPECT_EQ(a.raw.at(5), make_rational(1, 5));
    EXPECT_EQ(a.ceiled.at(10), 1);

    const U5OrderBounds z = u5_order_bounds(ligozat_table(EtaQuotient(50, {})));
    for (const auto& [d, v] : z.raw)
        EXPECT_EQ(v, 0);
    EXPECT_THROW(u5_order_bounds({{1, 0}}), Error);
}

TEST(EtaQuotient, Expansions) {
    const QSeries f = expand(f_quotient(), 10);
    EXPECT_EQ(f.vmin(), 3);
    std::vector<long> fc;
    for (Exponent n = 3; n < 10; ++n)
        fc.push_back(f.coeff(n).get_si());
    // q^8 is a(5) = 12.
    EXPECT_EQ(fc, (std::vector<long>{1, 1, 3, 4, 9, 12, 23}));

    const QSeries a = expand(a_quotient(), 8);
    EXPECT_EQ(a.vmin(), 1);
    std::vector<long> ac;
    for (Exponent n = 1; n < 7; ++n)
        ac.push_back(a.coeff(n).get_si());
    EXPECT_EQ(ac, (std::vector<long>{1, 2, 7, 14, 35, 64}));

    EXPECT_EQ(expand(EtaQuotient(6, {}), 10), QSeries::one(CoefficientRing::integers(), 10));
    EXPECT_THROW(expand(EtaQuotient(1, {{1, 1}}), 5), Error);
}

TEST(EtaQuotient, LeadingExponentIsOrderAtInfinity) {
    EXPECT_EQ(ligozat_order(f_quotient(), Cusp{1, 50}), expand(f_quotient(), 20).vmin());
    EXPECT_EQ(ligozat_order(a_quotient(), Cusp{1, 10}), expand(a_quotient(), 20).vmin());
}

TEST(EtaQuotient, ProductExpandsToProduct) {
    const EtaQuotient fa2 = f_quotient() * a_quotient().pow(2);
    EXPECT_EQ(fa2.level(), 50);
    const Exponent prec = 60;
    EXPECT_EQ(first_difference(expand(fa2, prec), mul(expand(f_quotient(), prec), int_pow(expand(a_quotient(), prec), 2))),
              std::nullopt);
    const EtaQuotient fam2 = f_quotient() * a_quotient().pow(-2);
    EXPECT_EQ(first_difference(expand(fam2, prec), mul(expand(f_quotient(), prec), int_pow(expand(a_quotient(), prec), -2))),
              std::nullopt);
}

TEST(EtaQuotient, ResidueExpansionAgrees) {
    const CoefficientRing r = CoefficientRing::residues(25);
    EXPECT_EQ(change_ring(expand(f_quotient(), 80), r), expand(f_quotient(), 80, r));
}
