#include "qdwork/polyring.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace qdwork;

namespace {

IntPoly P(std::initializer_list<long> c) { return IntPoly(c); }

}  // namespace

TEST(IntPoly, BasicArithmetic)
{
    EXPECT_EQ(P({-1, 1}) * P({1, 1}), P({-1, 0, 1}));
    EXPECT_EQ(P({1, 2}) + P({-1, -2}), IntPoly());
    EXPECT_EQ(P({0, 0, 3}).degree(), 2);
    EXPECT_EQ(IntPoly().degree(), -1);
    EXPECT_EQ(P({1, 2, 0, 0}).coeffs().size(), 2u);
}

TEST(IntPoly, DivremMonic)
{
    auto [q, r] = divrem(P({-1, 0, 0, 0, 1}), P({1, 0, 1}));
    EXPECT_EQ(q, P({-1, 0, 1}));
    EXPECT_TRUE(r.is_zero());
    EXPECT_THROW(divrem(P({1, 1}), IntPoly()), std::domain_error);
}

TEST(IntPoly, DivremRoundTrip)
{
    for (int t = 0; t < 200; ++t) {
        IntPoly a = qdtest::random_poly(30, 50);
        IntPoly b = qdtest::random_poly(8, 20);
        std::vector<mpz_class> c = b.coeffs();
        c.resize(static_cast<std::size_t>(qdtest::uniform(1, 9)));
        c.back() = 1;
        b = IntPoly(c);
        auto [q, r] = divrem(a, b);
        EXPECT_EQ(b * q + r, a);
        EXPECT_LT(r.degree(), b.degree());
    }
}

TEST(IntPoly, KaratsubaMatchesSchoolbook)
{
    for (int t = 0; t < 20; ++t) {
        IntPoly a = qdtest::random_nonzero_poly(300, 1000);
        IntPoly b = qdtest::random_nonzero_poly(300, 1000);
        std::vector<mpz_class> c(a.coeffs().size() + b.coeffs().size() - 1);
        for (std::size_t i = 0; i < a.coeffs().size(); ++i)
            for (std::size_t j = 0; j < b.coeffs().size(); ++j)
                c[i + j] += a.coeffs()[i] * b.coeffs()[j];
        EXPECT_EQ(a * b, IntPoly(c));
    }
}

TEST(IntPoly, Gcd)
{
    IntPoly g = gcd(P({-1, 0, 1}), P({-1, 0, 0, 1}));
    EXPECT_EQ(g, P({-1, 1}));
    EXPECT_EQ(gcd(P({2, 4}), IntPoly()), P({1, 2}));
}

TEST(IntPoly, GcdOfProducts)
{
    for (int t = 0; t < 50; ++t) {
        IntPoly a = qdtest::random_nonzero_poly(6, 9);
        IntPoly b = qdtest::random_nonzero_poly(6, 9);
        IntPoly c = qdtest::random_nonzero_poly(4, 9);
        IntPoly g = gcd(a * c, b * c);
        // g is primitive, so divisibility over Q and over Z agree
        EXPECT_TRUE(exact_quotient(g, primitive_part(c)).has_value());
        EXPECT_TRUE(exact_quotient(a * c, g).has_value());
        EXPECT_TRUE(exact_quotient(b * c, g).has_value());
    }
}

TEST(Cyclotomic, SmallIndices)
{
    EXPECT_EQ(cyclotomic(1), P({-1, 1}));
    EXPECT_EQ(cyclotomic(4), P({1, 0, 1}));
    EXPECT_EQ(cyclotomic(5), P({1, 1, 1, 1, 1}));
    EXPECT_THROW(cyclotomic(0), std::domain_error);
}

TEST(Cyclotomic, ProductOverDivisorsIsQmMinusOne)
{
    for (unsigned long m = 1; m <= 200; ++m) {
        IntPoly prod = IntPoly::constant(1);
        for (unsigned long d = 1; d <= m; ++d)
            if (m % d == 0)
                prod *= cyclotomic(d);
        EXPECT_EQ(prod, IntPoly::monomial(1, m) - IntPoly::constant(1)) << "m=" << m;
    }
}

TEST(Cyclotomic, DegreeIsTotient)
{
    for (unsigned long n = 1; n <= 200; ++n)
        EXPECT_EQ(cyclotomic(n).degree(), static_cast<long>(euler_phi(n)));
}

TEST(PhiValuation, Examples)
{
    auto a = phi_valuation(RatPoly(P({-1, 0, 0, 0, 1})), 4);
    EXPECT_EQ(a.valuation, 1);
    EXPECT_TRUE(a.cofactor.equals(RatPoly(P({-1, 0, 1}))));

    auto b = phi_valuation(RatPoly(P({1}), pow(P({1, 1, 1}), 2)), 3);
    EXPECT_EQ(b.valuation, -2);

    auto c = phi_valuation(RatPoly(P({1, 2, 3, 2, 1}), P({0, 0, 1}) * P({1, 2, 1})), 3);
    EXPECT_EQ(c.valuation, 2);

    EXPECT_THROW(phi_valuation(RatPoly(), 3), std::domain_error);
}

TEST(PhiValuation, AdditiveUnderProducts)
{
    for (int t = 0; t < 1000; ++t) {
        unsigned long N = static_cast<unsigned long>(qdtest::uniform(2, 12));
        auto make = [&] {
            IntPoly num = qdtest::random_nonzero_poly(4, 5);
            IntPoly den = qdtest::random_nonzero_poly(3, 5);
            // plant some cyclotomic factors
            num *= pow(cyclotomic(N), static_cast<unsigned>(qdtest::uniform(0, 2)));
            den *= pow(cyclotomic(N), static_cast<unsigned>(qdtest::uniform(0, 2)));
            return RatPoly(num, den);
        };
        RatPoly f = make(), g = make();
        EXPECT_EQ(phi_valuation(f * g, N).valuation,
                  phi_valuation(f, N).valuation + phi_valuation(g, N).valuation);
    }
}

TEST(SubstPower, Examples)
{
    EXPECT_EQ(subst_power(P({1, 1}), 3), P({1, 0, 0, 1}));
    // Phi_5(q^5) = (q^25 - 1)/(q^5 - 1) = Phi_25
    EXPECT_EQ(subst_power(cyclotomic(5), 5), cyclotomic(25));
    EXPECT_EQ(subst_power(cyclotomic(5), 5) * cyclotomic(5) * cyclotomic(1), IntPoly::monomial(1, 25) - IntPoly::constant(1));
    RatPoly f(P({1}), P({1, -1}));
    EXPECT_TRUE(subst_power(f, 2).equals(RatPoly(P({1}), P({1, 0, -1}))));
}

TEST(RatPoly, ReducedNormalForm)
{
    RatPoly f(P({-2, 0, 2}), P({-4, 4}));
    RatPoly r = f.reduced();
    EXPECT_TRUE(r.is_reduced());
    EXPECT_EQ(r.num(), P({1, 1}));
    EXPECT_EQ(r.den(), P({2}));
    EXPECT_TRUE(r.equals(f));
}

TEST(RatPoly, NestedDenominatorSum)
{
    // 1/(1-q) + 1/((1-q)(1-q^2)) keeps the larger denominator
    RatPoly a(P({1}), P({1, -1}));
    RatPoly b(P({1}), P({1, -1}) * P({1, 0, -1}));
    RatPoly s = a + b;
    EXPECT_EQ(s.den().degree(), 3);
    EXPECT_TRUE(s.equals(RatPoly(P({2, 0, -1}), P({1, -1}) * P({1, 0, -1}))));
}

TEST(RatPoly, LimitAtOne)
{
    RatPoly f(P({1, -1}) * P({1, -1}), P({1, 0, -1}));
    EXPECT_EQ(f.limit_at_one(), mpq_class(0));
    RatPoly g(P({1, 0, -1}), P({1, -1}));
    EXPECT_EQ(g.limit_at_one(), mpq_class(2));
}

TEST(CyclotomicModulus, Validation)
{
    CyclotomicModulus m({{25, 2}, {5, 1}});
    EXPECT_EQ(m.factors().front().index, 5u);
    EXPECT_EQ(m.expand(), cyclotomic(5) * pow(cyclotomic(25), 2));
    EXPECT_THROW(CyclotomicModulus({{5, 1}, {5, 2}}), std::invalid_argument);
    EXPECT_THROW(CyclotomicModulus({{1, 1}}), std::invalid_argument);
    EXPECT_THROW(CyclotomicModulus({{3, 0}}), std::invalid_argument);
}
