#include "qdwork/qcomb.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace qdwork;

namespace {

IntPoly P(std::initializer_list<long> c) { return IntPoly(c); }

long powmod(long a, long e, long m)
{
    long r = 1 % m;
    a %= m;
    if (a < 0)
        a += m;
    for (; e > 0; e >>= 1, a = a * a % m)
        if (e & 1)
            r = r * a % m;
    return r;
}

// Kronecker symbol from the definition: factor b, Euler's criterion per odd prime.
int kronecker_oracle(long a, long b)
{
    if (b == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (b < 0) {
        b = -b;
        if (a < 0)
            sign = -1;
    }
    for (long p = 2; b > 1; ++p) {
        while (b % p == 0) {
            b /= p;
            int s;
            if (p == 2) {
                long r = ((a % 8) + 8) % 8;
                s = (a % 2 == 0) ? 0 : (r == 1 || r == 7) ? 1 : -1;
            } else {
                long e = powmod(a, (p - 1) / 2, p);
                s = e == 0 ? 0 : e == 1 ? 1 : -1;
            }
            sign *= s;
        }
    }
    return sign;
}

}  // namespace

TEST(QInteger, Examples)
{
    EXPECT_EQ(q_integer(5, 1), P({1, 1, 1, 1, 1}));
    EXPECT_EQ(q_integer(1, 7), P({1}));
    EXPECT_EQ(q_integer(3, 2), P({1, 0, 1, 0, 1}));
}

TEST(QPochhammer, Examples)
{
    EXPECT_TRUE(q_pochhammer({-1, 1, 1, 1}, 2).equals(RatPoly(P({1, 1}) * P({1, 0, 1}))));
    EXPECT_TRUE(q_pochhammer({1, 3, 4, -2}, 0).equals(RatPoly(P({1}))));
    EXPECT_TRUE(q_pochhammer({1, 1, 2, 1}, 2).equals(RatPoly(P({1, -1}) * P({1, 0, 0, -1}))));
    RatPoly inv = q_pochhammer({1, 1, 1, -2}, 2);
    EXPECT_TRUE((inv * q_pochhammer({1, 1, 1, 2}, 2)).equals(RatPoly(P({1}))));
}

TEST(QBinomial, Examples)
{
    EXPECT_EQ(q_binomial(2, 1), P({1, 1}));
    EXPECT_EQ(q_binomial(4, 2), P({1, 1, 2, 1, 1}));
    EXPECT_TRUE(q_binomial(3, 5).is_zero());
}

TEST(QBinomial, MatchesPochhammerQuotient)
{
    for (long M = 0; M <= 12; ++M)
        for (long K = 0; K <= M; ++K) {
            RatPoly quo = q_pochhammer({1, 1, 1, 1}, M) / (q_pochhammer({1, 1, 1, 1}, K) * q_pochhammer({1, 1, 1, 1}, M - K));
            EXPECT_TRUE(quo.equals(RatPoly(q_binomial(M, K))));
        }
}

TEST(QBinomial, ClassicalLimitAndPositivity)
{
    for (long M = 0; M <= 30; ++M)
        for (long K = 0; K <= M; ++K) {
            IntPoly g = q_binomial(M, K);
            EXPECT_EQ(g.eval(1), binomial(M, K));
            for (const auto& c : g.coeffs())
                EXPECT_GE(sgn(c), 0);
        }
}

TEST(Kronecker, Examples)
{
    EXPECT_EQ(kronecker(-3, 5), -1);
    EXPECT_EQ(kronecker(-2, 7), -1);
    EXPECT_EQ(kronecker(-3, 9), 0);
}

TEST(Kronecker, AgreesWithDefinition)
{
    for (long a = -30; a <= 30; ++a)
        for (long b = -40; b <= 40; ++b)
            EXPECT_EQ(kronecker(a, b), kronecker_oracle(a, b)) << a << "/" << b;
}

TEST(QLucas, Examples)
{
    EXPECT_TRUE(q_lucas_check(1, 1, 0, 1, 3));
    EXPECT_TRUE(q_lucas_check(0, 4, 0, 2, 7));
    EXPECT_TRUE(q_lucas_check(2, 0, 1, 0, 5));
    EXPECT_THROW(q_lucas_check(1, 5, 0, 1, 5), std::invalid_argument);
    // [10 choose 5]_q mod Phi_5 reduces to the constant 2
    IntPoly r = divrem(q_binomial(10, 5), cyclotomic(5)).second;
    EXPECT_EQ(r, P({2}));
}

TEST(QLucas, Randomized)
{
    for (int t = 0; t < 500; ++t) {
        long n = qdtest::uniform(3, 20);
        long a = qdtest::uniform(0, 4), r = qdtest::uniform(0, 4);
        long b = qdtest::uniform(0, n - 1), s = qdtest::uniform(0, n - 1);
        EXPECT_TRUE(q_lucas_check(a, b, r, s, n)) << a << " " << b << " " << r << " " << s << " " << n;
    }
}

TEST(NegQPochhammer, Randomized)
{
    for (int t = 0; t < 200; ++t) {
        long n = 2 * qdtest::uniform(1, 8) + 1;
        long r = qdtest::uniform(0, 5), s = qdtest::uniform(0, n - 1);
        EXPECT_TRUE(neg_q_pochhammer_check(r, s, n)) << r << " " << s << " " << n;
    }
}
