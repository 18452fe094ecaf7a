#include "qdwork/localring.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace qdwork;

namespace {

IntPoly P(std::initializer_list<long> c) { return IntPoly(c); }

RatPoly random_unit_ratpoly(unsigned long N)
{
    for (;;) {
        IntPoly a = qdtest::random_nonzero_poly(6, 6), b = qdtest::random_nonzero_poly(5, 6);
        if (phi_split(a, N).valuation == 0 && phi_split(b, N).valuation == 0)
            return RatPoly(a, b);
    }
}

RatPoly random_ratpoly(unsigned long N)
{
    IntPoly a = qdtest::random_nonzero_poly(5, 6), b = qdtest::random_nonzero_poly(4, 6);
    a *= pow(cyclotomic(N), static_cast<unsigned>(qdtest::uniform(0, 2)));
    b *= pow(cyclotomic(N), static_cast<unsigned>(qdtest::uniform(0, 2)));
    return RatPoly(a, b);
}

// The residue export must satisfy v_Phi(f - Phi^v u) >= v + w.
void expect_residue_valid(const RatPoly& f, unsigned long N, long w)
{
    LocalValue x = local_embed(f, N, w);
    RatPoly u = x.unit_residue();
    EXPECT_LT(u.num().degree(), static_cast<long>(w * euler_phi(N)));
    RatPoly approx = u * pow(RatPoly(cyclotomic(N)), static_cast<int>(x.valuation()));
    RatPoly diff = f - approx;
    if (!diff.is_zero())
        EXPECT_GE(phi_valuation(diff, N).valuation, x.valuation() + w) << f.to_string() << " N=" << N;
}

}  // namespace

TEST(LocalEmbed, Examples)
{
    auto a = local_embed(RatPoly(pow(cyclotomic(3), 2)), 3, 2);
    EXPECT_EQ(a.valuation(), 2);
    EXPECT_TRUE(a.unit_residue().equals(RatPoly(P({1}))));

    auto b = local_embed(RatPoly(P({1}), P({1, 1})), 3, 1);
    EXPECT_EQ(b.valuation(), 0);
    EXPECT_TRUE(b.unit_residue().equals(RatPoly(P({0, -1}))));

    auto c = local_embed(RatPoly(IntPoly::monomial(1, 6) - IntPoly::constant(1)), 3, 3);
    EXPECT_EQ(c.valuation(), 1);
    expect_residue_valid(RatPoly(IntPoly::monomial(1, 6) - IntPoly::constant(1)), 3, 3);
}

TEST(LocalArith, ValuationsAddAndCancellationZeroes)
{
    auto K = CycloField::get(5);
    auto x = local_embed(RatPoly(cyclotomic(5)), 5, 4);
    auto y = local_embed(RatPoly(pow(cyclotomic(5), 2)), 5, 4);
    auto xy = x * y;
    EXPECT_EQ(xy.valuation(), 3);
    EXPECT_TRUE(xy.unit_residue().equals(RatPoly(P({1}))));

    auto z = x - x;
    EXPECT_TRUE(z.is_zero());
    EXPECT_GE(z.valuation(), 1 + 4);
}

TEST(LocalArith, ForcedCancellationRaisesValuation)
{
    IntPoly g = P({2, -1, 3});
    RatPoly u2(P({-1}) + cyclotomic(3) * g);
    auto s = local_embed(RatPoly(P({1})), 3, 3) + local_embed(u2, 3, 3);
    EXPECT_GE(s.valuation(), 1);
    EXPECT_FALSE(s.is_zero());
    EXPECT_EQ(s.valuation(), 1);
}

TEST(LocalArith, RoundTripInverse)
{
    for (int t = 0; t < 500; ++t) {
        unsigned long N = static_cast<unsigned long>(qdtest::uniform(2, 15));
        long w = qdtest::uniform(1, 4);
        RatPoly f = random_unit_ratpoly(N);
        auto prod = local_embed(f, N, w) * local_embed(f.inverse(), N, w);
        ASSERT_FALSE(prod.is_zero());
        EXPECT_EQ(prod.valuation(), 0);
        EXPECT_TRUE(prod.unit_residue().equals(RatPoly(P({1}))));
    }
}

TEST(LocalArith, AgreesWithDenseArithmetic)
{
    for (int t = 0; t < 150; ++t) {
        unsigned long N = static_cast<unsigned long>(qdtest::uniform(2, 12));
        long w = qdtest::uniform(1, 4);
        RatPoly f = random_ratpoly(N), g = random_ratpoly(N);
        for (const RatPoly& h : {f * g, f + g, f - g}) {
            if (h.is_zero())
                continue;
            LocalValue lh = h.equals(f * g)   ? local_embed(f, N, w) * local_embed(g, N, w)
                            : h.equals(f + g) ? local_embed(f, N, w) + local_embed(g, N, w)
                                              : local_embed(f, N, w) - local_embed(g, N, w);
            long exact_v = phi_valuation(h, N).valuation;
            if (lh.is_zero()) {
                EXPECT_GE(exact_v, lh.valuation());
                continue;
            }
            EXPECT_EQ(lh.valuation(), exact_v);
            RatPoly approx = lh.unit_residue() * pow(RatPoly(cyclotomic(N)), static_cast<int>(lh.valuation()));
            RatPoly diff = h - approx;
            if (!diff.is_zero())
                EXPECT_GE(phi_valuation(diff, N).valuation, lh.absolute_precision());
        }
    }
}

TEST(LocalEmbed, ResidueExportIsValid)
{
    for (int t = 0; t < 100; ++t) {
        unsigned long N = static_cast<unsigned long>(qdtest::uniform(1, 12));
        expect_residue_valid(random_ratpoly(N), N, qdtest::uniform(1, 4));
    }
}

TEST(LocalPochhammer, CountingRule)
{
    for (long k = 0; k <= 30; ++k) {
        long expect_odd = 0;
        for (long j = 0; j < k; ++j)
            expect_odd += (j % 5 == 2);
        EXPECT_EQ(poch_valuation({1, 1, 2, 1}, k, 5), expect_odd);
        EXPECT_EQ(local_pochhammer({1, 1, 2, 1}, k, 5, 2).valuation(), expect_odd);
        EXPECT_EQ(poch_valuation({1, 2, 2, 1}, k, 5), k / 5);
    }
    auto one = local_pochhammer({1, 3, 4, 2}, 0, 7, 3);
    EXPECT_EQ(one.valuation(), 0);
    EXPECT_TRUE(one.unit_residue().equals(RatPoly(P({1}))));
    // 1 + q^m is divisible by Phi_N exactly when m is an odd multiple of N/2
    EXPECT_EQ(one_minus_valuation(-1, 3, 6), 1);
    EXPECT_EQ(one_minus_valuation(-1, 6, 6), 0);
    EXPECT_EQ(one_minus_valuation(-1, 1, 2), 1);
    EXPECT_EQ(one_minus_valuation(-1, 5, 5), 0);
}

TEST(LocalPochhammer, MatchesDenseEmbedding)
{
    for (int t = 0; t < 200; ++t) {
        PochFactorSpec spec{qdtest::uniform(0, 1) ? 1 : -1, qdtest::uniform(1, 6), qdtest::uniform(1, 5),
                            static_cast<int>(qdtest::uniform(-2, 2))};
        if (spec.exponent == 0)
            spec.exponent = 1;
        long k = qdtest::uniform(0, 30);
        unsigned long N = static_cast<unsigned long>(qdtest::uniform(2, 12));
        long w = qdtest::uniform(1, 3);
        auto a = local_pochhammer(spec, k, N, w);
        auto b = local_embed(q_pochhammer(spec, k), N, w);
        ASSERT_EQ(a.valuation(), b.valuation());
        auto d = a - b;
        EXPECT_TRUE(d.is_zero());
        EXPECT_GE(d.valuation(), a.valuation() + w);
    }
}
