#include "qdwork/summand.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace qdwork;

namespace {

IntPoly P(std::initializer_list<long> c)
{
    std::vector<mpz_class> v;
    for (long x : c)
        v.emplace_back(x);
    return IntPoly(v);
}

// value of a rational function at q = 1, through the limit
mpq_class at_one(const RatPoly& f) { return f.limit_at_one(); }

}  // namespace

TEST(Summand, TermExamples)
{
    // (1-q)^2 q^2 (1-q^2) / ((1-q^2)^2 (1-q^4)) = (1-q)^2 q^2 / ((1-q^2)(1-q^4))
    RatPoly f1 = term_q(q_family("F1"), 1);
    RatPoly want = RatPoly(P({1, -1}) * P({1, -1}) * P({0, 0, 1}), P({1, 0, -1}) * P({1, 0, 0, 0, -1}));
    EXPECT_TRUE(f1.equals(want));
    EXPECT_TRUE(term_q(q_family("F3"), 1).equals(RatPoly(P({1}), P({1, 1}) * P({1, 1}))));
    EXPECT_TRUE(term_q(q_family("F1"), 0).equals(RatPoly::constant(1)));

    EXPECT_EQ(term_classical(classical_family("H"), 2), mpq_class(27, 512));
    EXPECT_EQ(term_classical(classical_family("J"), 0), 1);
    EXPECT_EQ(term_classical(classical_family("J"), 1), mpq_class(7, 32));
    EXPECT_EQ(term_classical(classical_family("RV"), 1), mpq_class(1, 4));
    EXPECT_EQ(term_classical(classical_family("CB"), 3), 20);
    EXPECT_EQ(term_classical(classical_family("CB2"), 2), mpq_class(3, 2));
    EXPECT_EQ(term_classical(classical_family("K3"), 1), mpq_class(-5, 8));
    EXPECT_EQ(term_classical(classical_family("ONE"), 9), 1);
}

TEST(Summand, UnknownIds)
{
    EXPECT_THROW(q_family("F11"), std::invalid_argument);
    EXPECT_THROW(classical_family("X"), std::invalid_argument);
    EXPECT_THROW(classical_partner("F0"), std::invalid_argument);
}

TEST(Summand, LimitAtOneIsClassicalPartner)
{
    for (const auto& id : q_family_ids()) {
        const auto& c = classical_family(classical_partner(id));
        for (long k = 0; k <= 20; ++k)
            EXPECT_EQ(at_one(term_q(q_family(id), k)), term_classical(c, k)) << id << " k=" << k;
    }
}

TEST(Summand, ClassicalSumMatchesTermwise)
{
    for (const auto& id : classical_family_ids()) {
        const auto& c = classical_family(id);
        mpq_class s = 0;
        for (long k = 3; k <= 25; ++k)
            s += term_classical(c, k);
        EXPECT_EQ(sum_classical(c, 3, 25), s) << id;
    }
    EXPECT_EQ(sum_classical(classical_family("H"), 5, 4), 0);
}

TEST(Summand, ScaledTermIsSubstitution)
{
    for (const auto& id : q_family_ids())
        for (long k = 0; k <= 3; ++k) {
            RatPoly a = term_q(q_family(id), k, 3);
            RatPoly b = term_q(q_family(id), k);
            EXPECT_TRUE(a.equals(RatPoly(subst_power(b.num(), 3), subst_power(b.den(), 3)))) << id << " k=" << k;
        }
}

// Each classical term agrees with the q-term at q^n modulo Phi_n^2 (shown for F1).
TEST(Summand, ClassicalTermAgreesWithScaledQTerm)
{
    for (long n : {3, 5, 7, 9, 13}) {
        for (long k = 0; k <= 6; ++k) {
            RatPoly diff = term_q(q_family("F1"), k, n) -
                           RatPoly::constant(term_classical(classical_family("H"), k));
            if (diff.is_zero())
                continue;
            EXPECT_GE(phi_valuation(diff, static_cast<unsigned long>(n)).valuation, 2) << "n=" << n << " k=" << k;
        }
    }
}

TEST(Summand, ValuationsMatchDense)
{
    for (const auto& id : q_family_ids())
        for (unsigned long N : {3UL, 4UL, 5UL, 9UL})
            for (long m : {1L, 3L}) {
                auto tv = term_valuations(q_family(id), 0, 8, m, N);
                for (long k = 0; k <= 8; ++k) {
                    RatPoly t = term_q(q_family(id), k, m);
                    if (t.is_zero())
                        continue;
                    long v = phi_valuation(t, N).valuation;
                    EXPECT_EQ(tv[static_cast<std::size_t>(k)].total(), v) << id << " N=" << N << " m=" << m << " k=" << k;
                }
            }
}

TEST(Summand, TermLocalMatchesEmbed)
{
    auto ids = q_family_ids();
    for (int i = 0; i < 200; ++i) {
        const auto& id = ids[static_cast<std::size_t>(qdtest::uniform(0, static_cast<long>(ids.size()) - 1))];
        long k = qdtest::uniform(0, 6);
        long m = qdtest::uniform(1, 3);
        auto N = static_cast<unsigned long>(qdtest::uniform(2, 12));
        long w = qdtest::uniform(1, 4);
        LocalValue a = term_local(q_family(id), k, m, N, w);
        LocalValue b = local_embed(term_q(q_family(id), k, m), N, w);
        LocalValue d = a - b;
        ASSERT_TRUE(d.is_zero()) << id << " k=" << k << " m=" << m << " N=" << N;
        EXPECT_GE(d.valuation(), a.valuation() + w);
    }
}

TEST(Summand, SumLocalMatchesDense)
{
    for (const auto& id : q_family_ids())
        for (unsigned long N : {3UL, 5UL, 7UL, 9UL})
            for (long m : {1L, 3L}) {
                long lo = 0, hi = 10;
                const long A = 4;
                RatPoly dense = sum_q(q_family(id), lo, hi, m);
                LocalValue fast = sum_local(q_family(id), lo, hi, m, N, A);
                LocalValue ref = local_embed(dense, N, A + 12);
                LocalValue d = fast - ref;
                EXPECT_GE(d.valuation(), A) << id << " N=" << N << " m=" << m;
                EXPECT_GE(fast.absolute_precision(), A);
            }
}

TEST(Summand, SumLocalEmptyRange)
{
    EXPECT_TRUE(sum_local(q_family("F1"), 3, 2, 1, 5, 3).is_exact_zero());
}

TEST(Summand, LocalHelpers)
{
    LocalValue a = local_one_minus(1, 10, 5, 3);
    EXPECT_EQ(a.valuation(), 1);
    LocalValue b = local_q_power(-3, 5, 3) * local_q_power(3, 5, 3);
    EXPECT_TRUE((b - LocalValue::one(CycloField::get(5), 3)).is_zero());
    EXPECT_TRUE(local_constant(0, 5, 3).is_exact_zero());
    LocalValue c = local_constant(mpq_class(3, 7), 5, 3) * local_constant(7, 5, 3);
    EXPECT_TRUE((c - local_constant(3, 5, 3)).is_zero());
}
