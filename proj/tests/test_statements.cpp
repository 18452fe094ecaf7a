#include "qdwork/qcomb.hpp"
#include "qdwork/statements.hpp"

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

CyclotomicModulus M(std::vector<CyclotomicFactor> f) { return CyclotomicModulus(std::move(f)); }

// [n] (q^3;q^4)_a / (q^5;q^4)_a with a = (n-1)/2
RatPoly main_prefactor(long n)
{
    long a = (n - 1) / 2;
    return RatPoly(q_integer(n)) * q_pochhammer({1, 3, 4, 1}, a) / q_pochhammer({1, 5, 4, 1}, a);
}

bool all_pass(const Report& r)
{
    for (const auto& f : r.factors)
        if (!f.pass)
            return false;
    return r.pass;
}

}  // namespace

TEST(Congruent, Examples)
{
    RatPoly one_plus = RatPoly(P({1, 1}));
    RatPoly a = RatPoly::constant(1) + RatPoly::constant(1) / (one_plus * one_plus);
    RatPoly b = RatPoly::constant(-1) * RatPoly::q_power(-2);
    auto v = congruent(a, b, M({{3, 2}}));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_TRUE(v[0].pass);
    EXPECT_EQ(v[0].achieved, 2);

    auto same = congruent(a, a, M({{5, 3}, {7, 1}}));
    for (const auto& f : same) {
        EXPECT_TRUE(f.pass);
        EXPECT_FALSE(f.achieved.has_value());
    }

    auto bad = congruent(RatPoly::constant(1), RatPoly(), M({{5, 1}}));
    EXPECT_FALSE(bad[0].pass);
    EXPECT_EQ(bad[0].achieved, 0);
}

TEST(Catalog, SizeStatusAndLookup)
{
    EXPECT_EQ(q_catalog().size(), 32u);
    long conj = 0;
    for (const auto& s : q_catalog()) {
        EXPECT_TRUE(s.status == "PROVEN" || s.status == "CONJECTURE") << s.id;
        conj += s.status == "CONJECTURE";
        EXPECT_TRUE(is_q_statement(s.id));
    }
    EXPECT_EQ(conj, 9);
    EXPECT_EQ(q_statement("C-65").status, "CONJECTURE");
    EXPECT_EQ(q_statement("Q-MAIN1").status, "PROVEN");
    EXPECT_THROW(q_statement("Q-NOPE"), UnknownStatement);
    EXPECT_FALSE(is_q_statement("P-H2"));
}

TEST(Modulus, Examples)
{
    EXPECT_EQ(modulus_of("Q-MAIN1", {5, 2, 1}), M({{5, 1}, {25, 2}}));
    EXPECT_EQ(modulus_of("Q-MAIN1", {5, 1, 2}), M({{5, 2}}));
    EXPECT_EQ(modulus_of("Q-T53a", {3, 2, 2}), M({{3, 1}, {9, 1}}));
    EXPECT_EQ(modulus_of("Q-T53a", {3, 2, 1}), M({{3, 1}, {9, 2}}));
    EXPECT_EQ(modulus_of("C-65", {5}), M({{5, 3}}));
    EXPECT_THROW(modulus_of("Q-MAIN1", {7, 1, 1}), ConstraintError);
}

TEST(Sides, Examples)
{
    Side rhs = build_rhs("Q-MAIN1", {5, 1, 1});
    ASSERT_TRUE(rhs.sum.has_value());
    EXPECT_EQ(rhs.sum->hi, 0);
    EXPECT_TRUE(eval_dense(rhs).equals(main_prefactor(5)));

    Side lp = build_rhs("Q-LP", {3});
    EXPECT_TRUE(lp.zero);
    EXPECT_TRUE(eval_dense(lp).is_zero());

    Side lem = build_rhs("Q-LEM22", {5, 1, 1, 2});
    EXPECT_TRUE(eval_dense(lem).equals(main_prefactor(5) * RatPoly::constant(mpq_class(9, 8))));
}

TEST(Sides, ConstraintErrors)
{
    EXPECT_THROW(build_instance("Q-MAIN1", {7, 1, 1}), ConstraintError);
    EXPECT_THROW(build_instance("Q-MAIN1", {6, 1, 1}), ConstraintError);
    EXPECT_THROW(build_instance("Q-MAIN1", {1, 1, 1}), ConstraintError);
    EXPECT_THROW(build_instance("Q-MAIN1", {5, 1, 3}), ConstraintError);
    EXPECT_THROW(verify_q("Q-MAIN1", {7, 1, 1}), ConstraintError);
    EXPECT_THROW(verify_q("Q-NOPE", {5}), UnknownStatement);
}

TEST(PrecisionPlan, Examples)
{
    EXPECT_EQ(precision_plan("Q-MAIN1", {5, 2, 1}, 5, 2, PlanSides::Lhs), 14);
    EXPECT_EQ(precision_plan("Q-MAIN1", {5, 1, 1}, 5, 2, PlanSides::Lhs), 2);
    EXPECT_GE(precision_plan("Q-MAIN1", {5, 2, 1}, 5, 2), 14);
    EXPECT_EQ(precision_plan("Q-MAIN1", {5, 1, 1}, 7, 3), 3);
}

TEST(VerifyQ, Examples)
{
    for (Engine e : {Engine::Dense, Engine::Local}) {
        VerifyOptions opt;
        opt.engine = e;
        Report gpz = verify_q("Q-GPZ", {3}, opt);
        EXPECT_TRUE(gpz.pass);
        ASSERT_EQ(gpz.factors.size(), 1u);
        EXPECT_EQ(gpz.factors[0].achieved, 2);
        EXPECT_TRUE(gpz.factors[0].exact);

        Report m1 = verify_q("Q-MAIN1", {5, 1, 2}, opt);
        EXPECT_TRUE(all_pass(m1));
        EXPECT_EQ(m1.factors.size(), 1u);
    }
    Report m = verify_q("Q-MAIN1", {5, 2, 1});
    EXPECT_TRUE(all_pass(m));
    EXPECT_EQ(m.factors.size(), 2u);
    EXPECT_EQ(m.factors[1].base, 25u);
    EXPECT_EQ(m.factors[1].required, 2);
}

TEST(VerifyQ, DegreeBudget)
{
    VerifyOptions opt;
    opt.engine = Engine::Dense;
    opt.degree_budget = 10;
    EXPECT_THROW(verify_q("Q-MAIN1", {5, 2, 1}, opt), DegreeBudgetExceeded);
}

TEST(VerifyQ, PrefactorStableInR)
{
    for (long n : {5L, 9L, 13L}) {
        Params p;
        p.n = n;
        p.r = 2;
        p.s = 1;
        Report r = verify_q("Q-LEM23", p);
        EXPECT_TRUE(all_pass(r)) << n;
        Report c = verify_q("C-63", p);
        EXPECT_EQ(c.status, "CONJECTURE");
        EXPECT_FALSE(c.factors.empty());
    }
}

TEST(VerifyQ, FlaggedVanishingCase)
{
    Report r = verify_q("Q-T53b", {3, 1, 1});
    EXPECT_TRUE(r.flagged);
    EXPECT_FALSE(r.notes.empty());
}

TEST(VerifyQ, ReportJsonRoundTrip)
{
    Report r = verify_q("Q-MAIN3", {5, 2, 2});
    auto j = to_json(r);
    EXPECT_EQ(report_from_json(j), r);
    EXPECT_EQ(j["params"]["n"], 5);
    EXPECT_EQ(j["factors"][0]["N"], 5);
    EXPECT_TRUE(j["pass"].get<bool>());
    Report z = verify_q("Q-LP", {3});
    EXPECT_EQ(report_from_json(to_json(z)), z);
}

TEST(VerifyQ, EnginesAgreeOnSmallInstances)
{
    long compared = 0;
    for (const auto& info : q_catalog())
        for (long n : {3L, 5L}) {
            Params p;
            p.n = n;
            p.r = 1;
            p.s = 1;
            p.k = 1;
            p.m = 2;
            for (long d : {1L, 2L}) {
                p.d = d;
                try {
                    check_constraint(info.id, p);
                } catch (const ConstraintError&) {
                    continue;
                }
                VerifyOptions dense;
                dense.engine = Engine::Dense;
                Report a = verify_q(info.id, p, dense);
                VerifyOptions local;
                for (const auto& f : a.factors)
                    if (f.achieved)
                        local.min_precision = std::max(local.min_precision, *f.achieved + 1);
                Report b = verify_q(info.id, p, local);
                EXPECT_TRUE(engines_agree(a, b)) << info.id << " n=" << n << " d=" << d;
                ++compared;
            }
        }
    EXPECT_GT(compared, 30);
}
