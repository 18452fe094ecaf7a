#include "qdwork/statements.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace qdwork {

PrefItem PrefItem::pochhammer(int sign, long a, long c, long count, int e)
{
    PrefItem it;
    it.kind = Kind::Poch;
    it.poch = PochFactorSpec{sign, a, c, e};
    it.count = count;
    return it;
}

PrefItem PrefItem::q_int(long n, long base)
{
    PrefItem it;
    it.kind = Kind::QInt;
    it.n = n;
    it.base = base;
    return it;
}

PrefItem PrefItem::q_pow(long t)
{
    PrefItem it;
    it.kind = Kind::QPow;
    it.t = t;
    return it;
}

PrefItem PrefItem::constant(const mpq_class& c)
{
    PrefItem it;
    it.kind = Kind::Const;
    it.c = c;
    return it;
}

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw ConstraintError(what);
}

long ipow(long b, long e)
{
    long r = 1;
    for (long i = 0; i < e; ++i) {
        if (r > (1L << 40) / std::max(1L, b))
            throw ConstraintError("parameters too large");
        r *= b;
    }
    return r;
}

long mod(long a, long m) { return ((a % m) + m) % m; }

/// num / den, which the statement needs to be an integer
long exact(long num, long den, const char* what)
{
    if (num % den != 0)
        throw MalformedInstance(std::string("non-integer ") + what);
    return num / den;
}

mpq_class sign_pow(long e) { return mod(e, 2) == 0 ? 1 : -1; }

// ---- constraint fragments

void n_big(const Params& p) { require(p.n > 1, "n > 1"); }
void n_odd(const Params& p)
{
    n_big(p);
    require(p.n % 2 == 1, "n odd");
}
void n_1mod4(const Params& p)
{
    n_big(p);
    require(mod(p.n, 4) == 1, "n = 1 (mod 4)");
}
void n_3mod4(const Params& p)
{
    n_big(p);
    require(mod(p.n, 4) == 3, "n = 3 (mod 4)");
}
void r_d(const Params& p)
{
    require(p.r >= 1, "r >= 1");
    require(p.d == 1 || p.d == 2, "d in {1, 2}");
}
void m_pos(const Params& p) { require(p.m >= 1, "m >= 1"); }
void r_gt_s(const Params& p) { require(p.s >= 1 && p.r > p.s, "r > s >= 1"); }

// ---- moduli

CyclotomicModulus single(long n, int e) { return CyclotomicModulus({{static_cast<unsigned long>(n), e}}); }

/// Phi_{n^r}^{top} prod_{j<=r} Phi_{n^j}
CyclotomicModulus tower(long n, long r, int top)
{
    std::vector<CyclotomicFactor> f;
    for (long j = 1; j <= r; ++j)
        f.push_back({static_cast<unsigned long>(ipow(n, j)), j == r ? 1 + top : 1});
    return CyclotomicModulus(f);
}

CyclotomicModulus all_squared(long n, long r)
{
    std::vector<CyclotomicFactor> f;
    for (long j = 1; j <= r; ++j)
        f.push_back({static_cast<unsigned long>(ipow(n, j)), 2});
    return CyclotomicModulus(f);
}

// ---- side pieces

Side sum_side(const std::string& family, long lo, long hi, long scale = 1)
{
    Side s;
    s.sum = SumPart{family, lo, hi, scale};
    return s;
}

Side zero_side()
{
    Side s;
    s.zero = true;
    return s;
}

void times(Side& s, const std::vector<PrefItem>& items) { s.pref.insert(s.pref.end(), items.begin(), items.end()); }

/// (q^3;q^4)_{(n^r-1)/2} (q^{5n};q^{4n})_{(n^{r-1}-1)/2} / ((q^5;q^4)_{(n^r-1)/2} (q^{3n};q^{4n})_{(n^{r-1}-1)/2})
std::vector<PrefItem> main_ratio(long n, long r)
{
    long a = (ipow(n, r) - 1) / 2, b = (ipow(n, r - 1) - 1) / 2;
    return {PrefItem::pochhammer(1, 3, 4, a), PrefItem::pochhammer(1, 5 * n, 4 * n, b),
            PrefItem::pochhammer(1, 5, 4, a, -1), PrefItem::pochhammer(1, 3 * n, 4 * n, b, -1)};
}

std::vector<PrefItem> pref_main1(long n, long r)
{
    auto v = main_ratio(n, r);
    v.insert(v.begin(), PrefItem::q_int(n));
    return v;
}

std::vector<PrefItem> pref_main3(long n, long r)
{
    auto v = main_ratio(n, r);
    v.insert(v.begin(), PrefItem::q_int(n, 2));
    v.push_back(PrefItem::q_pow(exact(1 - n, 2, "q-exponent")));
    return v;
}

/// (q^2;q^4)_{(n-1)/4}^2 / (q^4;q^4)_{(n-1)/4}^2 q^{(n-1)/2}
std::vector<PrefItem> h2_value(long n)
{
    long c = exact(n - 1, 4, "Pochhammer length");
    return {PrefItem::pochhammer(1, 2, 4, c, 2), PrefItem::pochhammer(1, 4, 4, c, -2),
            PrefItem::q_pow(exact(n - 1, 2, "q-exponent"))};
}

/// sign * q^{num/den}; a zero sign kills the side before the exponent is looked at
void signed_q_power(Side& s, long sign, long num, long den)
{
    if (sign == 0) {
        s.zero = true;
        return;
    }
    times(s, {PrefItem::constant(sign), PrefItem::q_pow(exact(num, den, "q-exponent"))});
}

Side dwork_lhs(const std::string& fam, const Params& p) { return sum_side(fam, 0, (ipow(p.n, p.r) - 1) / p.d); }
Side dwork_inner(const std::string& fam, const Params& p)
{
    return sum_side(fam, 0, (ipow(p.n, p.r - 1) - 1) / p.d, p.n);
}

mpq_class classical_prefix(const std::string& fam, long m) { return sum_classical(classical_family(fam), 0, m - 1); }

struct Entry {
    StatementInfo info;
    std::function<void(const Params&)> check;
    std::function<CyclotomicModulus(const Params&)> modulus;
    std::function<Instance(const Params&)> build;
};

Instance make(Side lhs, Side rhs) { return Instance{std::move(lhs), std::move(rhs), {}, false, {}}; }

std::vector<Entry> make_catalog()
{
    std::vector<Entry> c;
    const std::string P = "PROVEN", C = "CONJECTURE";
    const std::string dwork_text = "Phi_{n^r}^2 prod_{j<r} Phi_{n^j}";
    auto dwork_mod = [](const Params& p) { return tower(p.n, p.r, 1); };

    c.push_back({{"Q-H2A", P, "n odd, n>1", "Phi_n^2", "half-range H-sum q-analogue (both residue cases)", {"n"}},
                 n_odd, [](const Params& p) { return single(p.n, 2); },
                 [](const Params& p) {
                     Side rhs = mod(p.n, 4) == 1 ? Side{h2_value(p.n), std::nullopt, false} : zero_side();
                     return make(sum_side("F1", 0, (p.n - 1) / 2), rhs);
                 }});

    auto main1 = [](const Params& p) {
        Side rhs = dwork_inner("F1", p);
        times(rhs, pref_main1(p.n, p.r));
        return make(dwork_lhs("F1", p), rhs);
    };
    c.push_back({{"Q-MAIN1", P, "n=1 (4), n>1", dwork_text, "Dwork-type q-congruence for the H-family", {"n", "r", "d"}},
                 [](const Params& p) { n_1mod4(p); r_d(p); }, dwork_mod, main1});
    c.push_back({{"C-MAIN1-STRONG", C, "n=1 (4), n>1", "prod_{j<=r} Phi_{n^j}^2",
                  "Dwork-type q-congruence for the H-family, squared modulus", {"n", "r", "d"}},
                 [](const Params& p) { n_1mod4(p); r_d(p); },
                 [](const Params& p) { return all_squared(p.n, p.r); }, main1});

    c.push_back({{"Q-MAIN3", P, "n=1 (4), n>1", dwork_text, "Dwork-type q-congruence, (1+q^{4k+1}) family", {"n", "r", "d"}},
                 [](const Params& p) { n_1mod4(p); r_d(p); }, dwork_mod,
                 [](const Params& p) {
                     Side rhs = dwork_inner("F2", p);
                     times(rhs, pref_main3(p.n, p.r));
                     return make(dwork_lhs("F2", p), rhs);
                 }});

    c.push_back({{"Q-H2B", P, "n odd, n>1", "Phi_n^2", "half-range (1+q^{4k+1}) sum (both residue cases)", {"n"}},
                 n_odd, [](const Params& p) { return single(p.n, 2); },
                 [](const Params& p) {
                     Side rhs = mod(p.n, 4) == 1 ? Side{pref_main3(p.n, 1), std::nullopt, false} : zero_side();
                     return make(sum_side("F2", 0, (p.n - 1) / 2), rhs);
                 }});

    auto lem22 = [](const Params& p) {
        Side rhs;
        times(rhs, pref_main1(p.n, 1));
        rhs.pref.push_back(PrefItem::constant(classical_prefix("H", p.m)));
        return make(sum_side("F1", 0, p.m * p.n - 1), rhs);
    };
    c.push_back({{"Q-LEM22", P, "n=1 (4), n>1", "Phi_n", "full-period H-sum against the classical prefix", {"n", "m"}},
                 [](const Params& p) { n_1mod4(p); m_pos(p); }, [](const Params& p) { return single(p.n, 1); }, lem22});
    c.push_back({{"C-61", C, "n=1 (4), n>1", "Phi_n^2", "full-period H-sum against the classical prefix, squared", {"n", "m"}},
                 [](const Params& p) { n_1mod4(p); m_pos(p); }, [](const Params& p) { return single(p.n, 2); }, lem22});

    c.push_back({{"Q-EQUIV", P, "n=1 (4), n>1", "Phi_n^2", "two forms of the half-range H value", {"n"}},
                 n_1mod4, [](const Params& p) { return single(p.n, 2); },
                 [](const Params& p) {
                     return make(Side{h2_value(p.n), std::nullopt, false}, Side{pref_main1(p.n, 1), std::nullopt, false});
                 }});

    auto lem23 = [](const Params& p) {
        return make(Side{pref_main1(p.n, p.r), std::nullopt, false}, Side{pref_main1(p.n, p.s), std::nullopt, false});
    };
    c.push_back({{"Q-LEM23", P, "n=1 (4), n>1, r>s>=1", "Phi_{n^s}", "stability of the Dwork prefactor in r", {"n", "r", "s"}},
                 [](const Params& p) { n_1mod4(p); r_gt_s(p); },
                 [](const Params& p) { return single(ipow(p.n, p.s), 1); }, lem23});
    c.push_back({{"C-63", C, "n=1 (4), n>1, r>s>=1", "Phi_{n^s}^2", "stability of the Dwork prefactor, squared", {"n", "r", "s"}},
                 [](const Params& p) { n_1mod4(p); r_gt_s(p); },
                 [](const Params& p) { return single(ipow(p.n, p.s), 2); }, lem23});

    c.push_back({{"C-64", C, "n=1 (4), n>1, r>s>=1", "Phi_{n^s}^2", "stability of the quarter-length prefactor", {"n", "r", "s"}},
                 [](const Params& p) { n_1mod4(p); r_gt_s(p); },
                 [](const Params& p) { return single(ipow(p.n, p.s), 2); },
                 [](const Params& p) {
                     auto side = [&](long r) {
                         long a = (ipow(p.n, r) - 1) / 4, b = (ipow(p.n, r - 1) - 1) / 4;
                         return Side{{PrefItem::pochhammer(1, 1, 2, a), PrefItem::pochhammer(1, 2 * p.n, 2 * p.n, b),
                                      PrefItem::pochhammer(1, 2, 2, a, -1), PrefItem::pochhammer(1, p.n, 2 * p.n, b, -1)},
                                     std::nullopt,
                                     false};
                     };
                     return make(side(p.r), side(p.s));
                 }});

    auto diff = [](const Params& p) {
        Side rhs;
        times(rhs, pref_main3(p.n, 1));
        rhs.pref.push_back(PrefItem::constant(classical_prefix("H", p.m)));
        return make(sum_side("F2", 0, p.m * p.n - 1), rhs);
    };
    c.push_back({{"Q-DIFF", P, "n=1 (4), n>1", "Phi_n", "full-period (1+q^{4k+1}) sum against the classical prefix", {"n", "m"}},
                 [](const Params& p) { n_1mod4(p); m_pos(p); }, [](const Params& p) { return single(p.n, 1); }, diff});
    c.push_back({{"C-62", C, "n=1 (4), n>1", "Phi_n^2",
                  "full-period (1+q^{4k+1}) sum against the classical prefix, squared", {"n", "m"}},
                 [](const Params& p) { n_1mod4(p); m_pos(p); }, [](const Params& p) { return single(p.n, 2); }, diff});

    c.push_back({{"Q-GPZ", P, "n odd, n>1", "Phi_n^2", "half-range central binomial square sum", {"n"}},
                 n_odd, [](const Params& p) { return single(p.n, 2); },
                 [](const Params& p) {
                     Side rhs;
                     signed_q_power(rhs, sign_pow((p.n - 1) / 2).get_num().get_si(), 1 - p.n * p.n, 4);
                     return make(sum_side("F3", 0, (p.n - 1) / 2), rhs);
                 }});

    c.push_back({{"Q-T51", P, "n odd, n>1", dwork_text, "Dwork-type q-congruence, squared central binomials", {"n", "r", "d"}},
                 [](const Params& p) { n_odd(p); r_d(p); }, dwork_mod,
                 [](const Params& p) {
                     Side rhs = dwork_inner("F3", p);
                     signed_q_power(rhs, sign_pow((p.n - 1) / 2).get_num().get_si(),
                                    (1 - p.n) * (1 + ipow(p.n, 2 * p.r - 1)), 4);
                     return make(dwork_lhs("F3", p), rhs);
                 }});

    c.push_back({{"Q-GAUSS", P, "n odd, n>1", "Phi_n^2", "half-range Gauss 2F1(-1) analogue (both residue cases)", {"n"}},
                 n_odd, [](const Params& p) { return single(p.n, 2); },
                 [](const Params& p) {
                     Side rhs = zero_side();
                     if (mod(p.n, 4) == 1) {
                         rhs = Side{};
                         long c4 = (p.n - 1) / 4;
                         signed_q_power(rhs, kronecker(-2, p.n), (p.n - 1) * (p.n + 3), 8);
                         times(rhs, {PrefItem::pochhammer(1, 2, 4, c4), PrefItem::pochhammer(1, 4, 4, c4, -1)});
                     }
                     return make(sum_side("F4", 0, (p.n - 1) / 2), rhs);
                 }});

    c.push_back({{"Q-T52", P, "n=1 (4), n>1", dwork_text, "Dwork-type Gauss 2F1(-1) analogue", {"n", "r", "d"}},
                 [](const Params& p) { n_1mod4(p); r_d(p); }, dwork_mod,
                 [](const Params& p) {
                     Side rhs = dwork_inner("F4", p);
                     long a = (ipow(p.n, p.r) - 1) / 4, b = (ipow(p.n, p.r - 1) - 1) / 4;
                     signed_q_power(rhs, kronecker(-2, p.n), (p.n - 1) * (ipow(p.n, 2 * p.r - 1) + 3), 8);
                     times(rhs, {PrefItem::pochhammer(1, 2, 4, a), PrefItem::pochhammer(1, 4 * p.n, 4 * p.n, b),
                                 PrefItem::pochhammer(1, 4, 4, a, -1), PrefItem::pochhammer(1, 2 * p.n, 4 * p.n, b, -1)});
                     return make(dwork_lhs("F4", p), rhs);
                 }});

    c.push_back({{"Q-TAU", P, "n odd, n>1", "Phi_n^2", "central q-binomials over (-q;q)_k", {"n"}},
                 n_odd, [](const Params& p) { return single(p.n, 2); },
                 [](const Params& p) {
                     Side rhs;
                     signed_q_power(rhs, sign_pow((p.n - 1) / 2).get_num().get_si(), p.n * p.n - 1, 4);
                     return make(sum_side("F5", 0, p.n - 1), rhs);
                 }});

    c.push_back({{"Q-LP", P, "n>1", "Phi_n^2", "central q-binomials", {"n"}},
                 n_big, [](const Params& p) { return single(p.n, 2); },
                 [](const Params& p) {
                     Side rhs;
                     signed_q_power(rhs, kronecker(-3, p.n), p.n * p.n - 1, 3);
                     return make(sum_side("F6", 0, p.n - 1), rhs);
                 }});

    auto t53_mod = [](const Params& p) { return p.d == 1 ? tower(p.n, p.r, 1) : tower(p.n, p.r, 0); };
    c.push_back({{"Q-T53a", P, "n odd, n>1", "Phi_{n^r}^{2-d} prod_{j<=r} Phi_{n^j}",
                  "Dwork-type central q-binomials over (-q;q)_k", {"n", "r", "d"}},
                 [](const Params& p) { n_odd(p); r_d(p); }, t53_mod,
                 [](const Params& p) {
                     Side rhs = dwork_inner("F5", p);
                     signed_q_power(rhs, sign_pow((p.n - 1) / 2).get_num().get_si(),
                                    (p.n - 1) * (1 + ipow(p.n, 2 * p.r - 1)), 4);
                     return make(dwork_lhs("F5", p), rhs);
                 }});

    c.push_back({{"Q-T53b", P, "n odd, n>1; even n only with d=1", "Phi_{n^r}^{2-d} prod_{j<=r} Phi_{n^j}",
                  "Dwork-type central q-binomials", {"n", "r", "d"}},
                 [](const Params& p) {
                     n_big(p);
                     r_d(p);
                     require(p.n % 2 == 1 || p.d == 1, "even n requires d = 1");
                 },
                 t53_mod,
                 [](const Params& p) {
                     Side rhs = dwork_inner("F6", p);
                     long sym = kronecker(-3, p.n);
                     signed_q_power(rhs, sym, (p.n - 1) * (1 + ipow(p.n, 2 * p.r - 1)), 3);
                     Instance in = make(dwork_lhs("F6", p), rhs);
                     if (sym == 0) {
                         in.flagged = true;
                         in.notes.push_back("3 | n: (-3/n) = 0, right-hand side taken as 0");
                     }
                     return in;
                 }});

    c.push_back({{"Q-PF11", P, "n odd, n>1", "Phi_n", "full-period sum over (-q;q)_k against binom(2k,k)/2^k", {"n", "m"}},
                 [](const Params& p) { n_odd(p); m_pos(p); }, [](const Params& p) { return single(p.n, 1); },
                 [](const Params& p) {
                     Side rhs;
                     signed_q_power(rhs, sign_pow((p.n - 1) / 2).get_num().get_si(), p.n * p.n - 1, 4);
                     rhs.pref.push_back(PrefItem::constant(classical_prefix("CB2", p.m)));
                     return make(sum_side("F5", 0, p.m * p.n - 1), rhs);
                 }});

    c.push_back({{"Q-PF22", P, "n>1", "Phi_n", "full-period central q-binomials against binom(2k,k)", {"n", "m"}},
                 [](const Params& p) { n_big(p); m_pos(p); }, [](const Params& p) { return single(p.n, 1); },
                 [](const Params& p) {
                     Side rhs;
                     signed_q_power(rhs, kronecker(-3, p.n), p.n * p.n - 1, 3);
                     rhs.pref.push_back(PrefItem::constant(classical_prefix("CB", p.m)));
                     return make(sum_side("F6", 0, p.m * p.n - 1), rhs);
                 }});

    c.push_back({{"Q-PF33", P, "n odd, n>1", "Phi_n", "half-range central q-binomials over (-q;q)_k", {"n"}},
                 n_odd, [](const Params& p) { return single(p.n, 1); },
                 [](const Params& p) {
                     Side rhs;
                     signed_q_power(rhs, sign_pow((p.n - 1) / 2).get_num().get_si(), p.n * p.n - 1, 4);
                     return make(sum_side("F5", 0, (p.n - 1) / 2), rhs);
                 }});

    c.push_back({{"Q-PF44", P, "n odd, n>1", "Phi_n", "half-range central q-binomials", {"n"}},
                 n_odd, [](const Params& p) { return single(p.n, 1); },
                 [](const Params& p) {
                     Side rhs;
                     signed_q_power(rhs, kronecker(-3, p.n), p.n * p.n - 1, 3);
                     return make(sum_side("F6", 0, (p.n - 1) / 2), rhs);
                 }});

    c.push_back({{"Q-OLD1", P, "n=3 (4), n>1", "Phi_n^2", "full-period H-sum vanishing", {"n", "m"}},
                 [](const Params& p) { n_3mod4(p); m_pos(p); }, [](const Params& p) { return single(p.n, 2); },
                 [](const Params& p) { return make(sum_side("F1", 0, p.m * p.n - 1), zero_side()); }});

    c.push_back({{"Q-OLD2", P, "n=3 (4), n>1", "Phi_n^2", "full-period (1+q^{4k+1}) sum vanishing", {"n", "m"}},
                 [](const Params& p) { n_3mod4(p); m_pos(p); }, [](const Params& p) { return single(p.n, 2); },
                 [](const Params& p) { return make(sum_side("F2", 0, p.m * p.n - 1), zero_side()); }});

    c.push_back({{"C-65", C, "n=1 (4), n>1", "Phi_n^3", "alternating [4k+1] quintic-type sum", {"n", "m"}},
                 [](const Params& p) { n_1mod4(p); m_pos(p); }, [](const Params& p) { return single(p.n, 3); },
                 [](const Params& p) {
                     Side rhs;
                     long c4 = (p.n - 1) / 4;
                     times(rhs, {PrefItem::q_int(p.n), PrefItem::pochhammer(1, 2, 4, c4, 2),
                                 PrefItem::pochhammer(1, 4, 4, c4, -2), PrefItem::constant(classical_prefix("K5", p.m))});
                     return make(sum_side("F7", 0, p.m * p.n - 1), rhs);
                 }});

    c.push_back({{"C-66", C, "n odd, n>1", "Phi_n^3", "alternating [4k+1] cubic sum in q^2", {"n", "m"}},
                 [](const Params& p) { n_odd(p); m_pos(p); }, [](const Params& p) { return single(p.n, 3); },
                 [](const Params& p) {
                     Side rhs;
                     long h = (p.n - 1) / 2;
                     times(rhs, {PrefItem::q_int(p.n, 2), PrefItem::pochhammer(-1, 3, 4, h),
                                 PrefItem::pochhammer(-1, 5, 4, h, -1), PrefItem::constant(sign_pow(h)),
                                 PrefItem::q_pow(-h), PrefItem::constant(classical_prefix("K3", p.m))});
                     return make(sum_side("F8", 0, p.m * p.n - 1), rhs);
                 }});

    auto c6778 = [](const std::string& fam, const std::string& cls) {
        return [fam, cls](const Params& p) {
            Side rhs;
            times(rhs, {PrefItem::constant(sign_pow((p.n - 1) / 2)), PrefItem::q_pow((p.n - 1) * (p.n - 1) / 4),
                        PrefItem::q_int(p.n), PrefItem::constant(classical_prefix(cls, p.m))});
            return make(sum_side(fam, 0, p.m * p.n - 1), rhs);
        };
    };
    c.push_back({{"C-67", C, "n odd, n>1", "Phi_n^2", "alternating [3k+1] sum over (q;q)_k^3", {"n", "m"}},
                 [](const Params& p) { n_odd(p); m_pos(p); }, [](const Params& p) { return single(p.n, 2); },
                 c6778("F9", "K8")});
    c.push_back({{"C-68", C, "n odd, n>1", "Phi_n^2", "alternating [4k+1] sum with q^{k^2}", {"n", "m"}},
                 [](const Params& p) { n_odd(p); m_pos(p); }, [](const Params& p) { return single(p.n, 2); },
                 c6778("F10", "K3")});

    c.push_back({{"Q-REASON", P, "n odd, n>1, k>=0", "Phi_n^2", "classical H-term against the q-term at q^n", {"n", "k"}},
                 [](const Params& p) {
                     n_odd(p);
                     require(p.k >= 0, "k >= 0");
                 },
                 [](const Params& p) { return single(p.n, 2); },
                 [](const Params& p) {
                     Side rhs;
                     rhs.pref.push_back(PrefItem::constant(term_classical(classical_family("H"), p.k)));
                     return make(sum_side("F1", p.k, p.k, p.n), rhs);
                 }});
    return c;
}

const std::vector<Entry>& entries()
{
    static const auto c = make_catalog();
    return c;
}

const Entry& entry(const std::string& id)
{
    for (const auto& e : entries())
        if (e.info.id == id)
            return e;
    throw UnknownStatement(id);
}

// ---- evaluation helpers

long pref_degree(const PrefItem& it)
{
    switch (it.kind) {
    case PrefItem::Kind::Poch:
        return std::abs(it.poch.exponent) * (it.poch.offset * it.count + it.poch.step * it.count * (it.count - 1) / 2);
    case PrefItem::Kind::QInt:
        return it.base * std::max(0L, it.n - 1);
    case PrefItem::Kind::QPow:
        return std::abs(it.t);
    case PrefItem::Kind::Const:
        return 0;
    }
    return 0;
}

/// (numerator, denominator) Phi_N-valuation counts of a prefactor item
std::pair<long, long> pref_valuation(const PrefItem& it, unsigned long N)
{
    switch (it.kind) {
    case PrefItem::Kind::Poch: {
        long v = poch_valuation(it.poch, it.count, N);
        return it.poch.exponent > 0 ? std::make_pair(v, 0L) : std::make_pair(0L, -v);
    }
    case PrefItem::Kind::QInt:
        if (it.n <= 0)
            return {0, 0};
        return {one_minus_valuation(1, it.base * it.n, N), one_minus_valuation(1, it.base, N)};
    default:
        return {0, 0};
    }
}

RatPoly dense_item(const PrefItem& it)
{
    switch (it.kind) {
    case PrefItem::Kind::Poch:
        return q_pochhammer(it.poch, it.count);
    case PrefItem::Kind::QInt:
        return RatPoly(q_integer(it.n, it.base));
    case PrefItem::Kind::QPow:
        return RatPoly::q_power(it.t);
    case PrefItem::Kind::Const:
        return RatPoly::constant(it.c);
    }
    return RatPoly();
}

LocalValue local_item(const PrefItem& it, unsigned long N, long w)
{
    switch (it.kind) {
    case PrefItem::Kind::Poch:
        return local_pochhammer(it.poch, it.count, N, w);
    case PrefItem::Kind::QInt:
        if (it.n == 0)
            return LocalValue::zero(CycloField::get(N));
        if (it.n == 1)
            return LocalValue::one(CycloField::get(N), w);
        return local_one_minus(1, it.base * it.n, N, w) * local_one_minus(1, it.base, N, w).inverse();
    case PrefItem::Kind::QPow:
        return local_q_power(it.t, N, w);
    case PrefItem::Kind::Const:
        return local_constant(it.c, N, w);
    }
    return LocalValue::zero(CycloField::get(N));
}

long max_term_den(const SumPart& s, unsigned long N)
{
    long b = 0;
    for (const auto& tv : term_valuations(q_family(s.family), s.lo, s.hi, s.scale, N))
        b = std::max(b, tv.den);
    return b;
}

long side_den_valuation(const Side& s, unsigned long N)
{
    if (s.zero)
        return 0;
    long b = 0;
    for (const auto& it : s.pref)
        b += pref_valuation(it, N).second;
    if (s.sum)
        b += max_term_den(*s.sum, N);
    return b;
}

FactorRecord dense_factor(const RatPoly& diff, const CyclotomicFactor& f)
{
    FactorRecord r;
    r.base = f.index;
    r.required = f.exponent;
    if (diff.is_zero()) {
        r.pass = true;
        return r;
    }
    r.achieved = phi_valuation(diff, f.index).valuation;
    r.pass = *r.achieved >= f.exponent;
    return r;
}

}  // namespace

const std::vector<StatementInfo>& q_catalog()
{
    static const auto infos = [] {
        std::vector<StatementInfo> v;
        for (const auto& e : entries())
            v.push_back(e.info);
        return v;
    }();
    return infos;
}

const StatementInfo& q_statement(const std::string& id) { return entry(id).info; }

bool is_q_statement(const std::string& id)
{
    for (const auto& e : entries())
        if (e.info.id == id)
            return true;
    return false;
}

void check_constraint(const std::string& id, const Params& p) { entry(id).check(p); }

CyclotomicModulus modulus_of(const std::string& id, const Params& p)
{
    const Entry& e = entry(id);
    e.check(p);
    return e.modulus(p);
}

Instance build_instance(const std::string& id, const Params& p)
{
    const Entry& e = entry(id);
    e.check(p);
    Instance in = e.build(p);
    in.modulus = e.modulus(p);
    return in;
}

long predicted_degree(const Side& s)
{
    if (s.zero)
        return 0;
    long deg = 0;
    for (const auto& it : s.pref)
        deg += pref_degree(it);
    if (s.sum) {
        // the nested running sum carries roughly the last term's denominator
        // and a numerator of comparable degree
        const QSummandSpec spec = q_family(s.sum->family).scaled(s.sum->scale);
        long k = s.sum->hi, t = std::abs(spec.qexp(k));
        for (const auto& p : spec.poch) {
            PrefItem it = PrefItem::pochhammer(p.spec.sign, p.spec.offset, p.spec.step, p.mult * k, p.spec.exponent);
            t += pref_degree(it);
        }
        if (spec.bracket)
            t += spec.bracket->base * (spec.bracket->alpha * k + spec.bracket->beta);
        for (const auto& o : spec.one_plus)
            t += std::abs(o.e) * (o.a * k + o.b);
        deg += 2 * t;
    }
    return deg;
}

RatPoly eval_dense(const Side& s)
{
    if (s.zero)
        return RatPoly();
    RatPoly v = s.sum ? sum_q(q_family(s.sum->family), s.sum->lo, s.sum->hi, s.sum->scale) : RatPoly::constant(1);
    for (const auto& it : s.pref)
        v *= dense_item(it);
    return v;
}

LocalValue eval_local(const Side& s, unsigned long N, long abs_target)
{
    auto K = CycloField::get(N);
    if (s.zero)
        return LocalValue::zero(K);
    long vp = 0;
    for (const auto& it : s.pref) {
        if (it.kind == PrefItem::Kind::Const && it.c == 0)
            return LocalValue::zero(K);
        auto [a, b] = pref_valuation(it, N);
        vp += a - b;
    }
    long w = std::max(1L, abs_target - vp);
    std::optional<LocalValue> sum;
    if (s.sum) {
        const auto& spec = q_family(s.sum->family);
        auto vals = term_valuations(spec, s.sum->lo, s.sum->hi, s.sum->scale, N);
        long floor = vals.front().total();
        for (const auto& tv : vals)
            floor = std::min(floor, tv.total());
        sum = sum_local(spec, s.sum->lo, s.sum->hi, s.sum->scale, N, abs_target - vp);
        w = std::max(1L, abs_target - vp - floor);
    }
    LocalValue v = LocalValue::one(K, w);
    for (const auto& it : s.pref)
        v = v * local_item(it, N, w);
    if (sum)
        v = v * *sum;
    return v;
}

std::vector<FactorRecord> congruent(const RatPoly& a, const RatPoly& b, const CyclotomicModulus& m)
{
    RatPoly diff = a - b;
    std::vector<FactorRecord> out;
    for (const auto& f : m.factors())
        out.push_back(dense_factor(diff, f));
    return out;
}

long precision_plan(const std::string& id, const Params& p, unsigned long N, long e, PlanSides sides)
{
    Instance in = build_instance(id, p);
    long b = 0;
    if (sides != PlanSides::Rhs)
        b = std::max(b, side_den_valuation(in.lhs, N));
    if (sides != PlanSides::Lhs)
        b = std::max(b, side_den_valuation(in.rhs, N));
    return e + b;
}

std::string engine_name(Engine e) { return e == Engine::Dense ? "dense" : "local"; }

std::vector<std::pair<std::string, long>> report_params(const std::string& id, const Params& p)
{
    std::map<std::string, long> all = {{"n", p.n}, {"r", p.r}, {"d", p.d}, {"m", p.m}, {"s", p.s}, {"k", p.k}};
    std::vector<std::pair<std::string, long>> out;
    for (const auto& name : q_statement(id).params)
        out.emplace_back(name, all[name]);
    std::sort(out.begin(), out.end());
    return out;
}

Report verify_q(const std::string& id, const Params& p, const VerifyOptions& opt)
{
    auto t0 = std::chrono::steady_clock::now();
    Instance in = build_instance(id, p);
    Report rep;
    rep.kind = "q";
    rep.id = id;
    rep.status = q_statement(id).status;
    rep.params = report_params(id, p);
    rep.engine = engine_name(opt.engine);
    rep.flagged = in.flagged;
    rep.notes = in.notes;

    if (opt.engine == Engine::Dense) {
        long deg = std::max(predicted_degree(in.lhs), predicted_degree(in.rhs));
        if (deg > opt.degree_budget)
            throw DegreeBudgetExceeded(deg);
        rep.factors = congruent(eval_dense(in.lhs), eval_dense(in.rhs), in.modulus);
    } else {
        for (const auto& f : in.modulus.factors()) {
            long target = std::max<long>(f.exponent, opt.min_precision);
            long pad = opt.pad;
            for (int attempt = 0;; ++attempt) {
                try {
                    LocalValue lhs = eval_local(in.lhs, f.index, target + pad);
                    LocalValue rhs = eval_local(in.rhs, f.index, target + pad);
                    LocalValue diff = lhs - rhs;
                    FactorRecord r;
                    r.base = f.index;
                    r.required = f.exponent;
                    if (diff.is_exact_zero()) {
                        r.pass = true;
                    } else {
                        r.achieved = diff.valuation();
                        r.exact = !diff.is_zero();
                        if (!r.exact && *r.achieved < target)
                            throw PrecisionExhausted();
                        r.pass = *r.achieved >= f.exponent;
                    }
                    rep.factors.push_back(r);
                    break;
                } catch (const PrecisionExhausted&) {
                    if (attempt >= opt.max_retries)
                        throw;
                    pad *= 2;
                    rep.notes.push_back("Phi_" + std::to_string(f.index) + ": precision exhausted, retry with pad " +
                                        std::to_string(pad));
                }
            }
        }
    }
    rep.pass = rep.factors_pass();
    rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

bool engines_agree(const Report& dense, const Report& local)
{
    if (dense.factors.size() != local.factors.size())
        return false;
    for (std::size_t i = 0; i < dense.factors.size(); ++i) {
        const auto& a = dense.factors[i];
        const auto& b = local.factors[i];
        if (a.base != b.base || a.pass != b.pass)
            return false;
        if (b.exact) {
            if (a.achieved != b.achieved)
                return false;
        } else if (a.achieved && *a.achieved < *b.achieved) {
            return false;
        }
    }
    return true;
}

}  // namespace qdwork
