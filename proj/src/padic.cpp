#include "qdwork/padic.hpp"
#include "qdwork/statements.hpp"

#include <chrono>
#include <functional>
#include <random>

namespace qdwork {

namespace {

using u64 = unsigned long long;
using u128 = unsigned __int128;

constexpr u64 kMaxModulus = 1ULL << 62;
constexpr u64 kGammaWork = 200000000ULL;  // block evaluations times precision

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

/// v_p(z) for z != 0, dividing it out
long strip(mpz_class& z, unsigned long p)
{
    mpz_class pp = p;
    return static_cast<long>(mpz_remove(z.get_mpz_t(), z.get_mpz_t(), pp.get_mpz_t()));
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m)
{
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m)
{
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("not invertible");
    return r;
}


}  // namespace

mpz_class prime_power(unsigned long p, long s)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(std::max(0L, s)));
    return r;
}

bool is_prime(unsigned long p)
{
    if (p < 2)
        return false;
    mpz_class z = p;
    return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

long padic_valuation(const mpq_class& x, unsigned long p)
{
    if (x == 0)
        throw std::domain_error("valuation of zero undefined (+inf)");
    mpz_class n = x.get_num(), d = x.get_den();
    return strip(n, p) - strip(d, p);
}

PadicInt PadicInt::zero(unsigned long p, long abs_precision)
{
    PadicInt z;
    z.p_ = p;
    z.v_ = abs_precision;
    return z;
}


PadicInt PadicInt::from_rational(const mpq_class& x, unsigned long p, long s)
{
    if (s < 1)
        throw std::invalid_argument("precision must be positive");
    if (x == 0)
        return zero(p);
    mpz_class n = x.get_num(), d = x.get_den();
    long v = strip(n, p) - strip(d, p);
    mpz_class M = prime_power(p, s);
    PadicInt out;
    out.p_ = p;
    out.zero_ = false;
    out.v_ = v;
    out.s_ = s;
    out.u_ = mod_pos(n * inv_mod(d, M), M);
    return out;
}

mpz_class PadicInt::residue(long k) const
{
    mpz_class M = prime_power(p_, k);
    if (zero_) {
        if (k > v_)
            throw std::domain_error("precision exhausted");
        return 0;
    }
    if (v_ < 0)
        throw std::domain_error("not a p-adic integer");
    if (k > v_ + s_)
        throw std::domain_error("precision exhausted");
    return mod_pos(prime_power(p_, v_) * u_, M);
}

PadicInt PadicInt::inverse() const
{
    if (zero_)
        throw std::domain_error("inverse of zero");
    PadicInt out = *this;
    out.v_ = -v_;
    out.u_ = inv_mod(u_, prime_power(p_, s_));
    return out;
}

PadicInt PadicInt::negated() const
{
    if (zero_)
        return *this;
    PadicInt out = *this;
    out.u_ = mod_pos(-u_, prime_power(p_, s_));
    return out;
}

PadicInt PadicInt::pow(long e) const
{
    if (e < 0)
        return inverse().pow(-e);
    PadicInt r = from_rational(1, p_, zero_ ? 1 : s_);
    if (!zero_)
        r.s_ = s_;
    PadicInt b = *this;
    while (e > 0) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

PadicInt operator*(const PadicInt& a, const PadicInt& b)
{
    if (a.p_ != b.p_)
        throw std::invalid_argument("mixed primes");
    if (a.zero_ || b.zero_) {
        if (a.is_exact_zero() || b.is_exact_zero())
            return PadicInt::zero(a.p_);
        if (a.zero_ && b.zero_)
            return PadicInt::zero(a.p_, a.v_ + b.v_);
        const PadicInt& z = a.zero_ ? a : b;
        const PadicInt& x = a.zero_ ? b : a;
        return PadicInt::zero(a.p_, z.v_ + x.v_);
    }
    PadicInt out;
    out.p_ = a.p_;
    out.zero_ = false;
    out.v_ = a.v_ + b.v_;
    out.s_ = std::min(a.s_, b.s_);
    out.u_ = mod_pos(a.u_ * b.u_, prime_power(a.p_, out.s_));
    return out;
}

PadicInt operator+(const PadicInt& a, const PadicInt& b)
{
    if (a.p_ != b.p_)
        throw std::invalid_argument("mixed primes");
    if (a.is_exact_zero())
        return b;
    if (b.is_exact_zero())
        return a;
    long abs = std::min(a.absolute_precision(), b.absolute_precision());
    if (a.zero_ && b.zero_)
        return PadicInt::zero(a.p_, abs);
    if (a.zero_ || b.zero_) {
        const PadicInt& x = a.zero_ ? b : a;
        if (x.v_ >= abs)
            return PadicInt::zero(a.p_, abs);
        PadicInt out = x;
        out.s_ = abs - x.v_;
        out.u_ = mod_pos(out.u_, prime_power(a.p_, out.s_));
        return out;
    }
    const PadicInt& lo = a.v_ <= b.v_ ? a : b;
    const PadicInt& hi = a.v_ <= b.v_ ? b : a;
    long len = abs - lo.v_;  // digits known above p^{lo.v}
    if (len <= 0)
        return PadicInt::zero(a.p_, abs);
    mpz_class M = prime_power(a.p_, len);
    mpz_class sum = mod_pos(lo.u_ + prime_power(a.p_, hi.v_ - lo.v_) * hi.u_, M);
    if (sum == 0)
        return PadicInt::zero(a.p_, abs);
    long extra = strip(sum, a.p_);
    PadicInt out;
    out.p_ = a.p_;
    out.zero_ = false;
    out.v_ = lo.v_ + extra;
    out.s_ = abs - out.v_;
    out.u_ = mod_pos(sum, prime_power(a.p_, out.s_));
    return out;
}

PadicInt padic_of_rational(const mpq_class& x, unsigned long p, long s)
{
    if (x == 0)
        return PadicInt::zero(p);
    mpz_class d = x.get_den();
    if (mpz_divisible_ui_p(d.get_mpz_t(), p))
        throw std::domain_error("not a p-adic integer");
    return PadicInt::from_rational(x, p, s);
}

bool gamma_within_cap(unsigned long p, long s)
{
    mpz_class M = prime_power(p, s);
    if (M >= mpz_class(std::to_string(kMaxModulus)))
        return false;
    u64 blocks = M.get_ui() / p;
    return blocks * static_cast<u64>(s) <= kGammaWork;
}

mpz_class gamma_p_integer(const mpz_class& n, unsigned long p, long s)
{
    if (n < 0)
        throw std::invalid_argument("negative argument");
    mpz_class Mz = prime_power(p, s);
    if (Mz >= mpz_class(std::to_string(kMaxModulus)) || !n.fits_ulong_p())
        throw GammaCapExceeded();
    const u64 M = Mz.get_ui(), N = n.get_ui();
    if (N == 0)
        return mpz_class(static_cast<unsigned long>(1 % M));
    const u64 L = N - 1, m = L / p;
    if (m * static_cast<u64>(s) > kGammaWork)
        throw GammaCapExceeded();

    // prod_{i=1}^{p-1} (jp + i) = sum_i c_i p^i j^i; terms with i >= s vanish mod p^s
    std::vector<u64> c(static_cast<std::size_t>(s), 0);
    c[0] = 1 % M;
    for (u64 i = 1; i < p; ++i)
        for (std::size_t j = c.size(); j-- > 0;)
            c[j] = (mulmod(c[j], i % M, M) + (j ? c[j - 1] : 0)) % M;
    u64 pk = 1 % M;
    for (auto& cj : c) {
        cj = mulmod(cj, pk, M);
        pk = mulmod(pk, p % M, M);
    }

    u64 prod = 1 % M;
    for (u64 j = 0; j < m; ++j) {
        u64 g = 0, jm = j % M;
        for (std::size_t i = c.size(); i-- > 0;)
            g = (mulmod(g, jm, M) + c[i]) % M;
        prod = mulmod(prod, g, M);
    }
    for (u64 k = m * p + 1; k <= L; ++k)
        if (k % p)
            prod = mulmod(prod, k % M, M);
    if ((N & 1) && prod)
        prod = M - prod;
    return mpz_class(std::to_string(prod));
}

PadicInt gamma_p(const mpq_class& x, unsigned long p, long s)
{
    if (p == 2)
        throw std::invalid_argument("unsupported: gamma_p needs an odd prime");
    if (!is_prime(p))
        throw std::invalid_argument("p must be prime");
    mpz_class d = x.get_den();
    if (mpz_divisible_ui_p(d.get_mpz_t(), p))
        throw std::domain_error("not a p-adic integer");
    mpz_class M = prime_power(p, s);
    mpz_class rep = mod_pos(x.get_num() * inv_mod(d, M), M);
    return PadicInt::from_rational(mpq_class(gamma_p_integer(rep, p, s)), p, s);
}

std::vector<IdentityCheck> gamma_identities_check(unsigned long p, long s, unsigned seed)
{
    if (p == 2 || !is_prime(p))
        throw std::invalid_argument("unsupported: gamma_p needs an odd prime");
    std::vector<IdentityCheck> out;
    const mpz_class M = prime_power(p, s);
    auto G = [&](const mpq_class& x, long prec) { return gamma_p(x, p, prec).residue(prec); };
    auto fail = [](IdentityCheck& c, const std::string& what) {
        ++c.failed;
        if (c.failures.size() < 10)
            c.failures.push_back(what);
    };

    IdentityCheck rec{"recurrence", 0, 0, {}};
    for (unsigned long x = 1; x <= p * p; ++x) {
        mpz_class lhs = gamma_p_integer(x + 1, p, s);
        mpz_class ratio = x % p ? mpz_class(-static_cast<long>(x)) : mpz_class(-1);
        mpz_class rhs = mod_pos(gamma_p_integer(x, p, s) * ratio, M);
        ++rec.checked;
        if (lhs != rhs)
            fail(rec, "x=" + std::to_string(x));
    }
    out.push_back(rec);

    std::mt19937 rng(seed);
    std::vector<mpq_class> xs = {mpq_class(1, 4), mpq_class(3, 4), mpq_class(1, 2)};
    while (xs.size() < 50) {
        long b = std::uniform_int_distribution<long>(1, 30)(rng);
        long a = std::uniform_int_distribution<long>(-50, 50)(rng);
        if (b % static_cast<long>(p) == 0)
            continue;
        mpq_class x(a, b);
        x.canonicalize();
        xs.push_back(x);
    }

    IdentityCheck refl{"reflection", 0, 0, {}};
    for (const auto& x : xs) {
        mpz_class a0 = mod_pos(x.get_num() * inv_mod(x.get_den(), p), p);
        if (a0 == 0)
            a0 = p;
        mpz_class want = mod_pos(mpz_class(a0 % 2 == 0 ? 1 : -1), M);
        ++refl.checked;
        if (mod_pos(G(x, s) * G(1 - x, s), M) != want)
            fail(refl, "x=" + x.get_str());
    }
    if (p % 4 == 1) {
        mpz_class want = mod_pos(mpz_class(((p + 3) / 4) % 2 == 0 ? 1 : -1), M);
        ++refl.checked;
        if (mod_pos(G(mpq_class(1, 4), s) * G(mpq_class(3, 4), s), M) != want)
            fail(refl, "quarter specialization");
    }
    out.push_back(refl);

    IdentityCheck lin{"linearity", 0, 0, {}};
    for (long r : {1L, 2L}) {
        if (!gamma_within_cap(p, 2 * r))
            continue;
        mpz_class Mr = prime_power(p, 2 * r), pr = prime_power(p, r);
        for (const auto& a : {mpq_class(1, 4), mpq_class(3, 4), mpq_class(1, 2)}) {
            mpz_class g0 = G(a, 2 * r), g1 = G(a + pr, 2 * r);
            for (long m = 1; m <= 5; ++m) {
                mpz_class gm = G(a + m * pr, 2 * r);
                ++lin.checked;
                if (mod_pos(gm - g0 - m * (g1 - g0), Mr) != 0)
                    fail(lin, "a=" + a.get_str() + " m=" + std::to_string(m) + " r=" + std::to_string(r));
            }
        }
    }
    out.push_back(lin);

    IdentityCheck lip{"lipschitz", 0, 0, {}};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& x = xs[i];
        mpz_class rep = mod_pos(x.get_num() * inv_mod(x.get_den(), M), M);
        mpz_class g = gamma_p_integer(rep, p, s);
        for (long t = 1; t <= 3 && i < 10; ++t) {
            ++lip.checked;
            if (gamma_p_integer(rep + t * M, p, s) != g)
                fail(lip, "x=" + x.get_str() + " t=" + std::to_string(t));
        }
        if (gamma_within_cap(p, s + 2)) {
            ++lip.checked;
            if (mod_pos(G(x, s + 2), M) != g)
                fail(lip, "stability x=" + x.get_str());
        }
    }
    out.push_back(lip);
    return out;
}

PadicInt padic_sum_classical(const ClassicalTermSpec& spec, long lo, long hi, unsigned long p, long w)
{
    PadicInt sum = PadicInt::zero(p);
    if (hi < lo)
        return sum;
    ClassicalTermSpec core{spec.name, false, std::nullopt, spec.rising, spec.factorial_exponent, spec.geometric};
    PadicInt base = PadicInt::from_rational(term_classical(core, lo), p, w);
    for (long k = lo; k <= hi; ++k) {
        if (k > lo) {
            mpq_class num = spec.geometric, den = 1;
            for (const auto& r : spec.rising) {
                mpq_class f = r.base + (k - 1);
                for (int i = 0; i < std::abs(r.exponent); ++i)
                    (r.exponent > 0 ? num : den) *= f;
            }
            for (int i = 0; i < std::abs(spec.factorial_exponent); ++i)
                (spec.factorial_exponent > 0 ? den : num) *= k;
            base = base * PadicInt::from_rational(num / den, p, w);
        }
        PadicInt t = base;
        if (spec.linear) {
            long lin = spec.linear->first * k + spec.linear->second;
            if (lin == 0)
                continue;
            t = t * PadicInt::from_rational(lin, p, w);
        }
        if (spec.alternating && (k & 1))
            t = t.negated();
        sum = sum + t;
    }
    return sum;
}

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw ConstraintError(what);
}

long ipow(unsigned long b, long e)
{
    mpz_class v = prime_power(b, e);
    if (!v.fits_slong_p() || v > (1L << 40))
        throw ConstraintError("parameters too large");
    return v.get_si();
}

PadicInt cst(const mpq_class& c, unsigned long p, long w) { return PadicInt::from_rational(c, p, w); }

PadicInt H(long hi, unsigned long p, long w) { return padic_sum_classical(classical_family("H"), 0, hi, p, w); }

/// -Gamma_p(1/4)^4 at absolute precision s
PadicInt minus_gamma_quarter4(unsigned long p, long s) { return gamma_p(mpq_class(1, 4), p, s).pow(4).negated(); }

PadicInt rising(const mpq_class& a, long count, unsigned long p, long w)
{
    PadicInt r = cst(1, p, w);
    for (long j = 0; j < count; ++j)
        r = r * cst(a + j, p, w);
    return r;
}

/// LHS - RHS at working precision w, Gamma_p taken at precision level
using DiffFn = std::function<PadicInt(const PParams&, long w, long level)>;

struct PEntry {
    PStatementInfo info;
    std::function<void(const PParams&)> check;
    std::function<std::vector<long>(const PParams&)> tested;
    std::function<std::vector<long>(const PParams&)> informational;
    DiffFn diff;
};

void odd_prime(const PParams& q)
{
    require(is_prime(q.p), "p prime");
    require(q.p > 2, "p odd");
}
void one_mod4(const PParams& q)
{
    odd_prime(q);
    require(q.p % 4 == 1, "p = 1 (mod 4)");
}
void r_pos(const PParams& q) { require(q.r >= 1, "r >= 1"); }
void d_ok(const PParams& q) { require(q.d == 1 || q.d == 2, "d in {1, 2}"); }

long sgn_half(unsigned long p) { return ((p - 1) / 2) % 2 == 0 ? 1 : -1; }

std::vector<PEntry> make_p_catalog()
{
    const std::string P = "PROVEN", C = "CONJECTURE";
    std::vector<PEntry> c;
    auto lv = [](std::function<long(const PParams&)> f) {
        return [f](const PParams& q) { return std::vector<long>{f(q)}; };
    };
    auto none = [](const PParams&) { return std::vector<long>{}; };

    c.push_back({{"P-H2", P, "p odd prime", "p^2", "half-range H-sum against -Gamma_p(1/4)^4 (both residue cases)", {"p"}},
                 odd_prime, lv([](const PParams&) { return 2L; }), none,
                 [](const PParams& q, long w, long level) {
                     PadicInt lhs = H((static_cast<long>(q.p) - 1) / 2, q.p, w);
                     return q.p % 4 == 1 ? lhs - minus_gamma_quarter4(q.p, level) : lhs;
                 }});

    auto J = [](long hi, unsigned long p, long w) { return padic_sum_classical(classical_family("J"), 0, hi, p, w); };
    c.push_back({{"P-J2", P, "p prime, p>3", "p^4", "half-range (6k+1) sum", {"p"}},
                 [](const PParams& q) { odd_prime(q); require(q.p > 3, "p > 3"); },
                 lv([](const PParams&) { return 4L; }), none,
                 [J](const PParams& q, long w, long) {
                     return J((static_cast<long>(q.p) - 1) / 2, q.p, w) - cst(sgn_half(q.p) * static_cast<long>(q.p), q.p, w);
                 }});

    auto j3 = [J](const PParams& q, long w, long) {
        PadicInt inner = J((ipow(q.p, q.r - 1) - 1) / 2, q.p, w);
        return J((ipow(q.p, q.r) - 1) / 2, q.p, w) - cst(sgn_half(q.p) * static_cast<long>(q.p), q.p, w) * inner;
    };
    c.push_back({{"P-J3", P, "p prime, p>3, r>=1", "p^{3r} (p^{4r} informational)", "Dwork-type (6k+1) sum", {"p", "r"}},
                 [](const PParams& q) { odd_prime(q); require(q.p > 3, "p > 3"); r_pos(q); },
                 lv([](const PParams& q) { return 3 * q.r; }), lv([](const PParams& q) { return 4 * q.r; }), j3});

    auto h_dwork = [](long (*upper)(unsigned long, long)) {
        return [upper](const PParams& q, long w, long level) {
            return H(upper(q.p, q.r), q.p, w) - minus_gamma_quarter4(q.p, level) * H(upper(q.p, q.r - 1), q.p, w);
        };
    };
    auto half_upper = [](unsigned long p, long r) { return (ipow(p, r) - 1) / 2; };
    auto full_upper = [](unsigned long p, long r) { return ipow(p, r) - 1; };

    c.push_back({{"P-H3a", C, "p=1 (4), r>=1", "p^{3r}", "Dwork-type H-sum with Gamma_p(1/4)^4, strong modulus", {"p", "r"}},
                 [](const PParams& q) { one_mod4(q); r_pos(q); }, lv([](const PParams& q) { return 3 * q.r; }), none,
                 h_dwork(half_upper)});

    c.push_back({{"P-H3b", P, "p=3 (4), r>=2", "p^{2r+2} (p^{3r-1} informational)", "Dwork-type H-sum, vanishing case", {"p", "r"}},
                 [](const PParams& q) {
                     odd_prime(q);
                     require(q.p % 4 == 3, "p = 3 (mod 4)");
                     require(q.r >= 2, "r >= 2");
                 },
                 lv([](const PParams& q) { return 2 * q.r + 2; }), lv([](const PParams& q) { return 3 * q.r - 1; }),
                 [](const PParams& q, long w, long) {
                     PadicInt inner = H((ipow(q.p, q.r - 2) - 1) / 2, q.p, w);
                     return H((ipow(q.p, q.r) - 1) / 2, q.p, w) -
                            cst(static_cast<long>(q.p * q.p), q.p, w) * inner;
                 }});

    c.push_back({{"P-T12", P, "p=1 (4), r>=1", "p^{2r}", "Pochhammer quotient against -Gamma_p(1/4)^4", {"p", "r"}},
                 [](const PParams& q) { one_mod4(q); r_pos(q); }, lv([](const PParams& q) { return 2 * q.r; }), none,
                 [](const PParams& q, long w, long level) {
                     long a = (ipow(q.p, q.r) - 1) / 2, b = (ipow(q.p, q.r - 1) - 1) / 2;
                     mpq_class t(3, 4), f(5, 4);
                     PadicInt v = cst(static_cast<long>(q.p), q.p, w) * rising(t, a, q.p, w) * rising(f, b, q.p, w) *
                                  (rising(f, a, q.p, w) * rising(t, b, q.p, w)).inverse();
                     return v - minus_gamma_quarter4(q.p, level);
                 }});

    c.push_back({{"P-DIS1", P, "p=1 (4), r>=1", "p^{r+1} (p^{2r}, p^{3r} informational)",
                  "half-range Dwork-type H-sum with Gamma_p(1/4)^4", {"p", "r"}},
                 [](const PParams& q) { one_mod4(q); r_pos(q); }, lv([](const PParams& q) { return q.r + 1; }),
                 [](const PParams& q) { return std::vector<long>{2 * q.r, 3 * q.r}; }, h_dwork(half_upper)});
    c.push_back({{"P-DIS2", P, "p=1 (4), r>=1", "p^{r+1} (p^{2r}, p^{3r} informational)",
                  "full-range Dwork-type H-sum with Gamma_p(1/4)^4", {"p", "r"}},
                 [](const PParams& q) { one_mod4(q); r_pos(q); }, lv([](const PParams& q) { return q.r + 1; }),
                 [](const PParams& q) { return std::vector<long>{2 * q.r, 3 * q.r}; }, h_dwork(full_upper)});

    auto RV = [](const std::string& fam, long hi, unsigned long p, long w) {
        return padic_sum_classical(classical_family(fam), 0, hi, p, w);
    };
    c.push_back({{"P-RV", P, "p odd prime", "p^2", "half-range squared central binomial sum", {"p"}},
                 odd_prime, lv([](const PParams&) { return 2L; }), none,
                 [RV](const PParams& q, long w, long) {
                     return RV("RV", (static_cast<long>(q.p) - 1) / 2, q.p, w) - cst(sgn_half(q.p), q.p, w);
                 }});

    c.push_back({{"P-T51C", P, "p odd prime, r>=1", "p^{r+1} (p^{2r} informational)",
                  "Dwork-type squared central binomial sum", {"p", "r", "d"}},
                 [](const PParams& q) { odd_prime(q); r_pos(q); d_ok(q); }, lv([](const PParams& q) { return q.r + 1; }),
                 lv([](const PParams& q) { return 2 * q.r; }),
                 [RV](const PParams& q, long w, long) {
                     PadicInt inner = RV("RV", (ipow(q.p, q.r - 1) - 1) / q.d, q.p, w);
                     return RV("RV", (ipow(q.p, q.r) - 1) / q.d, q.p, w) - cst(sgn_half(q.p), q.p, w) * inner;
                 }});

    c.push_back({{"P-T52C", P, "p=1 (4), r>=1", "p^{r+1} (p^{2r} informational)",
                  "Dwork-type Gauss 2F1(-1) classical sum", {"p", "r", "d"}},
                 [](const PParams& q) { one_mod4(q); r_pos(q); d_ok(q); }, lv([](const PParams& q) { return q.r + 1; }),
                 lv([](const PParams& q) { return 2 * q.r; }),
                 [RV](const PParams& q, long w, long) {
                     long a = (ipow(q.p, q.r) - 1) / 4, b = (ipow(q.p, q.r - 1) - 1) / 4;
                     mpq_class half(1, 2);
                     PadicInt ratio = rising(half, a, q.p, w) * rising(1, b, q.p, w) *
                                      (rising(1, a, q.p, w) * rising(half, b, q.p, w)).inverse();
                     PadicInt inner = RV("RV2", (ipow(q.p, q.r - 1) - 1) / q.d, q.p, w);
                     return RV("RV2", (ipow(q.p, q.r) - 1) / q.d, q.p, w) -
                            cst(kronecker(-2, static_cast<long>(q.p)), q.p, w) * ratio * inner;
                 }});

    auto sun = [](const std::string& fam, long sym_a) {
        return [fam, sym_a](const PParams& q, long w, long) {
            const auto& spec = classical_family(fam);
            PadicInt inner = padic_sum_classical(spec, 0, ipow(q.p, q.r - 1) - 1, q.p, w);
            return padic_sum_classical(spec, 0, ipow(q.p, q.r) - 1, q.p, w) -
                   cst(kronecker(sym_a, static_cast<long>(q.p)), q.p, w) * inner;
        };
    };
    c.push_back({{"P-SUN55", P, "p odd prime, r>=1", "p^{2r}", "Dwork-type binom(2k,k)/2^k sum", {"p", "r"}},
                 [](const PParams& q) { odd_prime(q); r_pos(q); }, lv([](const PParams& q) { return 2 * q.r; }), none,
                 sun("CB2", -1)});
    c.push_back({{"P-SUN66", P, "p prime, r>=1", "p^{2r}", "Dwork-type binom(2k,k) sum", {"p", "r"}},
                 [](const PParams& q) { require(is_prime(q.p), "p prime"); r_pos(q); },
                 lv([](const PParams& q) { return 2 * q.r; }), none, sun("CB", -3)});

    c.push_back({{"P-H2LIU", P, "p odd prime, m>=1", "p^2", "full-period H-sum against the classical prefix", {"p", "m"}},
                 [](const PParams& q) { odd_prime(q); require(q.m >= 1, "m >= 1"); },
                 lv([](const PParams&) { return 2L; }), none,
                 [](const PParams& q, long w, long level) {
                     PadicInt lhs = H(q.m * static_cast<long>(q.p) - 1, q.p, w);
                     if (q.p % 4 != 1)
                         return lhs;
                     return lhs - minus_gamma_quarter4(q.p, level) * H(q.m - 1, q.p, w);
                 }});
    return c;
}

const std::vector<PEntry>& p_entries()
{
    static const auto c = make_p_catalog();
    return c;
}

const PEntry& p_entry(const std::string& id)
{
    for (const auto& e : p_entries())
        if (e.info.id == id)
            return e;
    throw UnknownStatement(id);
}

bool uses_gamma(const std::string& id)
{
    return id == "P-H2" || id == "P-H3a" || id == "P-T12" || id == "P-DIS1" || id == "P-DIS2" || id == "P-H2LIU";
}

/// Evaluate one level; retries with more working precision if the zero test is inconclusive.
FactorRecord evaluate_level(const PEntry& e, const PParams& q, long level)
{
    FactorRecord f;
    f.base = q.p;
    f.required = level;
    long pad = 2;
    for (int attempt = 0; attempt < 6; ++attempt, pad *= 2) {
        PadicInt d = e.diff(q, level + pad, level);
        if (d.is_exact_zero()) {
            f.achieved.reset();
            f.exact = true;
        } else if (d.is_zero()) {
            f.achieved = d.absolute_precision();
            f.exact = false;
            if (*f.achieved < level)
                continue;
        } else {
            f.achieved = d.valuation();
            f.exact = true;
        }
        f.pass = !f.achieved || *f.achieved >= level;
        return f;
    }
    f.pass = false;
    return f;
}

std::vector<std::pair<std::string, long>> p_report_params(const PStatementInfo& info, const PParams& q)
{
    std::vector<std::pair<std::string, long>> out;
    for (const auto& name : info.params) {
        long v = name == "p" ? static_cast<long>(q.p) : name == "r" ? q.r : name == "d" ? q.d : q.m;
        out.emplace_back(name, v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

const std::vector<PStatementInfo>& p_catalog()
{
    static const auto infos = [] {
        std::vector<PStatementInfo> v;
        for (const auto& e : p_entries())
            v.push_back(e.info);
        return v;
    }();
    return infos;
}

const PStatementInfo& p_statement(const std::string& id) { return p_entry(id).info; }

bool is_p_statement(const std::string& id)
{
    for (const auto& e : p_entries())
        if (e.info.id == id)
            return true;
    return false;
}

void check_p_constraint(const std::string& id, const PParams& p) { p_entry(id).check(p); }

Report verify_super(const std::string& id, const PParams& q)
{
    auto t0 = std::chrono::steady_clock::now();
    const PEntry& e = p_entry(id);
    e.check(q);
    Report rep;
    rep.kind = "p";
    rep.id = id;
    rep.status = e.info.status;
    rep.params = p_report_params(e.info, q);
    rep.engine = "padic";
    const bool gamma = uses_gamma(id);
    for (long level : e.tested(q)) {
        if (gamma && !gamma_within_cap(q.p, level))
            throw GammaCapExceeded();
        rep.factors.push_back(evaluate_level(e, q, level));
    }
    for (long level : e.informational(q)) {
        if (gamma && !gamma_within_cap(q.p, level)) {
            rep.notes.push_back("p^" + std::to_string(level) + " skipped: gamma precision cap");
            continue;
        }
        rep.informational.push_back(evaluate_level(e, q, level));
    }
    rep.pass = rep.factors_pass();
    rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

Report theorem12_check(unsigned long p, long r) { return verify_super("P-T12", PParams{p, r, 1, 1}); }

DworkResult dwork_check(const std::string& family, unsigned long p, long r, long zdeg)
{
    auto t0 = std::chrono::steady_clock::now();
    if (!is_prime(p))
        throw ConstraintError("p prime");
    if (r < 1)
        throw ConstraintError("r >= 1");
    const ClassicalTermSpec& spec = classical_family(family);
    const long top = ipow(p, r + 1);  // coefficients A_0 .. A_{p^{r+1}-1}
    if (zdeg < 0 || zdeg > top - 1)
        zdeg = top - 1;

    DworkResult res;
    res.exact_integers = spec.rising.empty() && spec.factorial_exponent == 0 && spec.geometric.get_den() == 1;
    const mpz_class M = prime_power(p, r);

    // A_k, exactly when integral by construction, else as residues mod p^r
    std::vector<mpz_class> A(static_cast<std::size_t>(top));
    if (res.exact_integers) {
        for (long k = 0; k < top; ++k)
            A[static_cast<std::size_t>(k)] = term_classical(spec, k).get_num();
    } else {
        ClassicalTermSpec core{spec.name, false, std::nullopt, spec.rising, spec.factorial_exponent, spec.geometric};
        PadicInt base = PadicInt::from_rational(1, p, r);
        for (long k = 0; k < top; ++k) {
            if (k > 0) {
                mpq_class num = spec.geometric, den = 1;
                for (const auto& rf : spec.rising)
                    for (int i = 0; i < std::abs(rf.exponent); ++i)
                        (rf.exponent > 0 ? num : den) *= rf.base + (k - 1);
                for (int i = 0; i < std::abs(spec.factorial_exponent); ++i)
                    (spec.factorial_exponent > 0 ? den : num) *= k;
                base = base * PadicInt::from_rational(num / den, p, r);
            }
            PadicInt t = base;
            if (spec.linear)
                t = t * (spec.linear->first * k + spec.linear->second == 0
                             ? PadicInt::zero(p)
                             : PadicInt::from_rational(spec.linear->first * k + spec.linear->second, p, r));
            if (spec.alternating && (k & 1))
                t = t.negated();
            if (!t.is_zero() && t.valuation() < 0)
                throw std::invalid_argument("coefficients are not p-integral");
            A[static_cast<std::size_t>(k)] = t.is_zero() ? mpz_class(0) : t.residue(r);
        }
    }

    auto trunc = [&](long j) {  // f_j(z) coefficients
        long len = std::min(ipow(p, j), zdeg + 1);
        return std::vector<mpz_class>(A.begin(), A.begin() + len);
    };
    auto at_zp = [&](long j) {  // f_j(z^p)
        std::vector<mpz_class> out(static_cast<std::size_t>(zdeg + 1));
        long len = ipow(p, j);
        for (long k = 0; k < len && k * static_cast<long>(p) <= zdeg; ++k)
            out[static_cast<std::size_t>(k * static_cast<long>(p))] = A[static_cast<std::size_t>(k)];
        return out;
    };
    auto mul = [&](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
        std::vector<mpz_class> out(static_cast<std::size_t>(zdeg + 1));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(zdeg); ++j)
                if (b[j] != 0)
                    out[i + j] += a[i] * b[j];
        }
        if (!res.exact_integers)
            for (auto& c : out)
                c = mod_pos(c, M);
        return out;
    };
    auto lhs = mul(trunc(r + 1), at_zp(r - 1));
    auto rhs = mul(trunc(r), at_zp(r));

    FactorRecord f;
    f.base = p;
    f.required = r;
    std::optional<long> best;
    for (long i = 0; i <= zdeg; ++i) {
        mpz_class d = lhs[static_cast<std::size_t>(i)] - rhs[static_cast<std::size_t>(i)];
        if (!res.exact_integers)
            d = mod_pos(d, M);
        if (d == 0)
            continue;
        long v = strip(d, p);
        if (!best || v < *best)
            best = v;
    }
    if (res.exact_integers) {
        f.achieved = best;
        f.exact = true;
    } else {
        f.achieved = best ? *best : r;
        f.exact = best.has_value();
    }
    f.pass = !f.achieved || *f.achieved >= r;

    res.guard_ok = false;
    for (long k = 0; k < static_cast<long>(p); ++k)
        if (mod_pos(A[static_cast<std::size_t>(k)], p) != 0)
            res.guard_ok = true;

    Report& rep = res.report;
    rep.kind = "p";
    rep.id = "DWORK:" + family;
    rep.status = "PROVEN";
    rep.params = {{"p", static_cast<long>(p)}, {"r", r}, {"zdeg", zdeg}};
    rep.engine = res.exact_integers ? "exact" : "padic";
    rep.factors.push_back(f);
    if (!res.guard_ok)
        rep.notes.push_back("f_1(z^p) vanishes mod p");
    rep.notes.push_back("only the mod p well-definedness guard is enforced");
    rep.pass = f.pass && res.guard_ok;
    rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace qdwork
