#include "qdwork/summand.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qdwork {

namespace {

PochTerm pt(int sign, long a, long c, int e, long mult = 1) { return {PochFactorSpec{sign, a, c, e}, mult}; }

std::map<std::string, QSummandSpec> make_q_families()
{
    std::map<std::string, QSummandSpec> f;
    QSummandSpec s;

    s = {};
    s.name = "F1";
    s.poch = {pt(1, 1, 2, 2), pt(1, 2, 4, 1), pt(1, 2, 2, -2), pt(1, 4, 4, -1)};
    s.c1 = 2;
    f[s.name] = s;

    s = {};
    s.name = "F2";
    s.one_plus = {{4, 1, 1}, {0, 1, -1}};
    s.poch = {pt(1, 2, 4, 3), pt(1, 4, 4, -3)};
    s.c1 = 1;
    f[s.name] = s;

    s = {};
    s.name = "F3";
    s.poch = {pt(1, 1, 2, 2), pt(1, 2, 2, -2)};
    f[s.name] = s;

    s = {};
    s.name = "F4";
    s.poch = {pt(1, 1, 2, 2), pt(1, 2, 2, -1), pt(1, 4, 4, -1)};
    s.c1 = 2;
    f[s.name] = s;

    // q^k [2k choose k] / (-q;q)_k with the Gaussian binomial as (q;q)_{2k} / (q;q)_k^2
    s = {};
    s.name = "F5";
    s.poch = {pt(1, 1, 1, 1, 2), pt(-1, 1, 1, -1), pt(1, 1, 1, -2)};
    s.c1 = 1;
    f[s.name] = s;

    s = {};
    s.name = "F6";
    s.poch = {pt(1, 1, 1, 1, 2), pt(1, 1, 1, -2)};
    s.c1 = 1;
    f[s.name] = s;

    s = {};
    s.name = "F7";
    s.alternating = true;
    s.bracket = BracketSpec{4, 1, 1};
    s.poch = {pt(1, 1, 2, 4), pt(1, 2, 4, 1), pt(1, 2, 2, -4), pt(1, 4, 4, -1)};
    s.c1 = 1;
    f[s.name] = s;

    s = {};
    s.name = "F8";
    s.alternating = true;
    s.bracket = BracketSpec{4, 1, 1};
    s.poch = {pt(1, 2, 4, 3), pt(1, 4, 4, -3)};
    s.c1 = 1;
    f[s.name] = s;

    s = {};
    s.name = "F9";
    s.alternating = true;
    s.bracket = BracketSpec{3, 1, 1};
    s.poch = {pt(1, 1, 2, 3), pt(1, 1, 1, -3)};
    f[s.name] = s;

    s = {};
    s.name = "F10";
    s.alternating = true;
    s.bracket = BracketSpec{4, 1, 1};
    s.poch = {pt(1, 1, 2, 3), pt(1, 2, 2, -3)};
    s.c2 = 1;
    f[s.name] = s;

    return f;
}

std::map<std::string, ClassicalTermSpec> make_classical_families()
{
    const mpq_class half(1, 2);
    std::map<std::string, ClassicalTermSpec> f;
    auto add = [&](ClassicalTermSpec s) { f[s.name] = std::move(s); };
    add({"H", false, std::nullopt, {{half, 3}}, 3, 1});
    add({"J", false, std::make_pair(6L, 1L), {{half, 3}}, 3, mpq_class(1, 4)});
    add({"RV", false, std::nullopt, {{half, 2}}, 2, 1});
    add({"RV2", false, std::nullopt, {{half, 2}}, 2, mpq_class(1, 2)});
    // binom(2k,k) = 4^k (1/2)_k / k!
    add({"CB2", false, std::nullopt, {{half, 1}}, 1, 2});
    add({"CB", false, std::nullopt, {{half, 1}}, 1, 4});
    add({"K5", true, std::make_pair(4L, 1L), {{half, 5}}, 5, 1});
    add({"K3", true, std::make_pair(4L, 1L), {{half, 3}}, 3, 1});
    add({"K8", true, std::make_pair(3L, 1L), {{half, 3}}, 3, 8});
    add({"ONE", false, std::nullopt, {}, 0, 1});
    return f;
}

const std::map<std::string, QSummandSpec>& q_catalog()
{
    static const auto c = make_q_families();
    return c;
}

const std::map<std::string, ClassicalTermSpec>& classical_catalog()
{
    static const auto c = make_classical_families();
    return c;
}

mpz_class pow_z(const mpz_class& b, unsigned long e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

mpq_class pow_q(const mpq_class& b, unsigned long e)
{
    mpq_class r(pow_z(b.get_num(), e), pow_z(b.get_den(), e));
    r.canonicalize();
    return r;
}

// Series of a sparse factor expansion, made dense.
Series dense(const CycloField& K, const SparseSeries& s)
{
    Series out;
    out.reserve(s.size());
    for (const auto& c : s)
        out.push_back(K.from_sparse(c));
    return out;
}

}  // namespace

QSummandSpec QSummandSpec::scaled(long m) const
{
    if (m < 1)
        throw std::invalid_argument("scale must be positive");
    QSummandSpec s = *this;
    if (s.bracket)
        s.bracket->base *= m;
    for (auto& p : s.poch)
        p.spec = p.spec.scaled(m);
    for (auto& o : s.one_plus) {
        o.a *= m;
        o.b *= m;
    }
    s.c2 *= m;
    s.c1 *= m;
    s.c0 *= m;
    return s;
}

const QSummandSpec& q_family(const std::string& id)
{
    auto it = q_catalog().find(id);
    if (it == q_catalog().end())
        throw std::invalid_argument("unknown summand family " + id);
    return it->second;
}

std::vector<std::string> q_family_ids()
{
    std::vector<std::string> ids;
    for (int i = 1; i <= 10; ++i)
        ids.push_back("F" + std::to_string(i));
    return ids;
}

const ClassicalTermSpec& classical_family(const std::string& id)
{
    auto it = classical_catalog().find(id);
    if (it == classical_catalog().end())
        throw std::invalid_argument("unknown classical family " + id);
    return it->second;
}

std::vector<std::string> classical_family_ids() { return {"H", "J", "RV", "RV2", "CB2", "CB", "K5", "K3", "K8", "ONE"}; }

std::string classical_partner(const std::string& q_id)
{
    static const std::map<std::string, std::string> pairs = {
        {"F1", "H"},  {"F2", "H"},  {"F3", "RV"}, {"F4", "RV2"}, {"F5", "CB2"},
        {"F6", "CB"}, {"F7", "K5"}, {"F8", "K3"}, {"F9", "K8"},  {"F10", "K3"}};
    auto it = pairs.find(q_id);
    if (it == pairs.end())
        throw std::invalid_argument("unknown summand family " + q_id);
    return it->second;
}

RatPoly term_q(const QSummandSpec& spec, long k, long m)
{
    if (k < 0)
        throw std::invalid_argument("summation index must be nonnegative");
    QSummandSpec s = spec.scaled(m);
    IntPoly num = IntPoly::constant(1), den = IntPoly::constant(1);
    for (const auto& p : s.poch) {
        p.spec.validate();
        IntPoly f = poch_product(p.spec.sign, p.spec.offset, p.spec.step, p.mult * k);
        if (p.spec.exponent > 0) {
            num *= pow(f, static_cast<unsigned>(p.spec.exponent));
        } else {
            if (f.is_zero())
                throw std::domain_error("zero divisor");
            den *= pow(f, static_cast<unsigned>(-p.spec.exponent));
        }
    }
    if (s.bracket) {
        long len = s.bracket->alpha * k + s.bracket->beta;
        if (len < 0)
            throw std::invalid_argument("negative q-integer");
        if (len == 0)
            return RatPoly();
        num *= q_integer(len, s.bracket->base);
    }
    for (const auto& o : s.one_plus) {
        long M = o.a * k + o.b;
        IntPoly f = M == 0 ? IntPoly::constant(2) : IntPoly::one_minus(-1, static_cast<std::size_t>(M));
        if (o.e > 0)
            num *= pow(f, static_cast<unsigned>(o.e));
        else
            den *= pow(f, static_cast<unsigned>(-o.e));
    }
    long t = s.qexp(k);
    if (t > 0)
        num = num.shifted(static_cast<std::size_t>(t));
    else if (t < 0)
        den = den.shifted(static_cast<std::size_t>(-t));
    if (s.alternating && (k & 1))
        num = -num;
    return RatPoly(std::move(num), std::move(den));
}

LocalValue local_one_minus(int sign, long M, unsigned long N, long w)
{
    if (M <= 0)
        throw std::invalid_argument("local_one_minus requires a positive exponent");
    auto K = CycloField::get(N);
    auto f = series::one_minus(*K, sign, static_cast<unsigned long>(M), static_cast<std::size_t>(w));
    return LocalValue::from_series(K, f.valuation, dense(*K, f.coeffs), series::one(*K, static_cast<std::size_t>(w)));
}

LocalValue local_q_power(long t, unsigned long N, long w)
{
    if (t < 0)
        return local_q_power(-t, N, w).inverse();
    auto K = CycloField::get(N);
    auto len = static_cast<std::size_t>(w);
    return LocalValue::from_series(K, 0, dense(*K, series::q_power(*K, static_cast<unsigned long>(t), len)),
                                   series::one(*K, len));
}

LocalValue local_constant(const mpq_class& c, unsigned long N, long w)
{
    auto K = CycloField::get(N);
    if (c == 0)
        return LocalValue::zero(K);
    auto len = static_cast<std::size_t>(w);
    Series num = series::one(*K, len), den = series::one(*K, len);
    series::scale(num, c.get_num());
    series::scale(den, c.get_den());
    return LocalValue::from_series(K, 0, std::move(num), std::move(den));
}

LocalValue term_local(const QSummandSpec& spec, long k, long m, unsigned long N, long w)
{
    if (k < 0)
        throw std::invalid_argument("summation index must be nonnegative");
    QSummandSpec s = spec.scaled(m);
    auto K = CycloField::get(N);
    LocalValue out = LocalValue::one(K, w);
    for (const auto& p : s.poch)
        out = out * local_pochhammer(p.spec, p.mult * k, N, w);
    if (s.bracket) {
        long len = s.bracket->alpha * k + s.bracket->beta;
        if (len < 0)
            throw std::invalid_argument("negative q-integer");
        if (len == 0)
            return LocalValue::zero(K);
        out = out * local_one_minus(1, s.bracket->base * len, N, w) *
              local_one_minus(1, s.bracket->base, N, w).inverse();
    }
    for (const auto& o : s.one_plus) {
        long M = o.a * k + o.b;
        LocalValue f = M == 0 ? local_constant(2, N, w) : local_one_minus(-1, M, N, w);
        out = out * f.pow(o.e);
    }
    out = out * local_q_power(s.qexp(k), N, w);
    if (s.alternating && (k & 1))
        out = out.negated();
    return out;
}

mpq_class term_classical(const ClassicalTermSpec& spec, long k)
{
    if (k < 0)
        throw std::invalid_argument("summation index must be nonnegative");
    mpq_class t = 1;
    for (const auto& r : spec.rising) {
        mpq_class rf = 1;
        for (long j = 0; j < k; ++j)
            rf *= r.base + j;
        t *= r.exponent >= 0 ? pow_q(rf, static_cast<unsigned long>(r.exponent))
                             : 1 / pow_q(rf, static_cast<unsigned long>(-r.exponent));
    }
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
    if (spec.factorial_exponent >= 0)
        t /= pow_z(fact, static_cast<unsigned long>(spec.factorial_exponent));
    else
        t *= pow_z(fact, static_cast<unsigned long>(-spec.factorial_exponent));
    t *= pow_q(spec.geometric, static_cast<unsigned long>(k));
    if (spec.linear)
        t *= spec.linear->first * k + spec.linear->second;
    if (spec.alternating && (k & 1))
        t = -t;
    t.canonicalize();
    return t;
}

mpq_class sum_classical(const ClassicalTermSpec& spec, long lo, long hi)
{
    mpq_class s = 0;
    if (hi < lo)
        return s;
    // base_k = prod (a)_k^e / k!^f c^k, advanced by its term ratio
    mpq_class base = term_classical({spec.name, false, std::nullopt, spec.rising, spec.factorial_exponent, spec.geometric}, lo);
    for (long k = lo; k <= hi; ++k) {
        if (k > lo) {
            mpq_class ratio = spec.geometric;
            for (const auto& r : spec.rising) {
                mpq_class f = r.base + (k - 1);
                ratio *= r.exponent >= 0 ? pow_q(f, static_cast<unsigned long>(r.exponent))
                                         : 1 / pow_q(f, static_cast<unsigned long>(-r.exponent));
            }
            mpq_class kk = k;
            ratio /= spec.factorial_exponent >= 0 ? pow_q(kk, static_cast<unsigned long>(spec.factorial_exponent))
                                                  : 1 / pow_q(kk, static_cast<unsigned long>(-spec.factorial_exponent));
            base *= ratio;
        }
        mpq_class t = base;
        if (spec.linear)
            t *= spec.linear->first * k + spec.linear->second;
        if (spec.alternating && (k & 1))
            t = -t;
        s += t;
    }
    return s;
}

RatPoly sum_q(const QSummandSpec& spec, long lo, long hi, long m)
{
    RatPoly s;
    for (long k = lo; k <= hi; ++k)
        s += term_q(spec, k, m);
    return s;
}

std::vector<TermValuation> term_valuations(const QSummandSpec& spec, long lo, long hi, long m, unsigned long N)
{
    std::vector<TermValuation> out;
    if (hi < lo)
        return out;
    QSummandSpec s = spec.scaled(m);
    // cumulative divisible-factor counts of every Pochhammer term
    std::vector<std::vector<long>> cum(s.poch.size());
    for (std::size_t i = 0; i < s.poch.size(); ++i) {
        const auto& p = s.poch[i];
        long top = p.mult * hi;
        cum[i].assign(static_cast<std::size_t>(top + 1), 0);
        for (long j = 0; j < top; ++j) {
            long M = p.spec.offset + p.spec.step * j;
            if (M == 0 && p.spec.sign == 1)
                throw std::invalid_argument("summand vanishes identically");
            cum[i][static_cast<std::size_t>(j + 1)] = cum[i][static_cast<std::size_t>(j)] + one_minus_valuation(p.spec.sign, M, N);
        }
    }
    for (long k = lo; k <= hi; ++k) {
        TermValuation tv;
        for (std::size_t i = 0; i < s.poch.size(); ++i) {
            long c = cum[i][static_cast<std::size_t>(s.poch[i].mult * k)];
            int e = s.poch[i].spec.exponent;
            (e > 0 ? tv.num : tv.den) += c * std::abs(e);
        }
        if (s.bracket) {
            long len = s.bracket->alpha * k + s.bracket->beta;
            if (len > 0)
                tv.num += one_minus_valuation(1, s.bracket->base * len, N);
            tv.den += one_minus_valuation(1, s.bracket->base, N);
        }
        for (const auto& o : s.one_plus) {
            long M = o.a * k + o.b;
            long v = M == 0 ? 0 : one_minus_valuation(-1, M, N);
            (o.e > 0 ? tv.num : tv.den) += v * std::abs(o.e);
        }
        out.push_back(tv);
    }
    return out;
}

namespace {

LocalValue sum_local_generic(const QSummandSpec& spec, long lo, long hi, long m, unsigned long N, long abs_precision,
                             long floor)
{
    auto K = CycloField::get(N);
    long w = std::max(1L, abs_precision - floor);
    LocalValue s = LocalValue::zero(K);
    for (long k = lo; k <= hi; ++k)
        s = s + term_local(spec, k, m, N, w);
    return s;
}

}  // namespace

LocalValue sum_local(const QSummandSpec& spec, long lo, long hi, long m, unsigned long N, long abs_precision)
{
    auto K = CycloField::get(N);
    if (hi < lo)
        return LocalValue::zero(K);
    if (lo < 0)
        throw std::invalid_argument("summation index must be nonnegative");
    const QSummandSpec s = spec.scaled(m);
    const auto vals = term_valuations(spec, lo, hi, m, N);
    long floor = vals.front().total();
    for (const auto& v : vals)
        floor = std::min(floor, v.total());

    bool fast = true;
    for (long k = lo; k <= hi && fast; ++k)
        fast = s.qexp(k) >= 0;
    for (const auto& o : s.one_plus)
        if (o.a != 0 && o.e < 0)
            fast = false;
    if (!fast)
        return sum_local_generic(spec, lo, hi, m, N, abs_precision, floor);

    const CycloField& F = *K;
    const long L = std::max(1L, abs_precision - floor);
    const auto len = static_cast<std::size_t>(L);
    Series num = series::one(F, len), den = series::one(F, len), P = series::zeros(F, len);
    Series nconst = series::one(F, len), dconst = series::one(F, len);
    bool p_zero = true, num_zero = false;

    auto mul_factor = [&](Series& target, int sign, long M) {
        if (M == 0) {
            if (sign == 1)
                throw std::logic_error("vanishing factor");
            series::scale(target, 2);
            return;
        }
        series::mul_sparse(F, target, series::one_minus(F, sign, static_cast<unsigned long>(M), target.size()).coeffs);
    };

    if (s.bracket)
        mul_factor(dconst, 1, s.bracket->base);
    for (const auto& o : s.one_plus) {
        if (o.a != 0)
            continue;
        for (int i = 0; i < std::abs(o.e); ++i)
            mul_factor(o.e > 0 ? nconst : dconst, -1, o.b);
    }

    // multiply in Pochhammer factors j in [mult*k0, mult*k1)
    auto advance = [&](long k0, long k1) {
        for (const auto& p : s.poch) {
            const auto& ps = p.spec;
            for (long j = p.mult * k0; j < p.mult * k1; ++j) {
                long M = ps.offset + ps.step * j;
                for (int i = 0; i < std::abs(ps.exponent); ++i) {
                    if (ps.exponent > 0) {
                        if (M == 0 && ps.sign == 1) {
                            num_zero = true;
                            continue;
                        }
                        mul_factor(num, ps.sign, M);
                    } else {
                        mul_factor(den, ps.sign, M);
                        if (!p_zero)
                            mul_factor(P, ps.sign, M);
                    }
                }
            }
        }
    };

    advance(0, lo);
    for (long k = lo; k <= hi; ++k) {
        if (k > lo)
            advance(k - 1, k);
        if (num_zero)
            continue;
        long shift = vals[static_cast<std::size_t>(k - lo)].total() - floor;
        if (shift >= L)
            continue;
        long blen = 0;
        if (s.bracket) {
            blen = s.bracket->alpha * k + s.bracket->beta;
            if (blen == 0)
                continue;
        }
        Series T(num.begin(), num.begin() + (L - shift));
        if (s.bracket)
            mul_factor(T, 1, s.bracket->base * blen);
        for (const auto& o : s.one_plus) {
            if (o.a == 0)
                continue;
            for (int i = 0; i < o.e; ++i)
                mul_factor(T, -1, o.a * k + o.b);
        }
        long t = s.qexp(k);
        if (t > 0)
            series::mul_sparse(F, T, series::q_power(F, static_cast<unsigned long>(t), T.size()));
        bool negate = s.alternating && (k & 1);
        for (std::size_t i = 0; i < T.size(); ++i) {
            auto& dst = P[i + static_cast<std::size_t>(shift)];
            for (std::size_t u = 0; u < dst.size(); ++u) {
                if (negate)
                    dst[u] -= T[i][u];
                else
                    dst[u] += T[i][u];
            }
        }
        p_zero = false;
    }
    if (p_zero)
        return LocalValue::zero(K);
    return LocalValue::from_series(K, floor, series::mul(F, P, nconst, len), series::mul(F, den, dconst, len));
}

}  // namespace qdwork
