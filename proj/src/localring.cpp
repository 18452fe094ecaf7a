#include "qdwork/localring.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace qdwork {

namespace {

// Fold a vector indexed by powers of zeta modulo y^N - 1, then modulo Phi_N.
template <class T>
std::vector<T> reduce_generic(const CycloField& K, std::vector<T> v)
{
    const std::size_t n = K.index(), phi = K.degree();
    if (v.size() > n) {
        for (std::size_t i = n; i < v.size(); ++i)
            if (sgn(v[i]) != 0)
                v[i % n] += v[i];
        v.resize(n);
    }
    const auto& P = K.modulus().coeffs();
    for (std::size_t i = v.size(); i-- > phi;) {
        if (sgn(v[i]) == 0)
            continue;
        T c = v[i];
        for (std::size_t s = 0; s < phi; ++s)
            if (sgn(P[s]) != 0)
                v[i - phi + s] -= c * P[s];
        v[i] = 0;
    }
    v.resize(phi);
    return v;
}

template <class T>
void add_product(std::vector<T>& acc, const std::vector<T>& a, const std::vector<T>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (sgn(b[j]) != 0)
                acc[i + j] += a[i] * b[j];
    }
}

template <class T>
bool all_zero(const std::vector<T>& a)
{
    for (const auto& c : a)
        if (sgn(c) != 0)
            return false;
    return true;
}

template <class T>
std::vector<std::vector<T>> series_mul_generic(const CycloField& K, const std::vector<std::vector<T>>& a,
                                               const std::vector<std::vector<T>>& b, std::size_t len)
{
    const std::size_t phi = K.degree();
    std::vector<std::vector<T>> out(len);
    std::vector<bool> az(a.size()), bz(b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        az[i] = all_zero(a[i]);
    for (std::size_t i = 0; i < b.size(); ++i)
        bz[i] = all_zero(b[i]);
    for (std::size_t k = 0; k < len; ++k) {
        std::vector<T> acc(2 * phi);
        for (std::size_t i = 0; i <= k && i < a.size(); ++i) {
            if (k - i >= b.size() || az[i] || bz[k - i])
                continue;
            add_product(acc, a[i], b[k - i]);
        }
        out[k] = reduce_generic(K, std::move(acc));
    }
    return out;
}

// Taylor coefficients at zeta of a polynomial with coefficients f[j].
template <class T>
std::vector<std::vector<T>> taylor_generic(const CycloField& K, const std::vector<T>& f, std::size_t len)
{
    const std::size_t n = K.index();
    std::vector<std::vector<T>> out(len);
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<T> acc(n);
        mpz_class b = 1;  // binom(j, i)
        for (std::size_t j = i; j < f.size(); ++j) {
            if (j > i) {
                b *= static_cast<unsigned long>(j);
                mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(j - i));
            }
            if (sgn(f[j]) != 0)
                acc[(j - i) % n] += f[j] * b;
        }
        out[i] = reduce_generic(K, std::move(acc));
    }
    return out;
}

using QElem = std::vector<mpq_class>;
using QSeries = std::vector<QElem>;

QElem to_q(const KElem& a)
{
    QElem out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i];
    return out;
}

QSeries to_q(const Series& a)
{
    QSeries out;
    out.reserve(a.size());
    for (const auto& c : a)
        out.push_back(to_q(c));
    return out;
}

void qtrim(QElem& a)
{
    while (!a.empty() && sgn(a.back()) == 0)
        a.pop_back();
}

// Inverse of a(zeta) in Q(zeta), by the extended Euclidean algorithm over Q.
QElem k_inverse(const CycloField& K, const QElem& a)
{
    QElem r0(K.modulus().coeffs().begin(), K.modulus().coeffs().end());
    QElem r1 = a;
    qtrim(r1);
    if (r1.empty())
        throw std::domain_error("division by zero");
    QElem s0, s1{mpq_class(1)};
    while (!r1.empty()) {
        // r0 = quo * r1 + rem
        QElem rem = r0, quo;
        if (rem.size() >= r1.size())
            quo.assign(rem.size() - r1.size() + 1, mpq_class(0));
        while (rem.size() >= r1.size() && !rem.empty()) {
            std::size_t d = rem.size() - r1.size();
            mpq_class c = rem.back() / r1.back();
            quo[d] = c;
            for (std::size_t i = 0; i < r1.size(); ++i)
                rem[i + d] -= c * r1[i];
            rem.pop_back();
            qtrim(rem);
        }
        // s_new = s0 - quo * s1
        QElem prod(quo.size() + s1.size(), mpq_class(0));
        for (std::size_t i = 0; i < quo.size(); ++i)
            for (std::size_t j = 0; j < s1.size(); ++j)
                prod[i + j] += quo[i] * s1[j];
        QElem snew(std::max(s0.size(), prod.size()), mpq_class(0));
        for (std::size_t i = 0; i < s0.size(); ++i)
            snew[i] += s0[i];
        for (std::size_t i = 0; i < prod.size(); ++i)
            snew[i] -= prod[i];
        qtrim(snew);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(snew);
    }
    // r0 is a nonzero constant since Phi_N is irreducible
    if (r0.size() != 1)
        throw std::logic_error("inverse in cyclotomic field failed");
    for (auto& c : s0)
        c /= r0[0];
    if (s0.size() < K.degree())
        s0.resize(K.degree(), mpq_class(0));
    return reduce_generic(K, std::move(s0));
}

QSeries q_series_inverse(const CycloField& K, const QSeries& d, std::size_t len)
{
    QElem inv0 = k_inverse(K, d[0]);
    QSeries e(len);
    e[0] = inv0;
    for (std::size_t k = 1; k < len; ++k) {
        std::vector<mpq_class> acc(2 * K.degree());
        for (std::size_t j = 1; j <= k && j < d.size(); ++j)
            add_product(acc, d[j], e[k - j]);
        QElem s = reduce_generic(K, std::move(acc));
        std::vector<mpq_class> t(2 * K.degree());
        add_product(t, s, inv0);
        QElem v = reduce_generic(K, std::move(t));
        for (auto& c : v)
            c = -c;
        e[k] = std::move(v);
    }
    return e;
}

}  // namespace

CycloField::CycloField(unsigned long N) : n_(N), cyclo_(cyclotomic(N))
{
    phi_ = static_cast<std::size_t>(cyclo_.degree());
    for (std::size_t s = 0; s < phi_; ++s)
        if (sgn(cyclo_[s]) != 0)
            support_.push_back(s);
}

std::shared_ptr<const CycloField> CycloField::get(unsigned long N)
{
    if (N == 0)
        throw std::invalid_argument("undefined index");
    static std::mutex mu;
    static std::map<unsigned long, std::shared_ptr<const CycloField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it != cache.end())
        return it->second;
    auto f = std::make_shared<const CycloField>(N);
    cache.emplace(N, f);
    return f;
}

KElem CycloField::one() const
{
    KElem out(phi_);
    out[0] = 1;
    return out;
}

bool CycloField::is_zero(const KElem& a) const { return all_zero(a); }

KElem CycloField::reduce(std::vector<mpz_class> v) const
{
    if (v.size() > n_) {
        for (std::size_t i = n_; i < v.size(); ++i)
            if (sgn(v[i]) != 0)
                v[i % n_] += v[i];
        v.resize(n_);
    }
    for (std::size_t i = v.size(); i-- > phi_;) {
        if (sgn(v[i]) == 0)
            continue;
        mpz_class c = v[i];
        for (std::size_t s : support_)
            mpz_submul(v[i - phi_ + s].get_mpz_t(), c.get_mpz_t(), cyclo_[s].get_mpz_t());
        v[i] = 0;
    }
    v.resize(phi_);
    return v;
}

KElem CycloField::mul(const KElem& a, const KElem& b) const
{
    std::vector<mpz_class> acc(2 * phi_);
    add_product(acc, a, b);
    return reduce(std::move(acc));
}

KElem CycloField::from_sparse(const SparseK& s) const
{
    std::vector<mpz_class> acc(n_);
    for (const auto& [c, j] : s)
        acc[j % n_] += c;
    return reduce(std::move(acc));
}

KElem CycloField::from_poly(const IntPoly& f) const { return reduce(f.coeffs()); }

namespace series {

Series zeros(const CycloField& K, std::size_t len) { return Series(len, K.zero()); }

Series one(const CycloField& K, std::size_t len)
{
    Series s = zeros(K, len);
    if (len > 0)
        s[0] = K.one();
    return s;
}

Series mul(const CycloField& K, const Series& a, const Series& b, std::size_t len)
{
    return series_mul_generic(K, a, b, len);
}

void mul_sparse(const CycloField& K, Series& a, const SparseSeries& f)
{
    const std::size_t n = K.index(), phi = K.degree();
    std::vector<mpz_class> acc(n);
    for (std::size_t i = a.size(); i-- > 0;) {
        for (auto& c : acc)
            c = 0;
        bool any = false;
        for (std::size_t t = 0; t <= i && t < f.size(); ++t) {
            const KElem& src = a[i - t];
            for (const auto& [c, j] : f[t]) {
                for (std::size_t u = 0; u < phi; ++u) {
                    if (sgn(src[u]) == 0)
                        continue;
                    std::size_t idx = u + j;
                    if (idx >= n)
                        idx -= n;
                    mpz_addmul(acc[idx].get_mpz_t(), c.get_mpz_t(), src[u].get_mpz_t());
                    any = true;
                }
            }
        }
        a[i] = any ? K.reduce(acc) : K.zero();
    }
}

void scale(Series& a, const mpz_class& c)
{
    for (auto& e : a)
        for (auto& x : e)
            x *= c;
}

long valuation(const CycloField& K, const Series& a)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!K.is_zero(a[i]))
            return static_cast<long>(i);
    return -1;
}

Factor one_minus(const CycloField& K, int sign, unsigned long M, std::size_t len)
{
    if (M == 0)
        throw std::invalid_argument("factor 1 - q^0 is not a series unit");
    const unsigned long n = K.index();
    Factor out;
    out.valuation = one_minus_valuation(sign, static_cast<long>(M), n);
    std::size_t first = static_cast<std::size_t>(out.valuation);
    out.coeffs.reserve(len);
    if (first == 0)
        out.coeffs.push_back({{mpz_class(1), 0}, {mpz_class(-sign), M % n}});
    mpz_class b = 1;
    for (std::size_t t = 1; out.coeffs.size() < len; ++t) {
        if (t > M) {
            out.coeffs.emplace_back();
            continue;
        }
        b *= M - t + 1;
        mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), t);
        out.coeffs.push_back({{mpz_class(-sign * b), (M - t) % n}});
    }
    return out;
}

SparseSeries q_power(const CycloField& K, unsigned long t, std::size_t len)
{
    const unsigned long n = K.index();
    SparseSeries out(len);
    mpz_class b = 1;
    for (std::size_t i = 0; i < len && i <= t; ++i) {
        if (i > 0) {
            b *= t - i + 1;
            mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), i);
        }
        out[i].push_back({b, (t - i) % n});
    }
    return out;
}

Series taylor(const CycloField& K, const IntPoly& f, std::size_t len) { return taylor_generic(K, f.coeffs(), len); }

}  // namespace series

int one_minus_valuation(int sign, long m, unsigned long N)
{
    const long n = static_cast<long>(N);
    if (sign == 1)
        return m % n == 0 ? 1 : 0;
    return ((2 * m) % n == 0 && m % n != 0) ? 1 : 0;
}

long poch_valuation(const PochFactorSpec& spec, long count, unsigned long N)
{
    spec.validate();
    long v = 0;
    for (long j = 0; j < count; ++j) {
        long m = spec.offset + spec.step * j;
        if (m == 0 && spec.sign == 1)
            throw std::domain_error("Pochhammer factor vanishes identically");
        v += one_minus_valuation(spec.sign, m, N);
    }
    return v * spec.exponent;
}

// ---------------------------------------------------------------------------

LocalValue LocalValue::zero(FieldPtr K, long abs_precision)
{
    LocalValue z;
    z.K_ = std::move(K);
    z.zero_ = true;
    z.v_ = abs_precision;
    return z;
}

LocalValue LocalValue::one(FieldPtr K, long w)
{
    const auto& F = *K;
    return from_series(std::move(K), 0, series::one(F, static_cast<std::size_t>(w)),
                       series::one(F, static_cast<std::size_t>(w)));
}

LocalValue LocalValue::from_series(FieldPtr K, long v, Series num, Series den)
{
    if (num.size() != den.size())
        throw std::invalid_argument("numerator and denominator series differ in length");
    if (num.empty())
        return zero(std::move(K), v);
    if (K->is_zero(den[0]))
        throw std::domain_error("denominator series is not a unit");
    long s = series::valuation(*K, num);
    if (s < 0)
        return zero(std::move(K), v + static_cast<long>(num.size()));
    LocalValue out;
    out.K_ = std::move(K);
    out.zero_ = false;
    out.v_ = v + s;
    if (s > 0) {
        num.erase(num.begin(), num.begin() + s);
        den.resize(num.size());
    }
    out.num_ = std::move(num);
    out.den_ = std::move(den);
    return out;
}

long LocalValue::absolute_precision() const
{
    if (zero_)
        return v_;
    return v_ + static_cast<long>(num_.size());
}

LocalValue LocalValue::inverse() const
{
    if (zero_) {
        if (v_ == kExact)
            throw std::domain_error("division by zero");
        throw PrecisionExhausted();
    }
    LocalValue out = *this;
    std::swap(out.num_, out.den_);
    out.v_ = -v_;
    return out;
}

LocalValue LocalValue::negated() const
{
    LocalValue out = *this;
    for (auto& e : out.num_)
        for (auto& c : e)
            c = -c;
    return out;
}

LocalValue LocalValue::truncated(long w) const
{
    if (zero_ || w >= precision())
        return *this;
    if (w <= 0)
        return zero(K_, v_ + std::max(w, 0L));
    LocalValue out = *this;
    out.num_.resize(static_cast<std::size_t>(w));
    out.den_.resize(static_cast<std::size_t>(w));
    return out;
}

LocalValue LocalValue::pow(long e) const
{
    if (e < 0)
        return inverse().pow(-e);
    if (zero_) {
        if (e == 0)
            throw std::domain_error("zero to the zeroth power");
        return v_ == kExact ? *this : zero(K_, v_ * e);
    }
    LocalValue result = one(K_, precision());
    LocalValue base = *this;
    while (e > 0) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e > 0)
            base = base * base;
    }
    return result;
}

LocalValue operator*(const LocalValue& a, const LocalValue& b)
{
    if (a.K_->index() != b.K_->index())
        throw std::invalid_argument("local values at different cyclotomic indices");
    if (a.zero_ || b.zero_) {
        if (a.is_exact_zero())
            return a;
        if (b.is_exact_zero())
            return b;
        // an inexact zero times anything: bound the vanishing order
        return LocalValue::zero(a.K_, a.v_ + b.v_);
    }
    const auto& K = *a.K_;
    std::size_t w = std::min(a.num_.size(), b.num_.size());
    LocalValue out;
    out.K_ = a.K_;
    out.zero_ = false;
    out.v_ = a.v_ + b.v_;
    out.num_ = series::mul(K, a.num_, b.num_, w);
    out.den_ = series::mul(K, a.den_, b.den_, w);
    return out;
}

LocalValue operator+(const LocalValue& a, const LocalValue& b)
{
    if (a.K_->index() != b.K_->index())
        throw std::invalid_argument("local values at different cyclotomic indices");
    if (a.is_exact_zero())
        return b;
    if (b.is_exact_zero())
        return a;
    if (a.zero_ && b.zero_)
        return LocalValue::zero(a.K_, std::min(a.v_, b.v_));
    if (a.zero_ || b.zero_) {
        const LocalValue& z = a.zero_ ? a : b;
        const LocalValue& x = a.zero_ ? b : a;
        if (x.v_ >= z.v_)
            return LocalValue::zero(a.K_, z.v_);
        return x.truncated(z.v_ - x.v_);
    }
    const LocalValue& lo = a.v_ <= b.v_ ? a : b;
    const LocalValue& hi = a.v_ <= b.v_ ? b : a;
    const auto& K = *a.K_;
    const long d = hi.v_ - lo.v_;
    // hi's denominator is treated as an exact (zero-padded) series: it cancels
    // against itself in lo's term, so the sum keeps min(abs_lo, abs_hi)
    const long L = std::min(static_cast<long>(lo.num_.size()), d + static_cast<long>(hi.num_.size()));
    if (d >= L)
        return lo.truncated(L);
    auto len = static_cast<std::size_t>(L);
    Series num = series::mul(K, lo.num_, hi.den_, len);
    Series tail = series::mul(K, hi.num_, lo.den_, len - static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < tail.size(); ++i) {
        auto& dst = num[i + static_cast<std::size_t>(d)];
        for (std::size_t u = 0; u < dst.size(); ++u)
            dst[u] += tail[i][u];
    }
    Series den = series::mul(K, lo.den_, hi.den_, len);
    return LocalValue::from_series(a.K_, lo.v_, std::move(num), std::move(den));
}

RatPoly LocalValue::unit_residue() const
{
    if (zero_)
        throw std::domain_error("zero has no unit part");
    const auto& K = *K_;
    const std::size_t w = num_.size(), phi = K.degree();
    // unit part as a series: (num/den) * h^{-v}, where Phi_N(zeta + x) = x h(x)
    QSeries T = series_mul_generic(K, to_q(num_), q_series_inverse(K, to_q(den_), w), w);
    Series h = series::taylor(K, K.modulus(), w + 1);
    h.erase(h.begin());
    if (v_ != 0) {
        Series hp = series::one(K, w);
        for (long i = 0; i < std::abs(v_); ++i)
            hp = series::mul(K, hp, h, w);
        QSeries f = v_ > 0 ? q_series_inverse(K, to_q(hp), w) : to_q(hp);
        T = series_mul_generic(K, T, f, w);
    }
    // lift T to sum_i c_i(q) Phi_N(q)^i with deg c_i < phi
    QElem h0inv = k_inverse(K, to_q(h[0]));
    QSeries hx_pow = to_q(series::one(K, w));  // x^i h^i, shifted
    QSeries hq = to_q(h);
    std::vector<mpq_class> g(phi * w, mpq_class(0));
    std::vector<mpq_class> phi_pow{mpq_class(1)};  // Phi_N(q)^i
    QElem h0pow = to_q(K.one());                    // h0^{-i}
    for (std::size_t i = 0; i < w; ++i) {
        std::vector<mpq_class> tmp(2 * phi);
        add_product(tmp, T[i], h0pow);
        QElem c = reduce_generic(K, std::move(tmp));
        if (!all_zero(c)) {
            QSeries ct = taylor_generic(K, c, w - i);
            QSeries sub = series_mul_generic(K, ct, hx_pow, w - i);
            for (std::size_t k = 0; k < sub.size(); ++k)
                for (std::size_t u = 0; u < phi; ++u)
                    T[i + k][u] -= sub[k][u];
            for (std::size_t a = 0; a < c.size(); ++a) {
                if (sgn(c[a]) == 0)
                    continue;
                for (std::size_t b = 0; b < phi_pow.size(); ++b)
                    g[a + b] += c[a] * phi_pow[b];
            }
        }
        if (i + 1 < w) {
            hx_pow = series_mul_generic(K, hx_pow, hq, w - i - 1);
            std::vector<mpq_class> t2(2 * phi);
            add_product(t2, h0pow, h0inv);
            h0pow = reduce_generic(K, std::move(t2));
            std::vector<mpq_class> np(phi_pow.size() + phi, mpq_class(0));
            const auto& P = K.modulus().coeffs();
            for (std::size_t a = 0; a < phi_pow.size(); ++a)
                for (std::size_t b = 0; b < P.size(); ++b)
                    np[a + b] += phi_pow[a] * P[b];
            phi_pow = std::move(np);
        }
    }
    mpz_class den = 1;
    for (const auto& c : g)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> ints(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        ints[i] = g[i].get_num() * (den / g[i].get_den());
    return RatPoly(IntPoly(std::move(ints)), IntPoly::constant(den));
}

LocalValue local_embed(const RatPoly& f, unsigned long N, long w)
{
    auto K = CycloField::get(N);
    if (f.is_zero())
        return LocalValue::zero(K);
    auto ns = phi_split(f.num(), N);
    auto ds = phi_split(f.den(), N);
    auto len = static_cast<std::size_t>(w);
    // Phi_N^v = x^v h^v, so each stripped Phi_N leaves a factor h behind
    Series h = series::taylor(*K, K->modulus(), len + 1);
    h.erase(h.begin());
    auto with_h = [&](const IntPoly& g, long e) {
        Series s = series::taylor(*K, g, len);
        for (long i = 0; i < e; ++i)
            s = series::mul(*K, s, h, len);
        return s;
    };
    return LocalValue::from_series(K, ns.valuation - ds.valuation, with_h(ns.cofactor, ns.valuation),
                                   with_h(ds.cofactor, ds.valuation));
}

LocalValue local_pochhammer(const PochFactorSpec& spec, long count, unsigned long N, long w)
{
    spec.validate();
    if (count < 0)
        throw std::invalid_argument("Pochhammer count must be nonnegative");
    auto K = CycloField::get(N);
    auto len = static_cast<std::size_t>(w);
    Series num = series::one(*K, len);
    long v = 0;
    for (long j = 0; j < count; ++j) {
        long m = spec.offset + spec.step * j;
        if (m == 0 && spec.sign == 1) {
            if (spec.exponent < 0)
                throw std::domain_error("zero divisor");
            return LocalValue::zero(K);
        }
        auto f = series::one_minus(*K, spec.sign, static_cast<unsigned long>(m), len);
        v += f.valuation;
        series::mul_sparse(*K, num, f.coeffs);
    }
    return LocalValue::from_series(K, v, std::move(num), series::one(*K, len)).pow(spec.exponent);
}

}  // namespace qdwork
