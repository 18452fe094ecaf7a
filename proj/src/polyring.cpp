#include "qdwork/polyring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qdwork {

namespace {

const mpz_class kZero = 0;

// Below this size schoolbook multiplication wins (measured on Pochhammer products).
constexpr std::size_t kKaratsubaThreshold = 40;

using Coeffs = std::vector<mpz_class>;

void schoolbook(const mpz_class* a, std::size_t na, const mpz_class* b, std::size_t nb, mpz_class* out)
{
    for (std::size_t i = 0; i < na; ++i) {
        if (sgn(a[i]) == 0)
            continue;
        for (std::size_t j = 0; j < nb; ++j)
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
}

// out[0 .. na+nb-1) += a * b
void karatsuba(const mpz_class* a, std::size_t na, const mpz_class* b, std::size_t nb, mpz_class* out)
{
    if (na < kKaratsubaThreshold || nb < kKaratsubaThreshold) {
        schoolbook(a, na, b, nb, out);
        return;
    }
    if (na != nb) {
        // split the longer operand into chunks of the shorter one's length
        if (na < nb) {
            std::swap(a, b);
            std::swap(na, nb);
        }
        for (std::size_t off = 0; off < na; off += nb) {
            std::size_t len = std::min(nb, na - off);
            karatsuba(a + off, len, b, nb, out + off);
        }
        return;
    }
    std::size_t h = na / 2;
    std::size_t hi = na - h;
    // a = a0 + x^h a1, b = b0 + x^h b1
    Coeffs sa(hi), sb(hi);
    for (std::size_t i = 0; i < hi; ++i) {
        sa[i] = a[h + i];
        sb[i] = b[h + i];
        if (i < h) {
            sa[i] += a[i];
            sb[i] += b[i];
        }
    }
    Coeffs z0(2 * h - 1), z2(2 * hi - 1), z1(2 * hi - 1);
    karatsuba(a, h, b, h, z0.data());
    karatsuba(a + h, hi, b + h, hi, z2.data());
    karatsuba(sa.data(), hi, sb.data(), hi, z1.data());
    for (std::size_t i = 0; i < z0.size(); ++i)
        z1[i] -= z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i)
        z1[i] -= z2[i];
    for (std::size_t i = 0; i < z0.size(); ++i)
        out[i] += z0[i];
    for (std::size_t i = 0; i < z1.size(); ++i)
        out[h + i] += z1[i];
    for (std::size_t i = 0; i < z2.size(); ++i)
        out[2 * h + i] += z2[i];
}

}  // namespace

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs)
{
    c_.reserve(coeffs.size());
    for (long c : coeffs)
        c_.emplace_back(c);
    trim();
}

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly(std::vector<mpz_class>{c}); }

IntPoly IntPoly::monomial(const mpz_class& c, std::size_t degree)
{
    std::vector<mpz_class> v(degree + 1);
    v[degree] = c;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::one_minus(int sign, std::size_t m)
{
    std::vector<mpz_class> v(m + 1);
    v[0] += 1;
    v[m] -= sign;
    return IntPoly(std::move(v));
}

void IntPoly::trim()
{
    while (!c_.empty() && sgn(c_.back()) == 0)
        c_.pop_back();
}

const mpz_class& IntPoly::operator[](std::size_t i) const { return i < c_.size() ? c_[i] : kZero; }

const mpz_class& IntPoly::leading() const
{
    if (c_.empty())
        throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

mpz_class IntPoly::eval(const mpz_class& x) const
{
    mpz_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

IntPoly IntPoly::shifted(std::size_t k) const
{
    if (is_zero() || k == 0)
        return *this;
    std::vector<mpz_class> v(c_.size() + k);
    std::copy(c_.begin(), c_.end(), v.begin() + static_cast<std::ptrdiff_t>(k));
    return IntPoly(std::move(v));
}

IntPoly& IntPoly::operator+=(const IntPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<mpz_class> out(a.c_.size() + b.c_.size() - 1);
    karatsuba(a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size(), out.data());
    return IntPoly(std::move(out));
}

IntPoly& IntPoly::operator*=(const IntPoly& o) { return *this = *this * o; }

IntPoly& IntPoly::operator*=(const mpz_class& c)
{
    if (sgn(c) == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_)
        x *= c;
    return *this;
}

IntPoly operator-(IntPoly a)
{
    for (auto& x : a.c_)
        x = -x;
    return a;
}

std::string IntPoly::to_string() const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const mpz_class& c = c_[i];
        if (sgn(c) == 0)
            continue;
        mpz_class mag = abs(c);
        if (first)
            os << (sgn(c) < 0 ? "-" : "");
        else
            os << (sgn(c) < 0 ? " - " : " + ");
        first = false;
        bool unit = (mag == 1);
        if (i == 0 || !unit)
            os << mag.get_str();
        if (i > 0) {
            if (!unit)
                os << "*";
            os << "q";
            if (i > 1)
                os << "^" << i;
        }
    }
    return os.str();
}

std::pair<IntPoly, IntPoly> divrem(const IntPoly& a, const IntPoly& divisor)
{
    if (divisor.is_zero())
        throw std::domain_error("zero divisor");
    if (divisor.leading() != 1)
        throw std::domain_error("divisor not monic");
    long db = divisor.degree();
    if (a.degree() < db)
        return {IntPoly{}, a};

    // divisor support without the leading term
    std::vector<std::size_t> support;
    const auto& bc = divisor.coeffs();
    for (std::size_t j = 0; j + 1 < bc.size(); ++j)
        if (sgn(bc[j]) != 0)
            support.push_back(j);

    std::vector<mpz_class> rem = a.coeffs();
    std::vector<mpz_class> quot(static_cast<std::size_t>(a.degree() - db + 1));
    for (long i = a.degree(); i >= db; --i) {
        mpz_class& lead = rem[static_cast<std::size_t>(i)];
        if (sgn(lead) == 0)
            continue;
        std::size_t shift = static_cast<std::size_t>(i - db);
        quot[shift] = lead;
        for (std::size_t j : support)
            mpz_submul(rem[shift + j].get_mpz_t(), lead.get_mpz_t(), bc[j].get_mpz_t());
        lead = 0;
    }
    rem.resize(static_cast<std::size_t>(db));
    return {IntPoly(std::move(quot)), IntPoly(std::move(rem))};
}

std::optional<IntPoly> exact_quotient(const IntPoly& a, const IntPoly& b)
{
    if (b.is_zero())
        throw std::domain_error("zero divisor");
    if (a.is_zero())
        return IntPoly{};
    long db = b.degree();
    if (a.degree() < db)
        return std::nullopt;
    const auto& bc = b.coeffs();
    const mpz_class& lb = bc.back();
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j + 1 < bc.size(); ++j)
        if (sgn(bc[j]) != 0)
            support.push_back(j);

    std::vector<mpz_class> rem = a.coeffs();
    std::vector<mpz_class> quot(static_cast<std::size_t>(a.degree() - db + 1));
    mpz_class t;
    for (long i = a.degree(); i >= db; --i) {
        mpz_class& lead = rem[static_cast<std::size_t>(i)];
        if (sgn(lead) == 0)
            continue;
        if (!mpz_divisible_p(lead.get_mpz_t(), lb.get_mpz_t()))
            return std::nullopt;
        mpz_divexact(t.get_mpz_t(), lead.get_mpz_t(), lb.get_mpz_t());
        std::size_t shift = static_cast<std::size_t>(i - db);
        quot[shift] = t;
        for (std::size_t j : support)
            mpz_submul(rem[shift + j].get_mpz_t(), t.get_mpz_t(), bc[j].get_mpz_t());
        lead = 0;
    }
    for (long i = 0; i < db; ++i)
        if (sgn(rem[static_cast<std::size_t>(i)]) != 0)
            return std::nullopt;
    return IntPoly(std::move(quot));
}

mpz_class content(const IntPoly& f)
{
    mpz_class g = 0;
    for (const auto& c : f.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

IntPoly primitive_part(const IntPoly& f)
{
    if (f.is_zero())
        return f;
    mpz_class g = content(f);
    if (sgn(f.leading()) < 0)
        g = -g;
    std::vector<mpz_class> v = f.coeffs();
    for (auto& c : v)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(v));
}

namespace {

// Pseudo-remainder of a by b, made primitive.
IntPoly primitive_prem(IntPoly a, const IntPoly& b)
{
    const mpz_class& lb = b.leading();
    long db = b.degree();
    while (!a.is_zero() && a.degree() >= db) {
        mpz_class la = a.leading();
        std::size_t shift = static_cast<std::size_t>(a.degree() - db);
        a *= lb;
        a -= (b * la).shifted(shift);
        a = primitive_part(a);
    }
    return primitive_part(a);
}

}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b)
{
    if (a.is_zero() && b.is_zero())
        throw std::domain_error("gcd of two zero polynomials");
    IntPoly x = primitive_part(a);
    IntPoly y = primitive_part(b);
    if (x.degree() < y.degree())
        std::swap(x, y);
    while (!y.is_zero()) {
        IntPoly r = primitive_prem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return primitive_part(x);
}

IntPoly pow(const IntPoly& f, unsigned e)
{
    IntPoly result = IntPoly::constant(1);
    IntPoly base = f;
    while (e > 0) {
        if (e & 1u)
            result *= base;
        e >>= 1u;
        if (e > 0)
            base *= base;
    }
    return result;
}

IntPoly subst_power(const IntPoly& f, unsigned long m)
{
    if (m == 0)
        throw std::invalid_argument("substitution exponent must be positive");
    if (f.is_zero() || m == 1)
        return f;
    std::vector<mpz_class> v(static_cast<std::size_t>(f.degree()) * m + 1);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
        v[i * m] = f.coeffs()[i];
    return IntPoly(std::move(v));
}

unsigned long euler_phi(unsigned long n)
{
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0)
                n /= p;
            result -= result / p;
        }
    }
    if (n > 1)
        result -= result / n;
    return result;
}

int mobius(unsigned long n)
{
    int mu = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0)
                return 0;
            mu = -mu;
        }
    }
    if (n > 1)
        mu = -mu;
    return mu;
}

const IntPoly& cyclotomic(unsigned long N)
{
    if (N == 0)
        throw std::domain_error("undefined index");
    static std::mutex mu;
    static std::map<unsigned long, IntPoly> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(N);
        if (it != cache.end())
            return it->second;
    }
    IntPoly num = IntPoly::constant(1);
    std::vector<unsigned long> den;
    for (unsigned long d = 1; d <= N; ++d) {
        if (N % d != 0)
            continue;
        int m = mobius(N / d);
        if (m == 1)
            num *= -IntPoly::one_minus(1, d);  // q^d - 1
        else if (m == -1)
            den.push_back(d);
    }
    for (unsigned long d : den) {
        auto [quot, rem] = divrem(num, -IntPoly::one_minus(1, d));
        if (!rem.is_zero())
            throw std::logic_error("cyclotomic: inexact Mobius division");
        num = std::move(quot);
    }
    std::lock_guard lock(mu);
    return cache.emplace(N, std::move(num)).first->second;
}

IntPhiSplit phi_split(const IntPoly& f, unsigned long N)
{
    if (f.is_zero())
        throw std::domain_error("valuation of zero undefined (+inf)");
    const IntPoly& phi = cyclotomic(N);
    IntPhiSplit out{0, f};
    while (out.cofactor.degree() >= phi.degree()) {
        auto [quot, rem] = divrem(out.cofactor, phi);
        if (!rem.is_zero())
            break;
        out.cofactor = std::move(quot);
        ++out.valuation;
    }
    return out;
}

// ---------------------------------------------------------------------------
// RatPoly

RatPoly::RatPoly() : den_(IntPoly::constant(1)), reduced_(true) {}

RatPoly::RatPoly(IntPoly num) : num_(std::move(num)), den_(IntPoly::constant(1)) {}

RatPoly::RatPoly(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_.is_zero())
        throw std::domain_error("zero divisor");
}

RatPoly RatPoly::constant(const mpq_class& c)
{
    return RatPoly(IntPoly::constant(c.get_num()), IntPoly::constant(c.get_den()));
}

RatPoly RatPoly::q_power(long t)
{
    if (t >= 0)
        return RatPoly(IntPoly::monomial(1, static_cast<std::size_t>(t)));
    return RatPoly(IntPoly::constant(1), IntPoly::monomial(1, static_cast<std::size_t>(-t)));
}

RatPoly RatPoly::reduced() const
{
    RatPoly out;
    if (num_.is_zero())
        return out;
    IntPoly g = gcd(num_, den_);
    IntPoly n = *exact_quotient(num_, g);
    IntPoly d = *exact_quotient(den_, g);
    mpz_class c = gcd(content(n), content(d));
    if (sgn(d.leading()) < 0)
        c = -c;
    std::vector<mpz_class> nv = n.coeffs(), dv = d.coeffs();
    for (auto& x : nv)
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    for (auto& x : dv)
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    out.num_ = IntPoly(std::move(nv));
    out.den_ = IntPoly(std::move(dv));
    out.reduced_ = true;
    return out;
}

RatPoly RatPoly::inverse() const
{
    if (num_.is_zero())
        throw std::domain_error("zero divisor");
    return RatPoly(den_, num_);
}

mpq_class RatPoly::limit_at_one() const
{
    if (num_.is_zero())
        return 0;
    auto n = phi_split(num_, 1);
    auto d = phi_split(den_, 1);
    if (n.valuation < d.valuation)
        throw std::domain_error("pole at q = 1");
    if (n.valuation > d.valuation)
        return 0;
    mpq_class r(n.cofactor.eval(1), d.cofactor.eval(1));
    r.canonicalize();
    return r;
}

RatPoly& RatPoly::operator+=(const RatPoly& o)
{
    if (o.num_.is_zero())
        return *this;
    if (num_.is_zero()) {
        *this = o;
        return *this;
    }
    reduced_ = false;
    if (den_ == o.den_) {
        num_ += o.num_;
        return *this;
    }
    if (o.den_.degree() >= den_.degree()) {
        if (auto q = exact_quotient(o.den_, den_)) {
            num_ = num_ * *q + o.num_;
            den_ = o.den_;
            return *this;
        }
    }
    else if (auto q = exact_quotient(den_, o.den_)) {
        num_ += o.num_ * *q;
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) { return *this += -o; }

RatPoly& RatPoly::operator*=(const RatPoly& o)
{
    num_ *= o.num_;
    if (num_.is_zero()) {
        *this = RatPoly();
        return *this;
    }
    den_ *= o.den_;
    reduced_ = false;
    return *this;
}

RatPoly& RatPoly::operator/=(const RatPoly& o) { return *this *= o.inverse(); }

RatPoly operator-(RatPoly a)
{
    a.num_ = -a.num_;
    return a;
}

bool RatPoly::equals(const RatPoly& o) const { return num_ * o.den_ == o.num_ * den_; }

std::string RatPoly::to_string() const
{
    if (den_ == IntPoly::constant(1))
        return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatPoly pow(const RatPoly& f, int e)
{
    if (e < 0)
        return pow(f.inverse(), -e);
    return RatPoly(pow(f.num(), static_cast<unsigned>(e)), pow(f.den(), static_cast<unsigned>(e)));
}

RatPoly subst_power(const RatPoly& f, unsigned long m)
{
    return RatPoly(subst_power(f.num(), m), subst_power(f.den(), m));
}

PhiSplit phi_valuation(const RatPoly& f, unsigned long N)
{
    if (f.is_zero())
        throw std::domain_error("valuation of zero undefined (+inf)");
    auto n = phi_split(f.num(), N);
    auto d = phi_split(f.den(), N);
    return {n.valuation - d.valuation, RatPoly(std::move(n.cofactor), std::move(d.cofactor))};
}

// ---------------------------------------------------------------------------
// CyclotomicModulus

CyclotomicModulus::CyclotomicModulus(std::vector<CyclotomicFactor> factors) : factors_(std::move(factors))
{
    std::sort(factors_.begin(), factors_.end(),
              [](const CyclotomicFactor& a, const CyclotomicFactor& b) { return a.index < b.index; });
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].index < 2)
            throw std::invalid_argument("cyclotomic modulus index must be >= 2");
        if (factors_[i].exponent < 1)
            throw std::invalid_argument("cyclotomic modulus exponent must be >= 1");
        if (i > 0 && factors_[i].index == factors_[i - 1].index)
            throw std::invalid_argument("cyclotomic modulus indices must be distinct");
    }
}

IntPoly CyclotomicModulus::expand() const
{
    IntPoly out = IntPoly::constant(1);
    for (const auto& f : factors_)
        out *= pow(cyclotomic(f.index), static_cast<unsigned>(f.exponent));
    return out;
}

std::string CyclotomicModulus::to_string() const
{
    std::string s;
    for (const auto& f : factors_) {
        if (!s.empty())
            s += "*";
        s += "Phi_" + std::to_string(f.index);
        if (f.exponent != 1)
            s += "^" + std::to_string(f.exponent);
    }
    return s.empty() ? "1" : s;
}

}  // namespace qdwork
