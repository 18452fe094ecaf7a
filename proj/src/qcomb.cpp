#include "qdwork/qcomb.hpp"

#include <stdexcept>

namespace qdwork {

void PochFactorSpec::validate() const
{
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("Pochhammer sign must be +1 or -1");
    if (offset < 0)
        throw std::invalid_argument("Pochhammer offset must be nonnegative");
    if (step < 1)
        throw std::invalid_argument("Pochhammer step must be positive");
    if (exponent == 0)
        throw std::invalid_argument("Pochhammer exponent must be nonzero");
}

IntPoly q_integer(long n, long base)
{
    if (n < 1 || base < 1)
        throw std::invalid_argument("q_integer requires n >= 1 and base >= 1");
    std::vector<mpz_class> c(static_cast<std::size_t>(base * (n - 1) + 1));
    for (long i = 0; i < n; ++i)
        c[static_cast<std::size_t>(i * base)] = 1;
    return IntPoly(std::move(c));
}

IntPoly poch_product(int sign, long offset, long step, long count)
{
    if (count < 0)
        throw std::invalid_argument("Pochhammer count must be nonnegative");
    IntPoly out = IntPoly::constant(1);
    for (long j = 0; j < count; ++j) {
        long m = offset + step * j;
        // offset 0 with sign +1 gives the factor 1 - 1 = 0
        out *= IntPoly::one_minus(sign, static_cast<std::size_t>(m));
        if (out.is_zero())
            break;
    }
    return out;
}

RatPoly q_pochhammer(const PochFactorSpec& spec, long count)
{
    spec.validate();
    IntPoly p = poch_product(spec.sign, spec.offset, spec.step, count);
    if (spec.exponent > 0)
        return RatPoly(pow(p, static_cast<unsigned>(spec.exponent)));
    if (p.is_zero())
        throw std::domain_error("zero divisor");
    return RatPoly(IntPoly::constant(1), pow(p, static_cast<unsigned>(-spec.exponent)));
}

IntPoly q_binomial(long M, long K, long base)
{
    if (base < 1)
        throw std::invalid_argument("q_binomial requires base >= 1");
    if (M < 0 || K < 0 || K > M)
        return {};
    // row[j] = [i choose j]; [i choose j] = [i-1 choose j-1] + q^{base j} [i-1 choose j]
    std::vector<IntPoly> row(static_cast<std::size_t>(K + 1));
    row[0] = IntPoly::constant(1);
    for (long i = 1; i <= M; ++i) {
        long top = std::min(i, K);
        for (long j = top; j >= 1; --j) {
            auto uj = static_cast<std::size_t>(j);
            row[uj] = row[uj - 1] + row[uj].shifted(static_cast<std::size_t>(base * j));
        }
    }
    return row[static_cast<std::size_t>(K)];
}

mpz_class binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

int kronecker(long a, long b)
{
    mpz_class A = a, B = b;
    return mpz_kronecker(A.get_mpz_t(), B.get_mpz_t());
}

bool q_lucas_check(long a, long b, long r, long s, long n)
{
    if (n < 1)
        throw std::invalid_argument("q-Lucas modulus index must be positive");
    if (a < 0 || b < 0 || r < 0 || s < 0 || b > n - 1 || s > n - 1)
        throw std::invalid_argument("digits out of range");
    IntPoly lhs = q_binomial(a * n + b, r * n + s);
    IntPoly rhs = q_binomial(b, s) * binomial(a, r);
    IntPoly diff = lhs - rhs;
    if (diff.is_zero())
        return true;
    return divrem(diff, cyclotomic(static_cast<unsigned long>(n))).second.is_zero();
}

bool neg_q_pochhammer_check(long r, long s, long n)
{
    if (n < 1 || n % 2 == 0)
        throw std::invalid_argument("modulus index must be odd");
    if (r < 0 || s < 0 || s > n - 1)
        throw std::invalid_argument("digits out of range");
    IntPoly lhs = poch_product(-1, 1, 1, r * n + s);
    mpz_class two_r;
    mpz_ui_pow_ui(two_r.get_mpz_t(), 2, static_cast<unsigned long>(r));
    IntPoly diff = lhs - poch_product(-1, 1, 1, s) * two_r;
    if (diff.is_zero())
        return true;
    return divrem(diff, cyclotomic(static_cast<unsigned long>(n))).second.is_zero();
}

}  // namespace qdwork
