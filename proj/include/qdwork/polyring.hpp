#pragma once

// Dense exact polynomial and rational-function arithmetic in one variable q.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qdwork {

/// Dense polynomial in q with arbitrary-precision integer coefficients.
///
/// coeffs()[i] is the coefficient of q^i. The coefficient vector never has a
/// trailing zero, so the zero polynomial is the empty vector and
/// degree() == size - 1 otherwise.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly constant(const mpz_class& c);
    static IntPoly monomial(const mpz_class& c, std::size_t degree);
    /// 1 - sign * q^m
    static IntPoly one_minus(int sign, std::size_t m);

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    /// Coefficient of q^i; zero beyond the degree.
    const mpz_class& operator[](std::size_t i) const;
    const mpz_class& leading() const;
    mpz_class eval(const mpz_class& x) const;
    /// Multiply by q^k.
    IntPoly shifted(std::size_t k) const;

    IntPoly& operator+=(const IntPoly& o);
    IntPoly& operator-=(const IntPoly& o);
    IntPoly& operator*=(const IntPoly& o);
    IntPoly& operator*=(const mpz_class& c);

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(IntPoly a, const mpz_class& c) { return a *= c; }
    friend IntPoly operator-(IntPoly a);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    std::string to_string() const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

/// Quotient and remainder by a monic divisor; deg(rem) < deg(divisor).
std::pair<IntPoly, IntPoly> divrem(const IntPoly& a, const IntPoly& divisor);

/// a / b when b divides a in Z[q]; nullopt otherwise. b may be non-monic.
std::optional<IntPoly> exact_quotient(const IntPoly& a, const IntPoly& b);

/// Non-negative gcd of the coefficients (0 for the zero polynomial).
mpz_class content(const IntPoly& f);
/// f / content(f), normalized to a positive leading coefficient.
IntPoly primitive_part(const IntPoly& f);
/// gcd over Q, returned primitive with positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

IntPoly pow(const IntPoly& f, unsigned e);
inline IntPoly pow(const IntPoly& f, int e) { return pow(f, static_cast<unsigned>(e)); }
/// f(q^m)
IntPoly subst_power(const IntPoly& f, unsigned long m);

unsigned long euler_phi(unsigned long n);
int mobius(unsigned long n);

/// Phi_N(q), built from the Mobius product over q^d - 1 by exact division.
/// Cached; safe to call concurrently.
const IntPoly& cyclotomic(unsigned long N);

struct IntPhiSplit {
    long valuation;
    IntPoly cofactor;
};
/// Strip the largest power of Phi_N dividing a nonzero polynomial.
IntPhiSplit phi_split(const IntPoly& f, unsigned long N);

/// Rational function num/den with num, den in Z[q], den != 0.
///
/// Values are not reduced automatically; reduced() runs a gcd and marks the
/// result. Sums whose denominators divide each other keep the larger
/// denominator instead of multiplying them, which is what keeps nested
/// hypergeometric partial sums at linear denominator growth.
class RatPoly {
public:
    RatPoly();
    RatPoly(IntPoly num);
    RatPoly(IntPoly num, IntPoly den);

    static RatPoly constant(const mpq_class& c);
    /// q^t for any integer t (negative powers put q^|t| in the denominator).
    static RatPoly q_power(long t);

    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_reduced() const { return reduced_; }

    /// Divide out gcd(num, den); den becomes primitive with positive leading coefficient.
    RatPoly reduced() const;
    RatPoly inverse() const;
    /// Value at q = 1 after cancelling (q - 1) factors; throws if there is a pole.
    mpq_class limit_at_one() const;

    RatPoly& operator+=(const RatPoly& o);
    RatPoly& operator-=(const RatPoly& o);
    RatPoly& operator*=(const RatPoly& o);
    RatPoly& operator/=(const RatPoly& o);

    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(RatPoly a, const RatPoly& b) { return a *= b; }
    friend RatPoly operator/(RatPoly a, const RatPoly& b) { return a /= b; }
    friend RatPoly operator-(RatPoly a);

    /// Equality as rational functions (cross multiplication).
    bool equals(const RatPoly& o) const;
    std::string to_string() const;

private:
    IntPoly num_;
    IntPoly den_;
    bool reduced_ = false;
};

RatPoly pow(const RatPoly& f, int e);
RatPoly subst_power(const RatPoly& f, unsigned long m);

struct PhiSplit {
    long valuation;
    RatPoly cofactor;
};
/// v_{Phi_N}(num) - v_{Phi_N}(den) and f / Phi_N^v. Throws for f == 0.
PhiSplit phi_valuation(const RatPoly& f, unsigned long N);

struct CyclotomicFactor {
    unsigned long index;
    int exponent;
    friend bool operator==(const CyclotomicFactor&, const CyclotomicFactor&) = default;
};

/// prod Phi_N^e over pairwise distinct indices N >= 2, sorted by index.
class CyclotomicModulus {
public:
    CyclotomicModulus() = default;
    explicit CyclotomicModulus(std::vector<CyclotomicFactor> factors);

    const std::vector<CyclotomicFactor>& factors() const { return factors_; }
    IntPoly expand() const;
    std::string to_string() const;
    friend bool operator==(const CyclotomicModulus&, const CyclotomicModulus&) = default;

private:
    std::vector<CyclotomicFactor> factors_;
};

}  // namespace qdwork
