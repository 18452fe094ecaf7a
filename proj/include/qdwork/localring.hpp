#pragma once

// Arithmetic in the localization of Q[q] at Phi_N, truncated at Phi_N^w.
//
// Representation: a rational function f with no pole at a primitive N-th root
// of unity zeta is expanded as a power series in x = q - zeta with
// coefficients in K = Q(zeta). Since Phi_N(zeta + x) = x * (unit), the
// Phi_N-adic valuation of f equals the x-adic valuation of its expansion and
// Q[q]/(Phi_N^w) is isomorphic to K[x]/(x^w). A LocalValue stores
// x^v * num(x) / den(x) with num and den integer series whose constant terms
// are nonzero; nothing is ever inverted during arithmetic.

#include "qdwork/polyring.hpp"
#include "qdwork/qcomb.hpp"

#include <climits>
#include <memory>
#include <utility>
#include <vector>

namespace qdwork {

/// Element of K = Q(zeta_N) with integer coordinates in the basis 1, zeta, ..., zeta^{phi-1}.
using KElem = std::vector<mpz_class>;
/// Integer combination of powers of zeta: sum c * zeta^j with 0 <= j < N.
using SparseK = std::vector<std::pair<mpz_class, unsigned long>>;
/// Truncated power series in x with K coefficients.
using Series = std::vector<KElem>;
using SparseSeries = std::vector<SparseK>;

class CycloField {
public:
    /// Shared, cached field for index N >= 1.
    static std::shared_ptr<const CycloField> get(unsigned long N);

    explicit CycloField(unsigned long N);

    unsigned long index() const { return n_; }
    std::size_t degree() const { return phi_; }
    const IntPoly& modulus() const { return cyclo_; }

    KElem zero() const { return KElem(phi_); }
    KElem one() const;
    bool is_zero(const KElem& a) const;
    /// Reduce a vector indexed by powers of zeta (any length) to canonical form.
    KElem reduce(std::vector<mpz_class> v) const;
    KElem mul(const KElem& a, const KElem& b) const;
    KElem from_sparse(const SparseK& s) const;
    /// K element of a polynomial evaluated at zeta.
    KElem from_poly(const IntPoly& f) const;

private:
    unsigned long n_;
    std::size_t phi_;
    IntPoly cyclo_;
    std::vector<std::size_t> support_;  // nonzero non-leading coefficients of Phi_N
};

namespace series {

Series zeros(const CycloField& K, std::size_t len);
Series one(const CycloField& K, std::size_t len);
/// a * b truncated to len.
Series mul(const CycloField& K, const Series& a, const Series& b, std::size_t len);
/// a <- a * f, truncated to a.size().
void mul_sparse(const CycloField& K, Series& a, const SparseSeries& f);
void scale(Series& a, const mpz_class& c);
/// Index of the first nonzero coefficient, or -1 if every known coefficient is zero.
long valuation(const CycloField& K, const Series& a);

/// Expansion of 1 - sign*q^M at q = zeta + x with the Phi_N factor removed when present.
struct Factor {
    SparseSeries coeffs;
    int valuation;  // 0 or 1
};
Factor one_minus(const CycloField& K, int sign, unsigned long M, std::size_t len);
/// Expansion of q^t (t >= 0).
SparseSeries q_power(const CycloField& K, unsigned long t, std::size_t len);
/// Expansion of an integer polynomial (no valuation stripping).
Series taylor(const CycloField& K, const IntPoly& f, std::size_t len);

}  // namespace series

/// v_{Phi_N}(1 - sign q^m): 1 iff N | m (sign +1), or N | 2m with N not dividing m (sign -1).
int one_minus_valuation(int sign, long m, unsigned long N);
/// Phi_N-valuation of (sign q^a; q^c)_count ^ e, by counting divisible factors.
long poch_valuation(const PochFactorSpec& spec, long count, unsigned long N);

class LocalValue {
public:
    using FieldPtr = std::shared_ptr<const CycloField>;
    static constexpr long kExact = LONG_MAX;

    /// Zero known modulo Phi_N^{abs_precision} (kExact for an exact zero).
    static LocalValue zero(FieldPtr K, long abs_precision = kExact);
    static LocalValue one(FieldPtr K, long w);
    /// x^v * num / den. Leading zeros of num raise v; den(0) must be nonzero.
    static LocalValue from_series(FieldPtr K, long v, Series num, Series den);

    unsigned long modulus_index() const { return K_->index(); }
    const CycloField& field() const { return *K_; }
    const FieldPtr& field_ptr() const { return K_; }

    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && v_ == kExact; }
    /// Valuation; for a zero value, the precision up to which it is known to vanish.
    long valuation() const { return v_; }
    /// Relative precision w: the unit part is known modulo Phi_N^w (0 for zeros).
    long precision() const { return zero_ ? 0 : static_cast<long>(num_.size()); }
    long absolute_precision() const;

    const Series& num_series() const { return num_; }
    const Series& den_series() const { return den_; }

    LocalValue inverse() const;
    LocalValue negated() const;
    LocalValue truncated(long w) const;
    LocalValue pow(long e) const;

    /// Unit part f / Phi_N^v as a polynomial of degree < w*phi(N) modulo Phi_N^w,
    /// returned as an integer polynomial over a positive integer denominator.
    RatPoly unit_residue() const;

    friend LocalValue operator*(const LocalValue& a, const LocalValue& b);
    friend LocalValue operator+(const LocalValue& a, const LocalValue& b);
    friend LocalValue operator-(const LocalValue& a, const LocalValue& b) { return a + b.negated(); }

private:
    FieldPtr K_;
    bool zero_ = true;
    long v_ = kExact;
    Series num_;
    Series den_;
};

inline LocalValue local_mul(const LocalValue& a, const LocalValue& b) { return a * b; }
inline LocalValue local_add(const LocalValue& a, const LocalValue& b) { return a + b; }

/// Image of a rational function in the localization, with relative precision w.
LocalValue local_embed(const RatPoly& f, unsigned long N, long w);

/// (sign q^a; q^c)_count ^ e in the localization; the valuation comes from
/// the counting rule and each divisible factor is divided by Phi_N exactly once.
LocalValue local_pochhammer(const PochFactorSpec& spec, long count, unsigned long N, long w);

/// Thrown when cancellation leaves less precision than an operation needs.
class PrecisionExhausted : public std::runtime_error {
public:
    PrecisionExhausted() : std::runtime_error("precision exhausted") {}
};

}  // namespace qdwork
