#pragma once

// p-adic integers at finite precision, Morita's Gamma function, the classical
// supercongruence catalog and the Dwork congruence checker.

#include "qdwork/report.hpp"
#include "qdwork/summand.hpp"

#include <climits>
#include <gmpxx.h>
#include <stdexcept>

namespace qdwork {

/// p^v * u known modulo p^{v+s}; u a unit modulo p^s. v may be negative
/// (quotients of p-divisible quantities); a zero carries the absolute
/// precision up to which it is known to vanish.
class PadicInt {
public:
    static constexpr long kInf = LONG_MAX;

    static PadicInt zero(unsigned long p, long abs_precision = kInf);
    /// Any rational with nonzero value; v may come out negative.
    static PadicInt from_rational(const mpq_class& x, unsigned long p, long s);

    unsigned long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && v_ == kInf; }
    long valuation() const { return v_; }
    long precision() const { return zero_ ? 0 : s_; }
    long absolute_precision() const { return zero_ ? v_ : v_ + s_; }
    const mpz_class& unit() const { return u_; }

    /// Value modulo p^k as an integer in [0, p^k); needs v >= 0 and k <= absolute precision.
    mpz_class residue(long k) const;

    PadicInt inverse() const;
    PadicInt negated() const;
    PadicInt pow(long e) const;

    friend PadicInt operator*(const PadicInt& a, const PadicInt& b);
    friend PadicInt operator+(const PadicInt& a, const PadicInt& b);
    friend PadicInt operator-(const PadicInt& a, const PadicInt& b) { return a + b.negated(); }

private:
    unsigned long p_ = 2;
    bool zero_ = true;
    long v_ = kInf;
    long s_ = 0;
    mpz_class u_;
};

mpz_class prime_power(unsigned long p, long s);
bool is_prime(unsigned long p);
/// Exact p-adic valuation of a nonzero rational.
long padic_valuation(const mpq_class& x, unsigned long p);

/// Canonical form of a p-integral rational at relative precision s.
/// Throws "not a p-adic integer" when p divides the reduced denominator.
PadicInt padic_of_rational(const mpq_class& x, unsigned long p, long s);

struct GammaCapExceeded : std::runtime_error {
    GammaCapExceeded() : std::runtime_error("gamma precision cap exceeded") {}
};

/// Gamma_p(n) mod p^s for an integer n >= 0, via (-1)^n prod_{0<k<n, p!|k} k.
/// Blocks of p-1 consecutive units are a polynomial in the block index, so the
/// cost is about n/p * s multiplications.
mpz_class gamma_p_integer(const mpz_class& n, unsigned long p, long s);
/// Gamma_p(x) mod p^s through the representative of x in [0, p^s).
PadicInt gamma_p(const mpq_class& x, unsigned long p, long s);
/// Whether gamma_p at precision s is within the cost cap.
bool gamma_within_cap(unsigned long p, long s);

struct IdentityCheck {
    std::string name;
    long checked = 0;
    long failed = 0;
    std::vector<std::string> failures;
};
/// Recurrence, reflection, derivative-free linearity and Lipschitz stability of Gamma_p.
std::vector<IdentityCheck> gamma_identities_check(unsigned long p, long s, unsigned seed = 20240611);

/// sum_{k=lo}^{hi} of p-integral classical terms at relative precision w per term.
PadicInt padic_sum_classical(const ClassicalTermSpec& spec, long lo, long hi, unsigned long p, long w);

struct PParams {
    unsigned long p = 0;
    long r = 1, d = 1, m = 1;
};

struct PStatementInfo {
    std::string id;
    std::string status;
    std::string constraint;
    std::string modulus;
    std::string label;
    std::vector<std::string> params;
};

const std::vector<PStatementInfo>& p_catalog();
const PStatementInfo& p_statement(const std::string& id);
bool is_p_statement(const std::string& id);
/// Throws ConstraintError (from statements.hpp) on violated hypotheses.
void check_p_constraint(const std::string& id, const PParams& p);

Report verify_super(const std::string& id, const PParams& p);

/// p * (3/4)_a (5/4)_b / ((5/4)_a (3/4)_b) against -Gamma_p(1/4)^4 mod p^{2r},
/// a = (p^r-1)/2, b = (p^{r-1}-1)/2.
Report theorem12_check(unsigned long p, long r);

struct DworkResult {
    Report report;
    bool guard_ok = false;  // f_1(z^p) not 0 mod p
    bool exact_integers = false;
};
/// f_{r+1}(z) f_{r-1}(z^p) == f_r(z) f_r(z^p) mod p^r up to z^zdeg (zdeg < 0: p^{r+1}-1).
DworkResult dwork_check(const std::string& family, unsigned long p, long r, long zdeg = -1);

}  // namespace qdwork
