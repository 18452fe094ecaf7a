#pragma once

// Summand families as data: one q-hypergeometric shape for every q-family and
// one classical shape for every q -> 1 counterpart.

#include "qdwork/localring.hpp"
#include "qdwork/qcomb.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qdwork {

/// [alpha k + beta]_{q^base}
struct BracketSpec {
    long alpha = 0, beta = 1, base = 1;
};

/// (sign q^a; q^c)_{mult * k} ^ e
struct PochTerm {
    PochFactorSpec spec;
    long mult = 1;
};

/// (1 + q^{a k + b}) ^ e
struct OnePlusTerm {
    long a = 0, b = 0;
    int e = 1;
};

struct QSummandSpec {
    std::string name;
    bool alternating = false;
    std::optional<BracketSpec> bracket;
    std::vector<PochTerm> poch;
    std::vector<OnePlusTerm> one_plus;
    long c2 = 0, c1 = 0, c0 = 0;  // q^{c2 k^2 + c1 k + c0}

    /// The same summand with q replaced by q^m.
    QSummandSpec scaled(long m) const;
    long qexp(long k) const { return c2 * k * k + c1 * k + c0; }
};

struct RisingFactor {
    mpq_class base;
    int exponent = 1;
};

/// (-1)^k (alpha k + beta) prod (a)_k^e / k!^f * c^k
struct ClassicalTermSpec {
    std::string name;
    bool alternating = false;
    std::optional<std::pair<long, long>> linear;
    std::vector<RisingFactor> rising;
    int factorial_exponent = 0;
    mpq_class geometric = 1;
};

/// Families F1..F10.
const QSummandSpec& q_family(const std::string& id);
std::vector<std::string> q_family_ids();
/// Families H, J, RV, RV2, CB2, CB, K5, K3, K8, ONE.
const ClassicalTermSpec& classical_family(const std::string& id);
std::vector<std::string> classical_family_ids();
/// Classical counterpart of a q-family (q -> 1 limit of the summand).
std::string classical_partner(const std::string& q_id);

/// k-th summand at q^m as a rational function (unreduced product form).
RatPoly term_q(const QSummandSpec& spec, long k, long m = 1);
/// k-th summand at q^m in the localization at Phi_N with relative precision w.
LocalValue term_local(const QSummandSpec& spec, long k, long m, unsigned long N, long w);
mpq_class term_classical(const ClassicalTermSpec& spec, long k);

/// sum_{k=lo}^{hi} of the classical terms (0 for an empty range).
mpq_class sum_classical(const ClassicalTermSpec& spec, long lo, long hi);
/// sum_{k=lo}^{hi} term_q(spec, k, m), accumulated over nested denominators.
RatPoly sum_q(const QSummandSpec& spec, long lo, long hi, long m = 1);

/// Phi_N-valuations of the summands: numerator and denominator counts per k.
struct TermValuation {
    long num = 0, den = 0;
    long total() const { return num - den; }
};
std::vector<TermValuation> term_valuations(const QSummandSpec& spec, long lo, long hi, long m, unsigned long N);

/// sum_{k=lo}^{hi} at q^m in the localization at Phi_N, known modulo Phi_N^{abs_precision}.
///
/// Terms share one growing denominator, so the running sum is kept as
/// x^floor * P / D with P updated by P <- P * (D_k / D_{k-1}) + x^{V_k - floor} N_k;
/// no division happens inside the loop.
LocalValue sum_local(const QSummandSpec& spec, long lo, long hi, long m, unsigned long N, long abs_precision);

/// Localized 1 - sign q^M (M > 0), with the Phi_N factor kept in the valuation.
LocalValue local_one_minus(int sign, long M, unsigned long N, long w);
/// Localized q^t for any integer t.
LocalValue local_q_power(long t, unsigned long N, long w);
/// Localized rational constant.
LocalValue local_constant(const mpq_class& c, unsigned long N, long w);

}  // namespace qdwork
