#pragma once

// q-integers, q-shifted factorials, Gaussian binomials and the Kronecker symbol.

#include "qdwork/polyring.hpp"

namespace qdwork {

/// (sign * q^offset; q^step)_count ^ exponent, with count supplied at evaluation.
struct PochFactorSpec {
    int sign = 1;        // +1 or -1
    long offset = 0;     // a >= 0
    long step = 1;       // c >= 1
    int exponent = 1;    // nonzero

    /// The same factor after q -> q^m.
    PochFactorSpec scaled(long m) const { return {sign, offset * m, step * m, exponent}; }
    void validate() const;
};

/// [n]_{q^m} = 1 + q^m + ... + q^{m(n-1)}
IntPoly q_integer(long n, long base = 1);

/// prod_{j<count} (1 - sign q^{a + c j}), the integer polynomial behind a Pochhammer factor.
IntPoly poch_product(int sign, long offset, long step, long count);

/// (sign q^a; q^c)_count ^ e as a rational function.
RatPoly q_pochhammer(const PochFactorSpec& spec, long count);

/// Gaussian binomial [M choose K] in q^m via the Pascal recurrence; 0 when K > M.
IntPoly q_binomial(long M, long K, long base = 1);

/// Ordinary binomial coefficient.
mpz_class binomial(long n, long k);

/// Kronecker symbol (a/b) for arbitrary integers.
int kronecker(long a, long b);

/// Checks [an+b choose rn+s]_q == C(a,r) [b choose s]_q mod Phi_n(q).
/// Requires b, s <= n-1 ("digits out of range" otherwise).
bool q_lucas_check(long a, long b, long r, long s, long n);

/// Checks (-q;q)_{rn+s} == 2^r (-q;q)_s mod Phi_n(q) for odd n, s <= n-1.
bool neg_q_pochhammer_check(long r, long s, long n);

}  // namespace qdwork
