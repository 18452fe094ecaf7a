#pragma once

// The q-congruence catalog, side builders, and the two verdict engines.

#include "qdwork/report.hpp"
#include "qdwork/summand.hpp"

#include <functional>
#include <stdexcept>

namespace qdwork {

struct ConstraintError : std::invalid_argument {
    explicit ConstraintError(const std::string& what) : std::invalid_argument("parameter constraint: " + what) {}
};
struct MalformedInstance : std::invalid_argument {
    explicit MalformedInstance(const std::string& what)
        : std::invalid_argument("malformed statement instance: " + what) {}
};
struct UnknownStatement : std::invalid_argument {
    explicit UnknownStatement(const std::string& id) : std::invalid_argument("unknown statement " + id) {}
};
struct DegreeBudgetExceeded : std::runtime_error {
    explicit DegreeBudgetExceeded(long predicted)
        : std::runtime_error("degree budget exceeded (predicted degree " + std::to_string(predicted) + ")") {}
};

struct Params {
    long n = 0, r = 1, d = 1, m = 1, s = 1, k = 0;
};

struct StatementInfo {
    std::string id;
    std::string status;      // PROVEN or CONJECTURE
    std::string constraint;  // human-readable
    std::string modulus;     // human-readable formula
    std::string label;       // what the statement is
    std::vector<std::string> params;  // which of n, r, d, m, s, k apply
};

const std::vector<StatementInfo>& q_catalog();
const StatementInfo& q_statement(const std::string& id);
bool is_q_statement(const std::string& id);

/// Throws ConstraintError when params violate the statement's hypotheses.
void check_constraint(const std::string& id, const Params& p);
CyclotomicModulus modulus_of(const std::string& id, const Params& p);

/// One factor of a prefactor product.
struct PrefItem {
    enum class Kind { Poch, QInt, QPow, Const };
    Kind kind = Kind::Const;
    PochFactorSpec poch;  // Poch: (sign q^a; q^c)_count ^ e
    long count = 0;
    long n = 0, base = 1;  // QInt: [n]_{q^base}
    long t = 0;            // QPow: q^t
    mpq_class c = 1;       // Const

    static PrefItem pochhammer(int sign, long a, long c, long count, int e = 1);
    static PrefItem q_int(long n, long base = 1);
    static PrefItem q_pow(long t);
    static PrefItem constant(const mpq_class& c);
};

/// sum_{k=lo}^{hi} of a q-family at q^scale
struct SumPart {
    std::string family;
    long lo = 0, hi = 0, scale = 1;
};

/// prefactor * (sum, if present); zero when a vanishing symbol kills the side.
struct Side {
    std::vector<PrefItem> pref;
    std::optional<SumPart> sum;
    bool zero = false;
};

struct Instance {
    Side lhs, rhs;
    CyclotomicModulus modulus;
    bool flagged = false;
    std::vector<std::string> notes;
};

Instance build_instance(const std::string& id, const Params& p);
inline Side build_lhs(const std::string& id, const Params& p) { return build_instance(id, p).lhs; }
inline Side build_rhs(const std::string& id, const Params& p) { return build_instance(id, p).rhs; }

/// Predicted numerator degree of the dense evaluation of a side.
long predicted_degree(const Side& s);
RatPoly eval_dense(const Side& s);
/// Localized value of a side, correct modulo Phi_N^{abs_target}.
LocalValue eval_local(const Side& s, unsigned long N, long abs_target);

/// Per-factor verdict on A - B (dense).
std::vector<FactorRecord> congruent(const RatPoly& a, const RatPoly& b, const CyclotomicModulus& m);

enum class PlanSides { Lhs, Rhs, Both };
/// Working exponent e + B, B the largest denominator valuation of any single
/// term (prefactor included) on the selected sides, from the counting rule.
long precision_plan(const std::string& id, const Params& p, unsigned long N, long e, PlanSides sides = PlanSides::Both);

enum class Engine { Dense, Local };
std::string engine_name(Engine e);

struct VerifyOptions {
    Engine engine = Engine::Local;
    long pad = 2;                // extra precision beyond the exponent
    long min_precision = 0;      // local: also resolve valuations below this
    long degree_budget = 200000; // dense: refuse larger predicted degrees
    int max_retries = 6;
};

Report verify_q(const std::string& id, const Params& p, const VerifyOptions& opt = {});

/// Same verdicts; achieved valuations equal when both are exact, consistent otherwise.
bool engines_agree(const Report& dense, const Report& local);

/// Parameters that apply to a statement, in report order.
std::vector<std::pair<std::string, long>> report_params(const std::string& id, const Params& p);

}  // namespace qdwork
