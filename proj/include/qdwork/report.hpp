#pragma once

// Verification reports shared by the q-side and p-side verifiers.

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qdwork {

/// One modulus factor: Phi_N^e on the q-side, p^e on the p-side.
struct FactorRecord {
    unsigned long base = 0;        // N or p
    long required = 0;             // e
    std::optional<long> achieved;  // valuation of LHS - RHS; empty means +inf
    bool exact = true;             // false: achieved is only a lower bound
    bool pass = false;

    friend bool operator==(const FactorRecord&, const FactorRecord&) = default;
};

struct Report {
    std::string kind = "q";  // "q" or "p"
    std::string id;
    std::string status;  // PROVEN or CONJECTURE
    std::vector<std::pair<std::string, long>> params;
    std::string engine;
    std::vector<FactorRecord> factors;
    std::vector<FactorRecord> informational;  // reported, never gating
    bool pass = false;
    bool flagged = false;
    double ms = 0;
    std::vector<std::string> notes;

    bool proven() const { return status == "PROVEN"; }
    /// pass recomputed from the gating factors
    bool factors_pass() const;
    friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

std::string csv_header();
std::string csv_row(const Report& r);

}  // namespace qdwork
