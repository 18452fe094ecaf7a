#pragma once

// Parameter-grid sweeps over both catalogs, run on a thread pool.

#include "qdwork/padic.hpp"
#include "qdwork/statements.hpp"

#include <istream>

namespace qdwork {

struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument("malformed config: " + what) {}
};

struct SweepConfig {
    std::vector<std::string> statements;  // ids, or all / all-proven / all-conjecture
    std::vector<long> n, d = {1, 2}, m = {1, 2, 3}, s = {1}, k = {0};
    long r_max = 1;
    std::vector<unsigned long> p;
    long p_r_max = 1;
    long max_length = 2197;  // p-side: skip instances with p^r beyond this
    std::string engine = "local";
    long degree_budget = 200000;
    std::string json_out, csv_out;
    int jobs = 0;
};

/// Line-oriented `key = value` text; `#` starts a comment. Lists are comma
/// separated and accept ranges `a..b`.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

struct SweepTask {
    bool q_side = true;
    std::string id;
    Params qp;
    PParams pp;
};

/// All (statement, parameter point) pairs satisfying the constraints, in a
/// deterministic order. Throws UnknownStatement for ids in neither catalog.
std::vector<SweepTask> expand_grid(const SweepConfig& c);

struct SweepResult {
    std::vector<Report> reports;
    long proven_failures = 0;
    std::vector<std::string> falsified;  // conjecture instances that failed
    std::vector<std::string> errors;     // instances that could not be evaluated
    int exit_code = 0;
};

/// Runs one task; errors are folded into a failing report with a note.
std::vector<Report> run_task(const SweepTask& t, const SweepConfig& c);
SweepResult run_sweep(const SweepConfig& c);

nlohmann::json sweep_json(const SweepResult& r);
std::string sweep_csv(const SweepResult& r);
std::string sweep_summary(const SweepResult& r);

}  // namespace qdwork
