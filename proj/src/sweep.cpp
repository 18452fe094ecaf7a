#include "qdwork/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace qdwork {

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (auto t = trim(item); !t.empty())
            out.push_back(t);
    return out;
}

long to_long(const std::string& s, const std::string& key)
{
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer '" + s + "' for " + key);
    }
}

std::vector<long> int_list(const std::string& s, const std::string& key)
{
    std::vector<long> out;
    for (const auto& item : split(s)) {
        if (auto dots = item.find(".."); dots != std::string::npos) {
            long a = to_long(trim(item.substr(0, dots)), key), b = to_long(trim(item.substr(dots + 2)), key);
            if (b < a || b - a > 100000)
                throw ConfigError("bad range '" + item + "' for " + key);
            for (long v = a; v <= b; ++v)
                out.push_back(v);
        } else {
            out.push_back(to_long(item, key));
        }
    }
    if (out.empty())
        throw ConfigError("empty list for " + key);
    return out;
}

template <class F>
void product(const std::vector<std::string>& used, const std::map<std::string, std::vector<long>>& axes, F&& f)
{
    std::map<std::string, long> point;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == used.size()) {
            f(point);
            return;
        }
        for (long v : axes.at(used[i])) {
            point[used[i]] = v;
            rec(i + 1);
        }
    };
    rec(0);
}

Report error_report(const SweepTask& t, const std::string& what)
{
    Report r;
    r.kind = t.q_side ? "q" : "p";
    r.id = t.id;
    r.status = t.q_side ? q_statement(t.id).status : p_statement(t.id).status;
    if (t.q_side)
        r.params = report_params(t.id, t.qp);
    else
        r.params = {{"p", static_cast<long>(t.pp.p)}, {"r", t.pp.r}};
    r.engine = "none";
    r.pass = false;
    r.notes.push_back("error: " + what);
    return r;
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in)
{
    SweepConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos)
            line.resize(h);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty value for " + key);
        if (key == "statements")
            c.statements = split(val);
        else if (key == "n")
            c.n = int_list(val, key);
        else if (key == "d")
            c.d = int_list(val, key);
        else if (key == "m")
            c.m = int_list(val, key);
        else if (key == "s")
            c.s = int_list(val, key);
        else if (key == "k")
            c.k = int_list(val, key);
        else if (key == "r_max")
            c.r_max = to_long(val, key);
        else if (key == "p") {
            c.p.clear();
            for (long v : int_list(val, key)) {
                if (v < 2)
                    throw ConfigError("p must be >= 2");
                c.p.push_back(static_cast<unsigned long>(v));
            }
        } else if (key == "p_r_max")
            c.p_r_max = to_long(val, key);
        else if (key == "max_length")
            c.max_length = to_long(val, key);
        else if (key == "engine") {
            if (val != "local" && val != "dense" && val != "both")
                throw ConfigError("engine must be local, dense or both");
            c.engine = val;
        } else if (key == "degree_budget")
            c.degree_budget = to_long(val, key);
        else if (key == "json")
            c.json_out = val;
        else if (key == "csv")
            c.csv_out = val;
        else if (key == "jobs")
            c.jobs = static_cast<int>(to_long(val, key));
        else
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key " + key);
    }
    if (c.statements.empty())
        throw ConfigError("no statements");
    if (c.r_max < 1 || c.p_r_max < 1)
        throw ConfigError("r_max and p_r_max must be >= 1");
    return c;
}

SweepConfig load_sweep_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open " + path);
    return parse_sweep_config(f);
}

std::vector<SweepTask> expand_grid(const SweepConfig& c)
{
    std::vector<std::string> ids;
    for (const auto& s : c.statements) {
        if (s == "all" || s == "all-proven" || s == "all-conjecture") {
            for (const auto& e : q_catalog())
                if (s == "all" || (s == "all-proven") == (e.status == "PROVEN"))
                    ids.push_back(e.id);
            for (const auto& e : p_catalog())
                if (s == "all" || (s == "all-proven") == (e.status == "PROVEN"))
                    ids.push_back(e.id);
        } else if (is_q_statement(s) || is_p_statement(s)) {
            ids.push_back(s);
        } else {
            throw UnknownStatement(s);
        }
    }

    std::vector<long> rs;
    for (long r = 1; r <= c.r_max; ++r)
        rs.push_back(r);
    std::vector<long> prs;
    for (long r = 1; r <= c.p_r_max; ++r)
        prs.push_back(r);
    std::vector<long> ps(c.p.begin(), c.p.end());

    std::vector<SweepTask> tasks;
    for (const auto& id : ids) {
        if (is_q_statement(id)) {
            std::map<std::string, std::vector<long>> axes = {{"n", c.n}, {"r", rs}, {"d", c.d},
                                                             {"m", c.m}, {"s", c.s}, {"k", c.k}};
            const auto& used = q_statement(id).params;
            if (c.n.empty())
                continue;
            product(used, axes, [&](const std::map<std::string, long>& pt) {
                Params p;
                for (const auto& [k, v] : pt) {
                    if (k == "n") p.n = v;
                    else if (k == "r") p.r = v;
                    else if (k == "d") p.d = v;
                    else if (k == "m") p.m = v;
                    else if (k == "s") p.s = v;
                    else if (k == "k") p.k = v;
                }
                try {
                    check_constraint(id, p);
                } catch (const ConstraintError&) {
                    return;
                }
                tasks.push_back({true, id, p, {}});
            });
        } else {
            std::map<std::string, std::vector<long>> axes = {{"p", ps}, {"r", prs}, {"d", c.d}, {"m", c.m}};
            const auto& used = p_statement(id).params;
            if (ps.empty())
                continue;
            product(used, axes, [&](const std::map<std::string, long>& pt) {
                PParams p;
                for (const auto& [k, v] : pt) {
                    if (k == "p") p.p = static_cast<unsigned long>(v);
                    else if (k == "r") p.r = v;
                    else if (k == "d") p.d = v;
                    else if (k == "m") p.m = v;
                }
                try {
                    check_p_constraint(id, p);
                } catch (const ConstraintError&) {
                    return;
                }
                if (prime_power(p.p, p.r) > c.max_length)
                    return;
                tasks.push_back({false, id, {}, p});
            });
        }
    }
    return tasks;
}

std::vector<Report> run_task(const SweepTask& t, const SweepConfig& c)
{
    try {
        if (!t.q_side)
            return {verify_super(t.id, t.pp)};
        VerifyOptions opt;
        opt.degree_budget = c.degree_budget;
        if (c.engine != "both") {
            opt.engine = c.engine == "dense" ? Engine::Dense : Engine::Local;
            return {verify_q(t.id, t.qp, opt)};
        }
        opt.engine = Engine::Dense;
        Report dense;
        try {
            dense = verify_q(t.id, t.qp, opt);
        } catch (const DegreeBudgetExceeded& e) {
            Report local = verify_q(t.id, t.qp, VerifyOptions{});
            local.notes.push_back(std::string("dense skipped: ") + e.what());
            return {local};
        }
        VerifyOptions lo;
        for (const auto& f : dense.factors)
            if (f.achieved)
                lo.min_precision = std::max(lo.min_precision, *f.achieved + 1);
        Report local = verify_q(t.id, t.qp, lo);
        if (!engines_agree(dense, local)) {
            local.pass = false;
            local.notes.push_back("engine disagreement");
        }
        return {dense, local};
    } catch (const std::exception& e) {
        return {error_report(t, e.what())};
    }
}

SweepResult run_sweep(const SweepConfig& c)
{
    auto tasks = expand_grid(c);
    if (tasks.empty())
        throw ConfigError("empty grid");
    std::vector<std::vector<Report>> slots(tasks.size());
    int jobs = c.jobs > 0 ? c.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    jobs = std::min<int>(jobs, static_cast<int>(tasks.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();)
            slots[i] = run_task(tasks[i], c);
    };
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    SweepResult res;
    for (auto& s : slots)
        for (auto& r : s) {
            if (!r.pass) {
                std::string where = r.id;
                for (const auto& [k, v] : r.params)
                    where += " " + k + "=" + std::to_string(v);
                if (r.status == "PROVEN")
                    ++res.proven_failures;
                if (r.engine == "none")
                    res.errors.push_back(where + ": " + r.notes.back());
                else if (r.status != "PROVEN")
                    res.falsified.push_back(where);
            }
            res.reports.push_back(std::move(r));
        }
    res.exit_code = res.proven_failures ? 1 : 0;
    return res;
}

nlohmann::json sweep_json(const SweepResult& r)
{
    auto j = nlohmann::json::array();
    for (const auto& rep : r.reports)
        j.push_back(to_json(rep));
    return j;
}

std::string sweep_csv(const SweepResult& r)
{
    std::string out = csv_header() + "\n";
    for (const auto& rep : r.reports)
        out += csv_row(rep) + "\n";
    return out;
}

std::string sweep_summary(const SweepResult& r)
{
    long proven = 0, conj = 0;
    for (const auto& rep : r.reports)
        (rep.status == "PROVEN" ? proven : conj)++;
    std::ostringstream os;
    os << "reports: " << r.reports.size() << " (proven " << proven << ", conjecture " << conj << ")\n";
    os << "proven failures: " << r.proven_failures << "\n";
    for (const auto& e : r.errors)
        os << "error: " << e << "\n";
    if (!r.falsified.empty()) {
        os << "!!! CONJECTURE FALSIFIED at " << r.falsified.size() << " instance(s):\n";
        for (const auto& f : r.falsified)
            os << "!!!   " << f << "\n";
    } else {
        os << "conjectures: no counterexample\n";
    }
    return os.str();
}

}  // namespace qdwork
