#include "qdwork/report.hpp"

#include <sstream>

namespace qdwork {

bool Report::factors_pass() const
{
    for (const auto& f : factors)
        if (!f.pass)
            return false;
    return true;
}

namespace {

nlohmann::json factor_json(const FactorRecord& f, const std::string& kind)
{
    nlohmann::json j;
    nlohmann::json achieved = f.achieved ? nlohmann::json(*f.achieved) : nlohmann::json("inf");
    if (kind == "q") {
        j["N"] = f.base;
        j["e"] = f.required;
        j["achieved"] = achieved;
    } else {
        j["p"] = f.base;
        j["target_exponent"] = f.required;
        j["achieved_valuation"] = achieved;
    }
    j["exact"] = f.exact;
    j["pass"] = f.pass;
    return j;
}

FactorRecord factor_from_json(const nlohmann::json& j, const std::string& kind)
{
    FactorRecord f;
    const bool q = kind == "q";
    f.base = j.at(q ? "N" : "p").get<unsigned long>();
    f.required = j.at(q ? "e" : "target_exponent").get<long>();
    const auto& a = j.at(q ? "achieved" : "achieved_valuation");
    if (a.is_string()) {
        if (a.get<std::string>() != "inf")
            throw std::invalid_argument("bad achieved valuation");
    } else {
        f.achieved = a.get<long>();
    }
    f.exact = j.at("exact").get<bool>();
    f.pass = j.at("pass").get<bool>();
    return f;
}

std::string achieved_text(const FactorRecord& f)
{
    if (!f.achieved)
        return "inf";
    return (f.exact ? "" : ">=") + std::to_string(*f.achieved);
}

}  // namespace

nlohmann::json to_json(const Report& r)
{
    nlohmann::json j;
    j["kind"] = r.kind;
    j["id"] = r.id;
    j["status"] = r.status;
    j["params"] = nlohmann::json::object();
    for (const auto& [k, v] : r.params)
        j["params"][k] = v;
    j["engine"] = r.engine;
    j["factors"] = nlohmann::json::array();
    for (const auto& f : r.factors)
        j["factors"].push_back(factor_json(f, r.kind));
    j["informational"] = nlohmann::json::array();
    for (const auto& f : r.informational)
        j["informational"].push_back(factor_json(f, r.kind));
    j["pass"] = r.pass;
    j["flagged"] = r.flagged;
    j["ms"] = r.ms;
    j["notes"] = r.notes;
    return j;
}

Report report_from_json(const nlohmann::json& j)
{
    Report r;
    r.kind = j.at("kind").get<std::string>();
    r.id = j.at("id").get<std::string>();
    r.status = j.at("status").get<std::string>();
    // nlohmann objects iterate in key order; params are emitted in that order too
    for (const auto& [k, v] : j.at("params").items())
        r.params.emplace_back(k, v.get<long>());
    r.engine = j.at("engine").get<std::string>();
    for (const auto& f : j.at("factors"))
        r.factors.push_back(factor_from_json(f, r.kind));
    for (const auto& f : j.at("informational"))
        r.informational.push_back(factor_from_json(f, r.kind));
    r.pass = j.at("pass").get<bool>();
    r.flagged = j.at("flagged").get<bool>();
    r.ms = j.at("ms").get<double>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

std::string csv_header() { return "id,status,params,engine,factors,informational,pass,flagged,ms"; }

std::string csv_row(const Report& r)
{
    std::ostringstream os;
    auto list = [&](const std::vector<FactorRecord>& fs) {
        std::string s;
        for (const auto& f : fs) {
            if (!s.empty())
                s += ' ';
            s += (r.kind == "q" ? "Phi" : "p") + std::to_string(f.base) + "^" + std::to_string(f.required) + ":" +
                 achieved_text(f) + (f.pass ? ":ok" : ":FAIL");
        }
        return s;
    };
    std::string params;
    for (const auto& [k, v] : r.params)
        params += (params.empty() ? "" : " ") + k + "=" + std::to_string(v);
    os << r.id << ',' << r.status << ',' << params << ',' << r.engine << ',' << list(r.factors) << ','
       << list(r.informational) << ',' << (r.pass ? "pass" : "FAIL") << ',' << (r.flagged ? "flagged" : "") << ','
       << r.ms;
    return os.str();
}

}  // namespace qdwork
