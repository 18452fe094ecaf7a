#include "qdwork/padic.hpp"
#include "qdwork/statements.hpp"
#include "qdwork/sweep.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace qdwork;

namespace {

// reports cross the boundary as JSON text; the Python side decodes them
std::string q_report(const std::string& id, long n, long r, long d, long m, long s, long k, const std::string& engine)
{
    VerifyOptions opt;
    opt.engine = engine == "dense" ? Engine::Dense : Engine::Local;
    return to_json(verify_q(id, Params{n, r, d, m, s, k}, opt)).dump();
}

std::string p_report(const std::string& id, unsigned long p, long r, long d, long m)
{
    return to_json(verify_super(id, PParams{p, r, d, m})).dump();
}

std::string catalog()
{
    auto j = nlohmann::json::array();
    for (const auto& s : q_catalog())
        j.push_back({{"id", s.id}, {"status", s.status}, {"constraint", s.constraint}, {"modulus", s.modulus},
                     {"kind", "q"}, {"params", s.params}});
    for (const auto& s : p_catalog())
        j.push_back({{"id", s.id}, {"status", s.status}, {"constraint", s.constraint}, {"modulus", s.modulus},
                     {"kind", "p"}, {"params", s.params}});
    return j.dump();
}

std::string sweep(const std::string& config_text)
{
    std::istringstream in(config_text);
    SweepResult r = run_sweep(parse_sweep_config(in));
    return nlohmann::json{{"exit_code", r.exit_code}, {"reports", sweep_json(r)}, {"falsified", r.falsified}}.dump();
}

}  // namespace

PYBIND11_MODULE(_qdwork, m)
{
    m.doc() = "exact verifier of Dwork-type q-congruences and p-adic supercongruences";
    py::register_exception<ConstraintError>(m, "ConstraintError", PyExc_ValueError);
    py::register_exception<UnknownStatement>(m, "UnknownStatement", PyExc_KeyError);

    m.def("verify_q", &q_report, py::arg("id"), py::arg("n"), py::arg("r") = 1, py::arg("d") = 1, py::arg("m") = 1,
          py::arg("s") = 1, py::arg("k") = 0, py::arg("engine") = "local");
    m.def("verify_super", &p_report, py::arg("id"), py::arg("p"), py::arg("r") = 1, py::arg("d") = 1,
          py::arg("m") = 1);
    m.def("catalog", &catalog);
    m.def("sweep", &sweep, py::arg("config_text"));
    m.def(
        "gamma_p",
        [](const std::string& x, unsigned long p, long s) {
            mpq_class q(x);
            q.canonicalize();
            return gamma_p(q, p, s).residue(s).get_str();
        },
        py::arg("x"), py::arg("p"), py::arg("precision"));
    m.def(
        "dwork_check",
        [](const std::string& family, unsigned long p, long r) { return to_json(dwork_check(family, p, r).report).dump(); },
        py::arg("family"), py::arg("p"), py::arg("r"));
}
