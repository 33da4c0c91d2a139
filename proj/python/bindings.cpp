#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "taut/audit.hpp"
#include "taut/cache.hpp"
#include "taut/intersection.hpp"
#include "taut/master_relation.hpp"
#include "taut/psi_integrals.hpp"
#include "taut/report.hpp"
#include "taut/special_classes.hpp"
#include "taut/star_tree.hpp"

namespace py = pybind11;
using namespace taut;

namespace {

// Rationals cross the boundary as "p/q" strings; the Python side turns them
// into fractions.Fraction.
std::string q(const Rational& r) { return r.str(); }

std::vector<std::pair<std::string, std::string>> terms(const TautClass& c) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [s, v] : c.sorted_terms()) out.emplace_back(s, v.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_tautring, m) {
  m.doc() = "Exact tautological-ring calculator";

  m.def("psi_integral", [](int g, std::vector<int> d) { return q(psi_integral(g, d)); }, py::arg("g"),
        py::arg("exponents"));
  m.def("dr_cycle", [](int g, std::vector<long> parts) { return terms(dr_cycle(g, parts)); }, py::arg("g"),
        py::arg("parts"));
  m.def("lambda_integral",
        [](int g, int n, int i, int psi_power) {
          TautClass c = lambda_class(g, n, i);
          if (psi_power > 0) c = multiply(c, TautClass::psi(g, n, 1, psi_power));
          return q(integrate(c));
        },
        py::arg("g"), py::arg("n"), py::arg("i"), py::arg("psi_power") = 0);
  m.def("star_trees",
        [](int g, int n, int m_) {
          std::vector<std::string> out;
          for (const auto& T : enumerate_pssrt(g, n, m_)) out.push_back(T.serialize());
          return out;
        },
        py::arg("g"), py::arg("n"), py::arg("m"));
  m.def("star_tree_count", &pssrt_count_formula, py::arg("g"), py::arg("n"));
  m.def("xi_total",
        [](int g, int n, int m_, std::vector<long> a) {
          std::map<int, std::vector<std::pair<std::string, std::string>>> out;
          for (const auto& [k, c] : xi_total(g, n, m_, a).terms()) out[k] = terms(c);
          return out;
        },
        py::arg("g"), py::arg("n"), py::arg("m"), py::arg("a"));
  m.def("audit",
        [](int g, int n, int m_) {
          std::vector<bool> out;
          for (const auto& T : enumerate_pssrt(g, n, m_)) out.push_back(audit_tree(T).pass);
          return out;
        },
        py::arg("g"), py::arg("n"), py::arg("m"));
  m.def("mumford_check", [](int g, int n) { return mumford_check(g, n).pass; }, py::arg("g"), py::arg("n"));
  m.def("verify_json",
        [](int g, int n, int m_, int jobs) {
          CheckOptions opts;
          opts.jobs = jobs;
          XiReport r;
          {
            py::gil_scoped_release release;
            r = polynomiality_check(g, n, m_, opts);
          }
          RunConfig cfg;
          cfg.command = "verify";
          cfg.instances = {{g, n, m_}};
          cfg.jobs = jobs;
          cfg.format = "structured";
          return report_json(cfg, {r});
        },
        py::arg("g"), py::arg("n"), py::arg("m"), py::arg("jobs") = 1);
  m.def("save_cache", [](const std::string& p) { return save_psi_cache(p); }, py::arg("path"));
  m.def("load_cache", [](const std::string& p) { return load_psi_cache(p); }, py::arg("path"));

  py::register_exception<CacheError>(m, "CacheError");
}
