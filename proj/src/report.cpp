#include "taut/report.hpp"

#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

namespace taut {

using nlohmann::ordered_json;

namespace {

ordered_json instance_json(const XiReport& r, bool timings) {
  ordered_json j;
  j["g"] = r.g;
  j["n"] = r.n;
  j["m"] = r.m;
  j["dimension"] = r.dimension;
  j["verdict"] = r.verdict();
  j["grid"] = r.grid;
  j["grid_points"] = r.grid_points;
  j["trees"] = r.trees;
  j["pairings"] = r.pairings;
  j["nonzero_pairings"] = r.nonzero_pairings;
  j["negative_part_zero"] = r.negative_part_zero;
  j["grading_ok"] = r.grading_ok;
  j["degree"] = {{"checked", r.degree_checked},
                 {"ok", r.degree_ok},
                 {"bound", r.degree_bound},
                 {"max_a_degree", r.max_a_degree}};
  j["audit"] = {{"audited", r.audited}, {"passed", r.audit_passed}};
  ordered_json spans = ordered_json::object();
  for (const auto& [k, size] : r.spanning_set_sizes) spans[std::to_string(k)] = size;
  j["spanning_set_sizes"] = spans;
  ordered_json trees = ordered_json::array();
  for (const auto& t : r.tree_records) {
    ordered_json tj{{"tree", t.tree}, {"terms", t.terms}, {"audit_pass", t.audit_pass}};
    if (t.min_u <= t.max_u) {
      tj["min_u"] = t.min_u;
      tj["max_u"] = t.max_u;
    }
    trees.push_back(std::move(tj));
  }
  j["tree_records"] = trees;
  ordered_json fails = ordered_json::array();
  for (const auto& f : r.failures)
    fails.push_back({{"u_exponent", f.u_exponent}, {"stratum", f.stratum}, {"value", f.value.str()}});
  j["failures"] = fails;
  if (timings) {
    j["seconds"] = r.seconds;
    j["pair_cache"] = {{"hits", r.pair_cache_hits}, {"misses", r.pair_cache_misses}};
  }
  return j;
}

}  // namespace

std::string report_json(const RunConfig& cfg, const std::vector<XiReport>& reports) {
  ordered_json doc;
  doc["schema"] = kReportSchema;
  ordered_json config;
  config["command"] = cfg.command;
  ordered_json inst = ordered_json::array();
  for (const auto& [g, n, m] : cfg.instances) inst.push_back({g, n, m});
  config["instances"] = inst;
  config["grid"] = cfg.grid;
  config["jobs"] = cfg.jobs;
  config["cache"] = cfg.cache;
  config["format"] = cfg.format;
  config["seed"] = cfg.seed;
  config["timings"] = cfg.timings;
  doc["config"] = config;
  bool all = true;
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) {
    all = all && r.pass;
    arr.push_back(instance_json(r, cfg.timings));
  }
  doc["instances"] = arr;
  doc["verdict"] = all ? "pass" : "fail";
  return doc.dump(2) + "\n";
}

std::string report_table(const std::vector<XiReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(10) << "(g,n,m)" << std::setw(6) << "dim" << std::setw(7) << "trees" << std::setw(9)
     << "points" << std::setw(10) << "pairings" << std::setw(9) << "nonzero" << std::setw(9) << "a-deg" << std::setw(8)
     << "audit" << "verdict\n";
  for (const auto& r : reports) {
    std::ostringstream key, deg, aud;
    key << '(' << r.g << ',' << r.n << ',' << r.m << ')';
    deg << r.max_a_degree << '/' << r.degree_bound;
    aud << r.audit_passed << '/' << r.audited;
    os << std::setw(10) << key.str() << std::setw(6) << r.dimension << std::setw(7) << r.trees << std::setw(9)
       << r.grid_points << std::setw(10) << r.pairings << std::setw(9) << r.nonzero_pairings << std::setw(9)
       << (r.degree_checked ? deg.str() : "-") << std::setw(8) << aud.str() << r.verdict() << '\n';
    for (const auto& f : r.failures)
      os << "  nonzero pairing at u^" << f.u_exponent << " with " << f.stratum << ": " << f.value.str() << '\n';
  }
  return os.str();
}

}  // namespace taut
