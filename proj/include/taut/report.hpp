#pragma once

#include <array>
#include <string>
#include <vector>

#include "taut/master_relation.hpp"

namespace taut {

/// Validated settings of one CLI run; serialised into every report so the run
/// can be reproduced.
struct RunConfig {
  std::string command;
  std::vector<std::array<int, 3>> instances;  // (g, n, m)
  std::string grid = "simplex";
  int jobs = 1;
  std::string cache;
  std::string format = "table";
  unsigned long seed = 0;
  bool timings = false;
};

/// Report schema identifier.
inline constexpr const char* kReportSchema = "xi-report/1";

/// One structured document (JSON) for the whole run. Timings and cache
/// statistics are included only when cfg.timings is set, so reports of
/// identical runs are byte-identical.
std::string report_json(const RunConfig& cfg, const std::vector<XiReport>& reports);

/// Human-readable table derived from the same data.
std::string report_table(const std::vector<XiReport>& reports);

}  // namespace taut
