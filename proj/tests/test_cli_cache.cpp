#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "doctest.h"
#include "taut/cache.hpp"
#include "taut/psi_integrals.hpp"
#include "taut/report.hpp"

using namespace taut;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "taut_cli_cache_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void fill_memo() {
  for (int g = 0; g <= 3; ++g)
    for (int N = 1; N <= 4; ++N) {
      if (2 * g - 2 + N <= 0) continue;
      std::vector<int> d(N, 0);
      d[0] = 3 * g - 3 + N;
      (void)psi_integral(g, d);
    }
}

}  // namespace

TEST_CASE("fnv1a matches reference vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("cache round trip is exact") {
  psi_memo_clear();
  fill_memo();
  const auto before = psi_memo_snapshot();
  REQUIRE(!before.empty());
  const fs::path p = scratch("round.cache");
  CHECK(save_psi_cache(p) == before.size());
  psi_memo_clear();
  CHECK(psi_memo_size() == 0);
  CHECK(load_psi_cache(p) == before.size());
  const auto after = psi_memo_snapshot();
  REQUIRE(after.size() == before.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(after[i].genus == before[i].genus);
    CHECK(after[i].exponents == before[i].exponents);
    CHECK(after[i].value == before[i].value);
  }
  // Same memo, same bytes.
  const fs::path q = scratch("round2.cache");
  save_psi_cache(q);
  CHECK(slurp(p) == slurp(q));
  CHECK(!fs::exists(fs::path(p.string() + ".tmp")));
}

TEST_CASE("missing cache file is not an error") { CHECK(load_psi_cache(scratch("absent.cache")) == 0); }

TEST_CASE("corrupted caches are rejected") {
  psi_memo_clear();
  fill_memo();
  const fs::path good = scratch("good.cache");
  save_psi_cache(good);
  const std::string text = slurp(good);

  auto write = [](const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::trunc);
    out << s;
  };
  const fs::path bad = scratch("bad.cache");

  SUBCASE("flipped value") {
    std::string s = text;
    const auto pos = s.find("1/24;");
    REQUIRE(pos != std::string::npos);
    s.replace(pos, 4, "1/25");
    write(bad, s);
  }
  SUBCASE("missing header") { write(bad, text.substr(text.find('\n') + 1)); }
  SUBCASE("truncated line") { write(bad, text + "0;0,0,0;1\n"); }
  SUBCASE("bad rational with valid checksum") {
    const std::string body = "0;0,0,0;x";
    write(bad, std::string(kCacheHeader) + "\n" + body + ";" + fnv1a_hex(body) + "\n");
  }
  SUBCASE("unsorted exponents") {
    const std::string body = "0;1,0,0,0;1";
    write(bad, std::string(kCacheHeader) + "\n" + body + ";" + fnv1a_hex(body) + "\n");
  }
  psi_memo_clear();
  CHECK_THROWS_AS(load_psi_cache(bad), CacheError);
}

TEST_CASE("a well-formed but wrong value conflicts with the recursion") {
  psi_memo_clear();
  (void)psi_integral(1, std::vector<int>{1});
  const fs::path p = scratch("conflict.cache");
  const std::string body = "1;1;1/23";
  {
    std::ofstream out(p);
    out << kCacheHeader << "\n" << body << ";" << fnv1a_hex(body) << "\n";
  }
  CHECK_THROWS_AS(load_psi_cache(p), CacheError);
}

TEST_CASE("reports are deterministic and carry the schema") {
  RunConfig cfg;
  cfg.command = "verify";
  cfg.instances = {{0, 2, 1}, {1, 1, 1}};
  std::vector<XiReport> a, b;
  for (const auto& [g, n, m] : cfg.instances) {
    a.push_back(polynomiality_check(g, n, m));
    b.push_back(polynomiality_check(g, n, m));
  }
  const std::string ja = report_json(cfg, a), jb = report_json(cfg, b);
  CHECK(ja == jb);
  const auto doc = nlohmann::json::parse(ja);
  CHECK(doc["schema"] == kReportSchema);
  CHECK(doc["verdict"] == "pass");
  CHECK(doc["instances"].size() == 2);
  CHECK(!doc["instances"][0].contains("seconds"));
  CHECK(doc["config"]["instances"][1] == nlohmann::json::array({1, 1, 1}));

  cfg.timings = true;
  const auto timed = nlohmann::json::parse(report_json(cfg, a));
  CHECK(timed["instances"][0].contains("seconds"));

  const std::string table = report_table(a);
  CHECK(table.find("(0,2,1)") != std::string::npos);
  CHECK(table.find("pass") != std::string::npos);
}
