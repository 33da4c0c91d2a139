// xicheck: command-line front end for the tautological-ring calculator.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage, 3 environment/cache.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "taut/audit.hpp"
#include "taut/cache.hpp"
#include "taut/graph_enum.hpp"
#include "taut/master_relation.hpp"
#include "taut/psi_integrals.hpp"
#include "taut/report.hpp"
#include "taut/special_classes.hpp"
#include "taut/star_tree.hpp"

using namespace taut;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kEnv = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw UsageError(std::string("bad ") + what + " entry '" + item + "'");
    out.push_back(static_cast<T>(v));
  }
  return out;
}

/// Prints a class with the trivial stratum shown as [fundamental].
std::string render(const TautClass& c) {
  if (c.is_zero()) return "0";
  const std::string trivial = serialize(StableGraph::trivial(c.genus(), c.markings()));
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, v] : c.sorted_terms()) {
    os << (first ? "" : "\n") << v << " * [" << (s == trivial ? "fundamental" : s) << "]";
    first = false;
  }
  return os.str();
}

void require_stable(int g, int n, int m) {
  if (g < 0 || n < 1 || m < 1 || 2 * g - 2 + n + m <= 0)
    throw UsageError("need g >= 0, n >= 1, m >= 1 and 2g-2+n+m > 0");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::trunc);
  if (!f) throw std::system_error(errno, std::generic_category(), "cannot write " + out_path);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tautological-ring checks for the u-polynomiality of Xi"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  RunConfig cfg;
  cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int g = -1, n = -1, m = -1, gmax = -1, budget = 5;
  std::string out_path, d_text, parts_text;
  int cases = 200;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--cache", cfg.cache, "psi intersection cache file")->envname("XICHECK_CACHE");
    sub->add_option("--jobs", cfg.jobs, "worker threads")->envname("XICHECK_JOBS")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "table or structured")
        ->envname("XICHECK_FORMAT")
        ->check(CLI::IsMember({"table", "structured"}));
    sub->add_option("--out", out_path, "write the output to a file");
  };
  auto gnm = [&](CLI::App* sub) {
    sub->add_option("--g", g, "genus")->envname("XICHECK_G");
    sub->add_option("--n", n, "points over infinity")->envname("XICHECK_N");
    sub->add_option("--m", m, "points over zero")->envname("XICHECK_M");
  };

  CLI::App* verify = app.add_subcommand("verify", "check that negative u-powers of Xi vanish");
  gnm(verify);
  verify->add_option("--gmax", gmax, "all instances with g <= gmax within the budget")->envname("XICHECK_GMAX");
  verify->add_option("--dim-budget", budget, "largest 3g-3+n+m allowed")->envname("XICHECK_DIM_BUDGET");
  verify->add_option("--grid", cfg.grid, "simplex or box")
      ->envname("XICHECK_GRID")
      ->check(CLI::IsMember({"simplex", "box"}));
  verify->add_flag("--timings", cfg.timings, "include timings and cache statistics");
  common(verify);

  CLI::App* enumerate = app.add_subcommand("enumerate", "list the star trees of (g,n,m)");
  gnm(enumerate);
  common(enumerate);

  CLI::App* integral = app.add_subcommand("integral", "psi intersection number <tau_d1 ... tau_dN>_g");
  integral->add_option("--g", g, "genus")->required();
  integral->add_option("--d", d_text, "comma-separated exponents")->required();
  common(integral);

  CLI::App* dr = app.add_subcommand("dr", "double ramification cycle");
  dr->add_option("--g", g, "genus")->required();
  dr->add_option("--parts", parts_text, "comma-separated parts summing to 0")->required();
  common(dr);

  CLI::App* mumford = app.add_subcommand("mumford", "check Mumford's relation on M_{g,n}-bar");
  mumford->add_option("--g", g, "genus")->required();
  mumford->add_option("--n", n, "markings")->required();
  common(mumford);

  CLI::App* audit = app.add_subcommand("audit", "localization audit of every star tree");
  gnm(audit);
  common(audit);

  CLI::App* props = app.add_subcommand("props", "randomized string and dilaton checks");
  props->add_option("--seed", cfg.seed, "random seed")->envname("XICHECK_SEED");
  props->add_option("--cases", cases, "number of cases")->check(CLI::PositiveNumber);
  common(props);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (!cfg.cache.empty()) load_psi_cache(cfg.cache);
  } catch (const CacheError& e) {
    std::cerr << "cache error: " << e.what() << "\n";
    return kEnv;
  }

  int status = kPass;
  try {
    if (verify->parsed()) {
      cfg.command = "verify";
      if (gmax >= 0) {
        for (int gg = 0; gg <= gmax; ++gg)
          for (int D = 0; D <= budget; ++D)
            for (int mm = 1; mm <= D + 3 - 3 * gg; ++mm) {
              const int nn = D + 3 - 3 * gg - mm;
              if (nn >= 1 && 2 * gg - 2 + nn + mm > 0) cfg.instances.push_back({gg, nn, mm});
            }
      } else {
        if (g < 0 || n < 0 || m < 0) throw UsageError("verify needs --g --n --m or --gmax");
        require_stable(g, n, m);
        const int D = moduli_dimension(g, n + m);
        if (D > budget) {
          std::ostringstream os;
          os << "3g-3+n+m = " << D << " exceeds the budget " << budget << " (" << pssrt_count_formula(g, n)
             << " trees, " << simplex_grid(n, D + 1).size() << " grid points); raise --dim-budget to proceed";
          throw UsageError(os.str());
        }
        cfg.instances.push_back({g, n, m});
      }
      CheckOptions opts;
      opts.grid = cfg.grid == "box" ? GridKind::Box : GridKind::Simplex;
      opts.jobs = cfg.jobs;
      std::vector<XiReport> reports;
      for (const auto& [gg, nn, mm] : cfg.instances) {
        reports.push_back(polynomiality_check(gg, nn, mm, opts));
        if (!reports.back().pass) status = kFail;
      }
      const std::string json = report_json(cfg, reports);
      if (cfg.format == "structured") {
        emit(json, out_path);
      } else {
        std::cout << report_table(reports);
        if (!out_path.empty()) emit(json, out_path);
      }
    } else if (enumerate->parsed()) {
      require_stable(g, n, m);
      const auto trees = enumerate_pssrt(g, n, m);
      std::ostringstream os;
      for (const auto& T : trees) os << T.serialize() << "\n";
      const long closed = pssrt_count_formula(g, n);
      os << "count: " << trees.size() << " (closed form " << closed << ")\n";
      emit(os.str(), out_path);
      if (static_cast<long>(trees.size()) != closed) status = kFail;
    } else if (integral->parsed()) {
      const auto d = parse_list<int>(d_text, "exponent");
      const int N = static_cast<int>(d.size());
      if (g < 0 || 2 * g - 2 + N <= 0) throw UsageError("unstable (g, N)");
      int sum = 0;
      for (int x : d) {
        if (x < 0) throw UsageError("exponents must be non-negative");
        sum += x;
      }
      if (sum != moduli_dimension(g, N))
        throw UsageError("dimension mismatch: sum of exponents is " + std::to_string(sum) + " but dim M_{" +
                         std::to_string(g) + "," + std::to_string(N) + "} is " +
                         std::to_string(moduli_dimension(g, N)));
      emit(psi_integral(g, d).str() + "\n", out_path);
    } else if (dr->parsed()) {
      const auto parts = parse_list<long>(parts_text, "part");
      emit(render(dr_cycle(g, parts)) + "\n", out_path);
    } else if (mumford->parsed()) {
      const MumfordResult r = mumford_check(g, n);
      std::ostringstream os;
      os << (r.pass ? "pass" : "fail") << " (" << r.pairings << " pairings)";
      if (!r.witness.empty()) os << " witness: " << r.witness;
      emit(os.str() + "\n", out_path);
      if (!r.pass) status = kFail;
    } else if (audit->parsed()) {
      require_stable(g, n, m);
      std::ostringstream os;
      for (const auto& T : enumerate_pssrt(g, n, m)) {
        const AuditResult r = audit_tree(T);
        os << (r.pass ? "pass " : "FAIL ") << T.serialize() << (r.mumford_used ? "  [mumford]" : "") << "\n";
        if (!r.pass) {
          os << "  product:  " << r.product << "\n  expected: " << r.expected << "\n";
          status = kFail;
        }
      }
      emit(os.str(), out_path);
    } else if (props->parsed()) {
      // string: <tau_0 prod tau_di>_g = sum_j <... tau_{dj - 1} ...>_g
      // dilaton: <tau_1 prod tau_di>_g = (2g - 2 + N) <prod tau_di>_g
      std::mt19937_64 rng(cfg.seed);
      int failed = 0;
      for (int c = 0; c < cases; ++c) {
        const int gg = static_cast<int>(rng() % 4);
        const int N = static_cast<int>(rng() % 4) + (gg == 0 ? 3 : 1);
        const int D = moduli_dimension(gg, N);
        std::vector<int> d(N, 0), s(N, 0);
        for (int k = 0; k < D; ++k) ++d[rng() % N];
        for (int k = 0; k <= D; ++k) ++s[rng() % N];
        std::vector<int> with0 = s, with1 = d;
        with0.push_back(0);
        with1.push_back(1);
        Rational lhs = psi_integral(gg, with0), rhs(0);
        for (int j = 0; j < N; ++j) {
          if (s[j] == 0) continue;
          auto e = s;
          --e[j];
          rhs += psi_integral(gg, e);
        }
        const bool string_ok = lhs == rhs;
        const bool dilaton_ok = psi_integral(gg, with1) == Rational(2 * gg - 2 + N) * psi_integral(gg, d);
        if (!string_ok || !dilaton_ok) ++failed;
      }
      std::ostringstream os;
      os << (failed ? "fail" : "pass") << " (" << cases << " cases, seed " << cfg.seed << ", " << failed
         << " failed)\n";
      emit(os.str(), out_path);
      if (failed) status = kFail;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::system_error& e) {
    std::cerr << "environment error: " << e.what() << "\n";
    return kEnv;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }

  try {
    if (!cfg.cache.empty()) save_psi_cache(cfg.cache);
  } catch (const std::exception& e) {
    std::cerr << "cache error: " << e.what() << "\n";
    return kEnv;
  }
  return status;
}
