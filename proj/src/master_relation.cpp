#include "taut/master_relation.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <thread>

#include "taut/audit.hpp"
#include "taut/graph_enum.hpp"
#include "taut/intersection.hpp"
#include "taut/special_classes.hpp"

namespace taut {

namespace {

void check_point(const StarTree& T, std::span<const long> a) {
  if (static_cast<int>(a.size()) != T.n) throw std::invalid_argument("a has the wrong length");
  for (int e = 0; e < T.num_edges(); ++e)
    if (T.edge_part(e, a) == 0) throw std::invalid_argument("a(e) vanishes on some edge");
}

/// s^d for s = +-1.
Rational sign_power(int s, int d) { return (s < 0 && d % 2 != 0) ? Rational(-1) : Rational(1); }

/// lambda_g DR_g(parts) psi_last^j for j = 0.. while the degree fits, cached
/// per (g, parts): the a-independent building blocks of a leaf series.
const std::vector<TautClass>& leaf_blocks(int g, const std::vector<long>& parts) {
  static std::shared_mutex mu;
  static std::map<std::pair<int, std::vector<long>>, std::vector<TautClass>> table;
  const auto key = std::make_pair(g, parts);
  {
    std::shared_lock lock(mu);
    auto it = table.find(key);
    if (it != table.end()) return it->second;
  }
  const int N = static_cast<int>(parts.size());
  const int dim = moduli_dimension(g, N);
  std::vector<TautClass> out;
  TautClass base = g == 0 ? TautClass::fundamental(0, N) : multiply(lambda_class(g, N, g), dr_cycle(g, parts));
  out.push_back(base);
  for (int j = 1; 2 * g + j <= dim; ++j) out.push_back(multiply(base, TautClass::psi(g, N, N, j)));
  std::unique_lock lock(mu);
  return table.try_emplace(key, std::move(out)).first->second;
}

const std::vector<StarTree>& trees_of(int g, int n, int m) {
  static std::mutex mu;
  static std::map<std::array<int, 3>, std::vector<StarTree>> table;
  std::lock_guard lock(mu);
  auto it = table.find({g, n, m});
  if (it == table.end()) it = table.emplace(std::array<int, 3>{g, n, m}, enumerate_pssrt(g, n, m)).first;
  return it->second;
}

}  // namespace

VertexSeries root_class(const StarTree& T, std::span<const long> a) {
  check_point(T, a);
  constexpr int s = XiConventions::root_u_sign;
  VertexSeries out;
  const int E = T.num_edges();
  if (T.root_unstable()) {
    out.contracted = true;
    out.scalar = Rational(s) / Rational(T.edge_part(0, a));
    out.scalar_u_exponent = 1;
    return out;
  }
  const int gr = T.root_genus, N = E + T.m;
  const int dim = moduli_dimension(gr, N);
  // prod_e 1/(1 - a(e) psi_e) = sum over exponent vectors of prod (a(e) psi_e)^{d_e}.
  std::vector<TautClass> by_degree(dim + 1, TautClass(gr, N));
  std::vector<int> d(E, 0);
  std::function<void(int, int, Rational)> rec = [&](int e, int used, Rational c) {
    if (e == E) {
      DecoratedStratum st = DecoratedStratum::bare(StableGraph::trivial(gr, N));
      for (int f = 0; f < E; ++f) st.psi[f] = d[f];
      by_degree[used].add(st, c);
      return;
    }
    const Rational ae(T.edge_part(e, a));
    Rational pw(1);
    for (int x = 0; used + x <= dim; ++x) {
      d[e] = x;
      rec(e + 1, used + x, c * pw);
      pw *= ae;
    }
    d[e] = 0;
  };
  rec(0, 0, Rational(1));
  for (int deg = 0; deg <= dim; ++deg) out.series.add(-deg, by_degree[deg] * sign_power(s, deg));
  return out;
}

VertexSeries leaf_class(const StarTree& T, int e, std::span<const long> a) {
  check_point(T, a);
  if (e < 0 || e >= T.num_edges()) throw std::out_of_range("leaf_class: no such edge");
  constexpr int s = XiConventions::leaf_u_sign;
  VertexSeries out;
  const long ae = T.edge_part(e, a);
  if (T.leaf_unstable(e)) {
    out.contracted = true;
    out.scalar = Rational(s) / Rational(ae);
    out.scalar_u_exponent = 1;
    return out;
  }
  const int ge = T.leaf_genus[e];
  std::vector<long> parts;
  for (int leg : T.blocks[e]) parts.push_back(a[leg - 1]);
  parts.push_back(-ae);
  const auto& blocks = leaf_blocks(ge, parts);
  Rational pw(1);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const int deg = 2 * ge + static_cast<int>(j);
    out.series.add(-deg, blocks[j] * (pw * sign_power(s, deg)));
    pw *= Rational(ae);
  }
  return out;
}

UClass xi_of_tree(const StarTree& T, std::span<const long> a) {
  check_point(T, a);
  const int E = T.num_edges();
  const int D = moduli_dimension(T.g, T.n + T.m);
  std::vector<VertexSeries> series;
  series.push_back(root_class(T, a));
  for (int e = 0; e < E; ++e) series.push_back(leaf_class(T, e, a));

  Rational prefactor(1);
  for (int e = 0; e < E; ++e) prefactor *= Rational(T.edge_part(e, a));
  const int base_exp = XiConventions::prefactor_exponent(T.g, T.m) - E;
  int stable_edges = E;
  for (const auto& v : series)
    if (v.contracted) --stable_edges;

  UClass out;
  std::vector<VertexClass> classes(series.size());
  std::function<void(std::size_t, int, int, Rational)> rec = [&](std::size_t v, int u_exp, int degree, Rational c) {
    if (v == series.size()) {
      TautClass pushed = boundary_pushforward(T, classes);
      out.add(u_exp, pushed * c);
      return;
    }
    const VertexSeries& s = series[v];
    if (s.contracted) {
      classes[v] = s.scalar;
      rec(v + 1, u_exp + s.scalar_u_exponent, degree, c);  // the pushforward applies the scalar
      return;
    }
    for (const auto& [k, cls] : s.series.terms()) {
      if (degree - k > D) continue;  // the coefficient of u^k has degree -k
      classes[v] = cls;
      rec(v + 1, u_exp + k, degree - k, c);
    }
  };
  rec(0, base_exp, stable_edges, prefactor);
  return out;
}

UClass xi_total(int g, int n, int m, std::span<const long> a) {
  UClass out;
  for (const auto& T : trees_of(g, n, m)) out += xi_of_tree(T, a);
  return out;
}

bool xi_grading_consistent(int g, int m, const UClass& x) {
  for (const auto& [k, c] : x.terms())
    if (!c.is_homogeneous(xi_coefficient_degree(g, m, k))) return false;
  return true;
}

int XiPolynomial::max_a_degree() const {
  int best = -1;
  for (const auto& [k, row] : coefficients)
    for (const auto& [id, p] : row) best = std::max(best, p.total_degree());
  return best;
}

namespace {

/// Xi at every grid point, computed with `jobs` worker threads. Results are
/// stored by point index, so the order of work does not affect the output.
std::vector<UClass> evaluate_grid(int g, int n, int m, const std::vector<std::vector<long>>& points, int jobs) {
  std::vector<UClass> values(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        values[i] = xi_total(g, n, m, points[i]);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int width = std::max(1, std::min<int>(jobs, static_cast<int>(points.size())));
  if (width == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return values;
}

/// (u exponent, stratum) -> values over the grid, zero-filled.
using CoefficientTable = std::map<std::pair<int, StratumId>, std::vector<Rational>>;

CoefficientTable tabulate(const std::vector<UClass>& values) {
  CoefficientTable table;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (const auto& [k, c] : values[i].terms())
      for (const auto& [id, v] : c.terms()) {
        auto& row = table[{k, id}];
        if (row.empty()) row.assign(values.size(), Rational(0));
        row[i] = v;
      }
  return table;
}

std::vector<std::vector<long>> box_grid(int n, int side) {
  std::vector<std::vector<long>> out;
  std::vector<long> p(n, 1);
  while (true) {
    out.push_back(p);
    int i = n - 1;
    while (i >= 0 && p[i] == side) p[i--] = 1;
    if (i < 0) break;
    ++p[i];
  }
  return out;
}

}  // namespace

XiPolynomial xi_interpolate(int g, int n, int m, int sample_degree) {
  XiPolynomial out;
  out.g = g;
  out.n = n;
  out.m = m;
  out.sample_degree = sample_degree;
  const auto points = simplex_grid(n, sample_degree);
  const auto values = evaluate_grid(g, n, m, points, 1);
  for (const auto& [key, row] : tabulate(values)) {
    APoly p = interpolate_on_simplex(n, sample_degree, row);
    if (!p.is_zero()) out.coefficients[key.first].emplace(key.second, std::move(p));
  }
  return out;
}

XiReport polynomiality_check(int g, int n, int m, const CheckOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const IntersectionStats before = intersection_stats();
  XiReport r;
  r.g = g;
  r.n = n;
  r.m = m;
  r.dimension = moduli_dimension(g, n + m);
  r.degree_bound = xi_degree_bound(g, n, m);
  const int B = r.degree_bound;
  const auto& trees = trees_of(g, n, m);
  r.trees = trees.size();

  std::vector<std::vector<long>> points;
  int sample_degree = opts.degree_check ? B + 1 : B;
  if (opts.grid == GridKind::Simplex) {
    r.grid = "simplex";
    points = simplex_grid(n, sample_degree);
  } else {
    r.grid = "box";
    points = box_grid(n, sample_degree + 1);
  }
  r.grid_points = points.size();

  // Per-tree records at a = (1, ..., 1), plus the audit.
  const std::vector<long> ones(n, 1);
  for (const auto& T : trees) {
    TreeRecord rec;
    rec.tree = T.serialize();
    const UClass x = xi_of_tree(T, ones);
    if (x.is_zero()) {
      rec.min_u = 1;
      rec.max_u = 0;
    } else {
      rec.min_u = x.min_exponent();
      rec.max_u = x.max_exponent();
    }
    for (const auto& [k, c] : x.terms()) rec.terms += c.terms().size();
    if (opts.audit) {
      rec.audit_pass = audit_tree(T).pass;
      ++r.audited;
      if (rec.audit_pass) ++r.audit_passed;
    }
    r.tree_records.push_back(std::move(rec));
  }

  const auto values = evaluate_grid(g, n, m, points, opts.jobs);

  // Pair every negative coefficient against the spanning set.
  std::map<int, std::vector<StratumId>> spanning;
  auto& R = StratumRegistry::instance();
  std::map<std::pair<int, StratumId>, std::vector<Rational>> nonzero;  // (k, stratum) -> values
  for (std::size_t i = 0; i < values.size(); ++i) {
    const UClass& x = values[i];
    if (!xi_grading_consistent(g, m, x)) r.grading_ok = false;
    const UClass neg = laurent_negative_part(x);
    if (!neg.is_zero()) r.negative_part_zero = false;
    for (int k = -(g + n - 1); k <= -1; ++k) {
      const int d = xi_coefficient_degree(g, m, k);
      if (d > r.dimension) continue;
      auto it = spanning.find(k);
      if (it == spanning.end()) {
        std::vector<StratumId> ids;
        for (const auto& s : enumerate_strata(g, n + m, r.dimension - d)) ids.push_back(R.intern(s));
        it = spanning.emplace(k, std::move(ids)).first;
        r.spanning_set_sizes[k] = it->second.size();
      }
      const TautClass* c = neg.coefficient(k);
      for (StratumId id : it->second) {
        ++r.pairings;
        if (c == nullptr) continue;
        const Rational v = pairing(*c, id);
        if (v.is_zero()) continue;
        ++r.nonzero_pairings;
        auto& row = nonzero[{k, id}];
        if (row.empty()) row.assign(values.size(), Rational(0));
        row[i] = v;
      }
    }
    // Coefficients below the lowest admissible exponent would break grading.
    if (!x.is_zero() && x.min_exponent() < -(g + n - 1)) r.grading_ok = false;
  }
  for (const auto& [key, row] : nonzero) {
    PairingRecord f;
    f.u_exponent = key.first;
    f.stratum = serialize(R.get(key.second));
    if (opts.grid == GridKind::Simplex) {
      f.value = interpolate_on_simplex(n, sample_degree, row);
    } else {
      std::vector<Sample> samples;
      for (std::size_t i = 0; i < points.size(); ++i) samples.push_back({points[i], row[i]});
      try {
        f.value = poly_interpolate(samples, sample_degree);
      } catch (const std::invalid_argument&) {
        f.value = APoly(n);
      }
    }
    r.failures.push_back(std::move(f));
  }

  if (opts.degree_check) {
    r.degree_checked = true;
    for (const auto& [key, row] : tabulate(values)) {
      int deg = -1;
      if (opts.grid == GridKind::Simplex) {
        deg = simplex_interpolant_degree(n, sample_degree, row);
      } else {
        std::vector<Sample> samples;
        for (std::size_t i = 0; i < points.size(); ++i) samples.push_back({points[i], row[i]});
        try {
          deg = poly_interpolate(samples, B).total_degree();
        } catch (const std::invalid_argument&) {
          deg = B + 1;
        }
      }
      r.max_a_degree = std::max(r.max_a_degree, deg);
    }
    r.degree_ok = r.max_a_degree <= B;
  }

  r.pass = r.failures.empty() && r.grading_ok && (!r.degree_checked || r.degree_ok) &&
           r.audit_passed == r.audited;
  const IntersectionStats after = intersection_stats();
  r.pair_cache_hits = after.pair_hits - before.pair_hits;
  r.pair_cache_misses = after.pair_misses - before.pair_misses;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace taut
