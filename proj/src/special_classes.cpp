#include "taut/special_classes.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

#include "taut/graph_enum.hpp"
#include "taut/intersection.hpp"

namespace taut {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void check_dr_input(int g, std::span<const long> parts) {
  const int N = static_cast<int>(parts.size());
  if (g < 0 || !is_stable_type(g, N)) throw std::invalid_argument("DR cycle: unstable (g, N)");
  if (std::accumulate(parts.begin(), parts.end(), 0L) != 0)
    throw std::invalid_argument("DR cycle: parts must sum to zero");
}

/// One graph of the Pixton sum with its edge-degree vectors. For each vector k
/// the class T_k carries the leg and edge factors over |Aut|; the r-dependence is
/// the weighting sum r^{-h1} sum_w prod_e x_e^{k_e + 1}.
struct PixtonGraph {
  StableGraph graph;
  std::vector<std::vector<int>> edge_degrees;
  std::vector<TautClass> classes;
};

/// Leg exponent vectors p with sum p = total.
void for_each_composition(int slots, int total, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> p(slots, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == slots - 1 || slots == 0) {
      if (slots == 0) {
        if (left == 0) f(p);
        return;
      }
      p[i] = left;
      f(p);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      p[i] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, total);
}

std::vector<PixtonGraph> pixton_graphs(int g, std::span<const long> parts) {
  const int N = static_cast<int>(parts.size());
  std::vector<PixtonGraph> out;
  for (const auto& G : stable_graphs(g, N)) {
    const int E = G.num_edges();
    if (E > g) break;  // ordered by edge count
    PixtonGraph pg;
    pg.graph = G;
    const Rational inv_aut = Rational(1) / Rational(static_cast<long>(automorphism_count(G)));
    for (int edge_total = 0; edge_total <= g - E; ++edge_total) {
      for_each_composition(E, edge_total, [&](const std::vector<int>& k) {
        TautClass T(g, N);
        const int leg_total = g - E - edge_total;
        Rational edge_scalar = inv_aut;
        for (int e = 0; e < E; ++e) edge_scalar *= Rational(k[e] % 2 == 0 ? 1 : -1) / factorial(k[e] + 1);
        for_each_composition(N, leg_total, [&](const std::vector<int>& p) {
          Rational leg_scalar = edge_scalar;
          for (int i = 0; i < N; ++i)
            if (p[i] > 0) leg_scalar *= pow(Rational(parts[i] * parts[i]), p[i]) / factorial(p[i]);
          if (leg_scalar.is_zero()) return;
          // Expand prod_e (psi_h + psi_h')^{k_e} binomially.
          std::vector<int> split(E, 0);
          std::function<void(int, Rational)> rec = [&](int e, Rational c) {
            if (e == E) {
              DecoratedStratum s = DecoratedStratum::bare(G);
              for (int i = 0; i < N; ++i) s.psi[i] = p[i];
              for (int f = 0; f < E; ++f) {
                s.psi[N + 2 * f] = split[f];
                s.psi[N + 2 * f + 1] = k[f] - split[f];
              }
              if (survives_truncation(s)) T.add(s, c);
              return;
            }
            for (int j = 0; j <= k[e]; ++j) {
              split[e] = j;
              rec(e + 1, c * binomial(k[e], j));
            }
          };
          rec(0, leg_scalar);
        });
        if (!T.is_zero()) {
          pg.edge_degrees.push_back(k);
          pg.classes.push_back(std::move(T));
        }
      });
    }
    if (!pg.classes.empty()) out.push_back(std::move(pg));
  }
  return out;
}

/// r^{h1} times the weighting sum, one entry per edge-degree vector.
std::vector<Rational> weighting_sums(const PixtonGraph& pg, std::span<const long> parts, long r) {
  const StableGraph& G = pg.graph;
  const int N = G.num_legs();
  const int E = G.num_edges();
  const int V = G.num_vertices();
  std::vector<long> base(V, 0);
  for (int i = 0; i < N; ++i) base[G.leg_vertex[i]] = ((base[G.leg_vertex[i]] + parts[i]) % r + r) % r;
  std::vector<__int128> acc(pg.edge_degrees.size(), 0);
  std::vector<long> w(E, 0), x(E, 0);
  std::vector<long> vsum(V);
  std::function<void(int)> rec = [&](int e) {
    if (e == E) {
      vsum = base;
      for (int f = 0; f < E; ++f) {
        const long wh = w[f], wo = (r - wh) % r;
        vsum[G.edges[f][0]] = (vsum[G.edges[f][0]] + wh) % r;
        vsum[G.edges[f][1]] = (vsum[G.edges[f][1]] + wo) % r;
        x[f] = wh * wo;
      }
      for (long s : vsum)
        if (s != 0) return;
      for (std::size_t t = 0; t < pg.edge_degrees.size(); ++t) {
        __int128 prod = 1;
        for (int f = 0; f < E; ++f)
          for (int j = 0; j <= pg.edge_degrees[t][f]; ++j) prod *= x[f];
        acc[t] += prod;
      }
      return;
    }
    for (long v = 0; v < r; ++v) {
      w[e] = v;
      rec(e + 1);
    }
  };
  rec(0);
  const int h1 = E - V + 1;
  std::vector<Rational> out;
  out.reserve(acc.size());
  for (__int128 a : acc) {
    // __int128 -> mpz through two 64-bit halves.
    const bool neg = a < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-a) : static_cast<unsigned __int128>(a);
    mpz_class z(static_cast<unsigned long>(u >> 64));
    z <<= 64;
    z += mpz_class(static_cast<unsigned long>(u & ~0UL));
    if (neg) z = -z;
    out.push_back(Rational(z) * pow(Rational(r), -h1));
  }
  return out;
}

struct PixtonCacheKey {
  int g;
  std::vector<long> parts;
  friend auto operator<=>(const PixtonCacheKey&, const PixtonCacheKey&) = default;
};

std::shared_mutex g_mutex;
std::map<PixtonCacheKey, std::shared_ptr<const std::vector<PixtonGraph>>> g_graphs;
std::map<PixtonCacheKey, TautClass> g_dr;
std::map<std::array<int, 3>, TautClass> g_lambda;

std::shared_ptr<const std::vector<PixtonGraph>> cached_graphs(int g, std::span<const long> parts) {
  PixtonCacheKey key{g, {parts.begin(), parts.end()}};
  {
    std::shared_lock lock(g_mutex);
    auto it = g_graphs.find(key);
    if (it != g_graphs.end()) return it->second;
  }
  auto made = std::make_shared<const std::vector<PixtonGraph>>(pixton_graphs(g, parts));
  std::unique_lock lock(g_mutex);
  return g_graphs.try_emplace(std::move(key), std::move(made)).first->second;
}

/// Lagrange weights for evaluating at `at` through the nodes xs.
std::vector<Rational> lagrange_weights(std::span<const long> xs, long at) {
  std::vector<Rational> w(xs.size(), Rational(1));
  for (std::size_t j = 0; j < xs.size(); ++j)
    for (std::size_t l = 0; l < xs.size(); ++l)
      if (l != j) w[j] *= Rational(at - xs[l]) / Rational(xs[j] - xs[l]);
  return w;
}

}  // namespace

std::vector<long> dr_schedule(int g, std::span<const long> parts, int schedule) {
  long bound = 2L * g;
  for (long p : parts) bound += p < 0 ? -p : p;
  const int count = 2 * g + 2;
  std::vector<long> primes;
  for (long p = bound + 1; static_cast<int>(primes.size()) < count * (schedule + 1); ++p)
    if (is_prime(p)) primes.push_back(p);
  return {primes.end() - count, primes.end()};
}

TautClass pixton_class_at(int g, std::span<const long> parts, long r) {
  check_dr_input(g, parts);
  const auto graphs = cached_graphs(g, parts);
  TautClass out(g, static_cast<int>(parts.size()));
  for (const auto& pg : *graphs) {
    const auto sums = weighting_sums(pg, parts, r);
    for (std::size_t t = 0; t < sums.size(); ++t)
      if (!sums[t].is_zero()) out += pg.classes[t] * sums[t];
  }
  return out;
}

TautClass dr_cycle_with_schedule(int g, std::span<const long> parts, std::span<const long> r_values) {
  check_dr_input(g, parts);
  const std::size_t fit = static_cast<std::size_t>(2 * g + 1);
  if (r_values.size() < fit) throw std::invalid_argument("DR cycle: need at least 2g+1 values of r");
  const auto graphs = cached_graphs(g, parts);
  const auto nodes = r_values.subspan(0, fit);
  const auto at_zero = lagrange_weights(nodes, 0);
  std::vector<std::vector<Rational>> check_weights;
  for (std::size_t j = fit; j < r_values.size(); ++j) check_weights.push_back(lagrange_weights(nodes, r_values[j]));

  TautClass out(g, static_cast<int>(parts.size()));
  for (const auto& pg : *graphs) {
    std::vector<std::vector<Rational>> samples;
    for (long r : r_values) samples.push_back(weighting_sums(pg, parts, r));
    for (std::size_t t = 0; t < pg.classes.size(); ++t) {
      Rational c;
      for (std::size_t j = 0; j < fit; ++j) c += samples[j][t] * at_zero[j];
      for (std::size_t x = 0; x < check_weights.size(); ++x) {
        Rational predicted;
        for (std::size_t j = 0; j < fit; ++j) predicted += samples[j][t] * check_weights[x][j];
        if (predicted != samples[fit + x][t]) {
          std::ostringstream msg;
          msg << "DR cycle: weighting sum is not a degree-" << 2 * g << " polynomial in r at r = "
              << r_values[fit + x] << " on graph " << serialize(pg.graph);
          throw std::runtime_error(msg.str());
        }
      }
      if (!c.is_zero()) out += pg.classes[t] * c;
    }
  }
  return out * pow(Rational(2), -g);
}

TautClass dr_cycle(int g, std::span<const long> parts) {
  check_dr_input(g, parts);
  PixtonCacheKey key{g, {parts.begin(), parts.end()}};
  {
    std::shared_lock lock(g_mutex);
    auto it = g_dr.find(key);
    if (it != g_dr.end()) return it->second;
  }
  const auto schedule = dr_schedule(g, parts, 0);
  TautClass made = dr_cycle_with_schedule(g, parts, schedule);
  std::unique_lock lock(g_mutex);
  return g_dr.try_emplace(std::move(key), std::move(made)).first->second;
}

TautClass chern_character(int g, int n, int k) {
  if (k < 0) throw std::invalid_argument("chern_character: negative degree");
  if (k == 0) return TautClass::fundamental(g, n) * Rational(g);
  TautClass out(g, n);
  if (k % 2 == 0 || g == 0 || k > moduli_dimension(g, n)) return out;
  // Bernoulli numbers B_2 .. B_12; enough for every degree reachable here.
  static const std::map<int, Rational> bernoulli{{2, Rational(1, 6)},   {4, Rational(-1, 30)},
                                                 {6, Rational(1, 42)},  {8, Rational(-1, 30)},
                                                 {10, Rational(5, 66)}, {12, Rational(-691, 2730)}};
  auto bit = bernoulli.find(k + 1);
  if (bit == bernoulli.end()) throw std::out_of_range("chern_character: degree too large");
  out += TautClass::kappa(g, n, k);
  for (int i = 1; i <= n; ++i) out -= TautClass::psi(g, n, i, k);
  for (const auto& G : stable_graphs(g, n)) {
    if (G.num_edges() == 0) continue;
    if (G.num_edges() > 1) break;
    const Rational inv_aut = Rational(1) / Rational(static_cast<long>(automorphism_count(G)));
    for (int a = 0; a <= k - 1; ++a) {
      DecoratedStratum s = DecoratedStratum::bare(G);
      s.psi[n] = a;
      s.psi[n + 1] = k - 1 - a;
      if (survives_truncation(s)) out.add(s, inv_aut * Rational(a % 2 == 0 ? 1 : -1));
    }
  }
  return out * (bit->second / factorial(k + 1));
}

TautClass lambda_class(int g, int n, int i) {
  if (i < 0 || i > g) throw std::invalid_argument("lambda_class: index out of range 0..g");
  if (i == 0) return TautClass::fundamental(g, n);
  const std::array<int, 3> key{g, n, i};
  {
    std::shared_lock lock(g_mutex);
    auto it = g_lambda.find(key);
    if (it != g_lambda.end()) return it->second;
  }
  // Newton: k c_k = sum_{j=1}^k (-1)^{j-1} j! ch_j c_{k-j}.
  TautClass c(g, n);
  for (int j = 1; j <= i; ++j) {
    TautClass ch = chern_character(g, n, j);
    if (ch.is_zero()) continue;
    c += multiply(ch, lambda_class(g, n, i - j)) * (factorial(j) * Rational(j % 2 == 1 ? 1 : -1));
  }
  c *= Rational(1, i);
  std::unique_lock lock(g_mutex);
  return g_lambda.try_emplace(key, std::move(c)).first->second;
}

ULaurent<TautClass> hodge_poly(int g, int n, int sign) {
  ULaurent<TautClass> out;
  for (int i = 0; i <= g; ++i) {
    const Rational s = (sign < 0 && i % 2 == 1) ? Rational(-1) : Rational(1);
    out.add(g - i, lambda_class(g, n, i) * s);
  }
  return out;
}

MumfordResult mumford_check(int g, int n) {
  MumfordResult res;
  auto prod = hodge_poly(g, n, -1).times(hodge_poly(g, n, +1),
                                         [](const TautClass& x, const TautClass& y) { return multiply(x, y); });
  prod -= ULaurent<TautClass>::monomial(2 * g, TautClass::fundamental(g, n));
  const int D = moduli_dimension(g, n);
  auto& R = StratumRegistry::instance();
  for (int j = 1; j <= std::min(2 * g, D); ++j) {
    const TautClass* coeff = prod.coefficient(2 * g - j);
    for (const auto& s : enumerate_strata(g, n, D - j)) {
      ++res.pairings;
      const Rational v = coeff ? pairing(*coeff, R.intern(s)) : Rational(0);
      if (!v.is_zero() && res.pass) {
        res.pass = false;
        res.witness = "degree " + std::to_string(j) + " against " + serialize(s) + ": " + v.str();
      }
    }
  }
  return res;
}

}  // namespace taut
