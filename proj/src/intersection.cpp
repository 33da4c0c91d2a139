#include "taut/intersection.hpp"

#include <algorithm>
#include <atomic>
#include <array>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

#include "taut/graph_enum.hpp"
#include "taut/psi_integrals.hpp"

namespace taut {

namespace {

std::atomic<std::size_t> g_products{0}, g_pair_hits{0}, g_pair_misses{0};

/// Gamma -> Gamma/S, expressed against the canonical form of Gamma/S.
struct Contraction {
  int gamma = 0;
  std::uint32_t mask = 0;
  std::vector<int> vertex;  // Gamma vertex -> target vertex
  std::vector<int> half;    // target half-edge -> Gamma half-edge
};

struct GraphInfo {
  std::int64_t aut = 1;
  std::vector<std::vector<int>> halves;  // half-edges at each vertex
  std::vector<int> vdim;
};

/// Per-ambient tables: every stable graph with its automorphisms, plus every
/// edge contraction indexed by the contracted graph.
struct Ambient {
  int g = 0, n = 0;
  const std::vector<StableGraph>* graphs = nullptr;
  std::unordered_map<std::string, int> index;
  std::vector<GraphInfo> info;
  std::vector<std::vector<Relabeling>> auts;
  std::vector<std::vector<Contraction>> by_target;  // sorted by gamma

  std::mutex pair_mu;
  std::map<std::pair<int, int>, std::shared_ptr<const std::vector<std::pair<int, int>>>> pairs;

  /// Pairs (i, j) into by_target[a] x by_target[b] sharing Gamma with
  /// disjoint contracted sets.
  std::shared_ptr<const std::vector<std::pair<int, int>>> generic_pairs(int a, int b) {
    {
      std::lock_guard lock(pair_mu);
      auto it = pairs.find({a, b});
      if (it != pairs.end()) return it->second;
    }
    auto out = std::make_shared<std::vector<std::pair<int, int>>>();
    const auto& A = by_target[a];
    const auto& B = by_target[b];
    std::size_t i = 0, j = 0;
    while (i < A.size() && j < B.size()) {
      if (A[i].gamma < B[j].gamma) {
        ++i;
      } else if (B[j].gamma < A[i].gamma) {
        ++j;
      } else {
        const int gm = A[i].gamma;
        std::size_t i2 = i, j2 = j;
        while (i2 < A.size() && A[i2].gamma == gm) ++i2;
        while (j2 < B.size() && B[j2].gamma == gm) ++j2;
        for (std::size_t x = i; x < i2; ++x)
          for (std::size_t y = j; y < j2; ++y)
            if ((A[x].mask & B[y].mask) == 0) out->emplace_back(static_cast<int>(x), static_cast<int>(y));
        i = i2;
        j = j2;
      }
    }
    std::lock_guard lock(pair_mu);
    return pairs.try_emplace({a, b}, std::move(out)).first->second;
  }

  [[nodiscard]] int graph_index(const StableGraph& canonical) const {
    auto it = index.find(encode(DecoratedStratum::bare(canonical)));
    if (it == index.end()) throw std::logic_error("graph missing from ambient table");
    return it->second;
  }
};

struct Contracted {
  StableGraph graph;
  std::vector<int> vertex;  // Gamma vertex -> contracted vertex
  std::vector<int> half;    // contracted half-edge -> Gamma half-edge
};

Contracted contract(const StableGraph& G, std::uint32_t mask) {
  const int nv = G.num_vertices(), n = G.num_legs(), ne = G.num_edges();
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int e = 0; e < ne; ++e)
    if (mask >> e & 1u) {
      int a = find(G.edges[e][0]), b = find(G.edges[e][1]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  Contracted c;
  std::vector<int> comp_id(nv, -1);
  c.vertex.assign(nv, -1);
  for (int v = 0; v < nv; ++v) {
    const int r = find(v);
    if (comp_id[r] < 0) {
      comp_id[r] = c.graph.num_vertices();
      c.graph.vertex_genus.push_back(0);
    }
    c.vertex[v] = comp_id[r];
    c.graph.vertex_genus[comp_id[r]] += G.vertex_genus[v];
  }
  // Each contracted edge adds one to the genus of its component, except for
  // the spanning-tree edges; net effect: + #edges - #vertices + 1 per component.
  std::vector<int> comp_vertices(c.graph.num_vertices(), 0), comp_edges(c.graph.num_vertices(), 0);
  for (int v = 0; v < nv; ++v) ++comp_vertices[c.vertex[v]];
  for (int e = 0; e < ne; ++e)
    if (mask >> e & 1u) ++comp_edges[c.vertex[G.edges[e][0]]];
  for (int k = 0; k < c.graph.num_vertices(); ++k) c.graph.vertex_genus[k] += comp_edges[k] - comp_vertices[k] + 1;
  c.graph.leg_vertex.resize(n);
  c.half.resize(n);
  for (int i = 0; i < n; ++i) {
    c.graph.leg_vertex[i] = c.vertex[G.leg_vertex[i]];
    c.half[i] = i;
  }
  for (int e = 0; e < ne; ++e) {
    if (mask >> e & 1u) continue;
    c.graph.edges.push_back({c.vertex[G.edges[e][0]], c.vertex[G.edges[e][1]]});
    c.half.push_back(n + 2 * e);
    c.half.push_back(n + 2 * e + 1);
  }
  return c;
}

std::unique_ptr<Ambient> build_ambient(int g, int n) {
  auto A = std::make_unique<Ambient>();
  A->g = g;
  A->n = n;
  A->graphs = &stable_graphs(g, n);
  const auto& graphs = *A->graphs;
  const int count = static_cast<int>(graphs.size());
  for (int i = 0; i < count; ++i) A->index.emplace(encode(DecoratedStratum::bare(graphs[i])), i);
  A->info.resize(count);
  A->auts.resize(count);
  A->by_target.resize(count);
  for (int i = 0; i < count; ++i) {
    const auto& G = graphs[i];
    A->auts[i] = automorphisms(G);
    auto& inf = A->info[i];
    inf.aut = static_cast<std::int64_t>(A->auts[i].size());
    for (int v = 0; v < G.num_vertices(); ++v) {
      inf.halves.push_back(G.half_edges_at(v));
      inf.vdim.push_back(moduli_dimension(G.vertex_genus[v], G.valence(v)));
    }
  }
  for (int i = 0; i < count; ++i) {
    const auto& G = graphs[i];
    const std::uint32_t full = (1u << G.num_edges());
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      Contracted c = contract(G, mask);
      CanonicalResult r = canonicalize(DecoratedStratum::bare(c.graph));
      Contraction k;
      k.gamma = i;
      k.mask = mask;
      k.vertex.resize(G.num_vertices());
      for (int v = 0; v < G.num_vertices(); ++v) k.vertex[v] = r.map.vertex[c.vertex[v]];
      k.half.resize(c.half.size());
      for (std::size_t h = 0; h < c.half.size(); ++h) k.half[r.map.half_edge[h]] = c.half[h];
      A->by_target[A->graph_index(r.form.graph)].push_back(std::move(k));
    }
  }
  return A;
}

Ambient& ambient(int g, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Ambient>> table;
  std::lock_guard lock(mu);
  auto& slot = table[{g, n}];
  if (!slot) slot = build_ambient(g, n);
  return *slot;
}

/// The stratum relabelled onto the bare canonical form of its graph, which is
/// how the ambient tables index it. Decorations can make the decorated
/// canonical labelling differ from the bare one.
const DecoratedStratum& aligned(StratumId id) {
  static std::shared_mutex mu;
  static std::unordered_map<StratumId, DecoratedStratum> table;
  {
    std::shared_lock lock(mu);
    auto it = table.find(id);
    if (it != table.end()) return it->second;
  }
  const DecoratedStratum& s = StratumRegistry::instance().get(id);
  CanonicalResult bare = canonicalize(DecoratedStratum::bare(s.graph));
  DecoratedStratum out;
  out.graph = bare.form.graph;
  out.psi.assign(s.psi.size(), 0);
  out.kappa.assign(s.kappa.size(), {});
  for (std::size_t h = 0; h < s.psi.size(); ++h) out.psi[bare.map.half_edge[h]] = s.psi[h];
  for (std::size_t v = 0; v < s.kappa.size(); ++v) out.kappa[bare.map.vertex[v]] = s.kappa[v];
  std::unique_lock lock(mu);
  return table.try_emplace(id, std::move(out)).first->second;
}

/// Enumerates the decorated monomials on Gamma making up x*y for strata x, y
/// of ambient `amb`. `f(gamma, psi, kappa, coeff)` receives unsorted kappa.
template <class F>
void for_each_product_term(Ambient& amb, const DecoratedStratum& x, const DecoratedStratum& y, F&& f) {
  const int a = amb.graph_index(x.graph);
  const int b = amb.graph_index(y.graph);
  const auto pairs = amb.generic_pairs(a, b);
  const auto& graphs = *amb.graphs;
  for (const auto& [ia, ib] : *pairs) {
    const Contraction& ca = amb.by_target[a][ia];
    const Contraction& cb = amb.by_target[b][ib];
    const StableGraph& G = graphs[ca.gamma];
    const GraphInfo& inf = amb.info[ca.gamma];
    const int nv = G.num_vertices(), n = G.num_legs(), ne = G.num_edges();
    const Rational weight(1, inf.aut);
    std::vector<int> excess;
    for (int e = 0; e < ne; ++e)
      if (!((ca.mask | cb.mask) >> e & 1u)) excess.push_back(e);

    for (const Relabeling& sa : amb.auts[a]) {
      for (const Relabeling& sb : amb.auts[b]) {
        ++g_products;
        std::vector<int> psi(G.num_half_edges(), 0);
        for (std::size_t t = 0; t < ca.half.size(); ++t) psi[ca.half[t]] += x.psi[sa.half_edge[t]];
        for (std::size_t t = 0; t < cb.half.size(); ++t) psi[cb.half[t]] += y.psi[sb.half_edge[t]];
        // kappa indices to distribute: (index, allowed vertices)
        std::vector<std::pair<int, std::vector<int>>> kap;
        auto collect = [&](const DecoratedStratum& s, const Contraction& c, const Relabeling& sg) {
          for (int u = 0; u < s.graph.num_vertices(); ++u) {
            const auto& ks = s.kappa[sg.vertex[u]];
            if (ks.empty()) continue;
            std::vector<int> pre;
            for (int w = 0; w < nv; ++w)
              if (c.vertex[w] == u) pre.push_back(w);
            for (int k : ks) kap.emplace_back(k, pre);
          }
        };
        collect(x, ca, sa);
        collect(y, cb, sb);
        std::vector<int> vdeg(nv, 0);
        for (int h = 0; h < G.num_half_edges(); ++h) vdeg[G.half_edge_vertex(h)] += psi[h];
        bool ok = true;
        for (int v = 0; v < nv; ++v)
          if (vdeg[v] > inf.vdim[v]) ok = false;
        if (!ok) continue;
        std::vector<std::vector<int>> kappa(nv);
        // Distribute kappa indices, then choose a side for every excess edge.
        std::function<void(std::size_t, bool)> rec_excess;
        std::function<void(std::size_t)> rec_kappa = [&](std::size_t i) {
          if (i == kap.size()) {
            rec_excess(0, false);
            return;
          }
          const int k = kap[i].first;
          for (int w : kap[i].second) {
            if (vdeg[w] + k > inf.vdim[w]) continue;
            vdeg[w] += k;
            kappa[w].push_back(k);
            rec_kappa(i + 1);
            kappa[w].pop_back();
            vdeg[w] -= k;
          }
        };
        rec_excess = [&](std::size_t i, bool negative) {
          if (i == excess.size()) {
            f(ca.gamma, psi, kappa, negative ? -weight : weight);
            return;
          }
          const int e = excess[i];
          for (int side = 0; side < 2; ++side) {
            const int h = n + 2 * e + side;
            const int w = G.half_edge_vertex(h);
            if (vdeg[w] + 1 > inf.vdim[w]) continue;
            ++vdeg[w];
            ++psi[h];
            rec_excess(i + 1, !negative);
            --psi[h];
            --vdeg[w];
          }
        };
        rec_kappa(0);
      }
    }
  }
}

Rational vertex_integral(const StableGraph& G, const GraphInfo& inf, const std::vector<int>& psi,
                         const std::vector<std::vector<int>>& kappa) {
  Rational total(1);
  for (int v = 0; v < G.num_vertices(); ++v) {
    std::vector<int> p;
    p.reserve(inf.halves[v].size());
    for (int h : inf.halves[v]) p.push_back(psi[h]);
    Rational x = psi_kappa_integral(G.vertex_genus[v], p, kappa[v]);
    if (x.is_zero()) return x;
    total *= x;
  }
  return total;
}

struct PairMemo {
  std::shared_mutex mu;
  std::unordered_map<std::uint64_t, Rational> table;
};

PairMemo& pair_memo() {
  static PairMemo m;
  return m;
}

}  // namespace

TautClass multiply(const TautClass& x, const TautClass& y) {
  if (x.is_zero() || y.is_zero()) return TautClass(x.is_zero() ? y.genus() : x.genus(), x.is_zero() ? y.markings() : x.markings());
  if (x.genus() != y.genus() || x.markings() != y.markings())
    throw std::invalid_argument("multiply: mismatched ambient spaces");
  const int g = x.genus(), n = x.markings();
  const int dim = moduli_dimension(g, n);
  auto& R = StratumRegistry::instance();
  Ambient& amb = ambient(g, n);
  TautClass out(g, n);
  for (const auto& [ix, cx] : x.terms()) {
    const auto& sx = aligned(ix);
    for (const auto& [iy, cy] : y.terms()) {
      const auto& sy = aligned(iy);
      if (R.degree(ix) + R.degree(iy) > dim) continue;
      const Rational c = cx * cy;
      for_each_product_term(amb, sx, sy,
                            [&](int gamma, const std::vector<int>& psi, const std::vector<std::vector<int>>& kappa,
                                const Rational& w) {
                              DecoratedStratum s;
                              s.graph = (*amb.graphs)[gamma];
                              s.psi = psi;
                              s.kappa = kappa;
                              for (auto& k : s.kappa) std::sort(k.begin(), k.end());
                              out.add(s, c * w);
                            });
    }
  }
  return out;
}

Rational integrate_stratum(const DecoratedStratum& s) {
  const auto& G = s.graph;
  if (s.degree() != moduli_dimension(G.genus(), G.num_legs())) return Rational(0);
  Rational total(1);
  for (int v = 0; v < G.num_vertices(); ++v) {
    std::vector<int> p;
    for (int h : G.half_edges_at(v)) p.push_back(s.psi[h]);
    Rational x = psi_kappa_integral(G.vertex_genus[v], p, s.kappa[v]);
    if (x.is_zero()) return x;
    total *= x;
  }
  return total;
}

Rational integrate(const TautClass& x) {
  auto& R = StratumRegistry::instance();
  Rational total;
  for (const auto& [id, c] : x.terms())
    if (R.degree(id) == x.dimension()) total += c * integrate_stratum(R.get(id));
  return total;
}

Rational pair_strata(StratumId x, StratumId y) {
  auto& R = StratumRegistry::instance();
  const int g = R.genus(x), n = R.legs(x);
  if (R.genus(y) != g || R.legs(y) != n) throw std::invalid_argument("pair_strata: mismatched ambient spaces");
  if (R.degree(x) + R.degree(y) != moduli_dimension(g, n)) return Rational(0);
  if (x > y) std::swap(x, y);
  const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
                            static_cast<std::uint32_t>(y);
  auto& M = pair_memo();
  {
    std::shared_lock lock(M.mu);
    auto it = M.table.find(key);
    if (it != M.table.end()) {
      ++g_pair_hits;
      return it->second;
    }
  }
  ++g_pair_misses;
  Ambient& amb = ambient(g, n);
  Rational total;
  for_each_product_term(amb, aligned(x), aligned(y),
                        [&](int gamma, const std::vector<int>& psi, const std::vector<std::vector<int>>& kappa,
                            const Rational& w) {
                          total += w * vertex_integral((*amb.graphs)[gamma], amb.info[gamma], psi, kappa);
                        });
  std::unique_lock lock(M.mu);
  M.table.try_emplace(key, total);
  return total;
}

Rational pairing(const TautClass& x, StratumId y) {
  Rational total;
  for (const auto& [id, c] : x.terms()) total += c * pair_strata(id, y);
  return total;
}

namespace {

struct GlueMemo {
  std::shared_mutex mu;
  std::unordered_map<std::string, StratumId> table;
};

GlueMemo& glue_memo() {
  static GlueMemo m;
  return m;
}

/// Builds the stratum obtained by inserting stratum parts[v] at vertex v.
DecoratedStratum glue_strata(const StableGraph& G, const std::vector<std::vector<int>>& markings,
                             const std::vector<const DecoratedStratum*>& parts) {
  const int n = G.num_legs();
  DecoratedStratum out;
  out.graph.leg_vertex.assign(n, -1);
  out.graph.edges.assign(G.num_edges(), {-1, -1});
  std::vector<int> outer_psi(G.num_half_edges(), 0);
  std::vector<std::array<int, 3>> inner;  // (u, v, psi pair index)
  std::vector<std::array<int, 2>> inner_psi;
  int offset = 0;
  for (int v = 0; v < G.num_vertices(); ++v) {
    const DecoratedStratum& s = *parts[v];
    const auto& H = s.graph;
    for (int w = 0; w < H.num_vertices(); ++w) {
      out.graph.vertex_genus.push_back(H.vertex_genus[w]);
      out.kappa.push_back(s.kappa[w]);
    }
    for (int j = 0; j < H.num_legs(); ++j) {
      const int h = markings[v][j];
      const int at = offset + H.leg_vertex[j];
      outer_psi[h] = s.psi[j];
      if (h < n) {
        out.graph.leg_vertex[h] = at;
      } else {
        out.graph.edges[(h - n) / 2][(h - n) % 2] = at;
      }
    }
    for (int e = 0; e < H.num_edges(); ++e) {
      inner.push_back({offset + H.edges[e][0], offset + H.edges[e][1], static_cast<int>(inner_psi.size())});
      inner_psi.push_back({s.psi[H.num_legs() + 2 * e], s.psi[H.num_legs() + 2 * e + 1]});
    }
    offset += H.num_vertices();
  }
  out.psi = outer_psi;
  for (const auto& t : inner) {
    out.graph.edges.push_back({t[0], t[1]});
    out.psi.push_back(inner_psi[t[2]][0]);
    out.psi.push_back(inner_psi[t[2]][1]);
  }
  return out;
}

}  // namespace

TautClass glue(const StableGraph& G, const std::vector<std::vector<int>>& markings,
               const std::vector<TautClass>& classes) {
  const int nv = G.num_vertices();
  if (static_cast<int>(classes.size()) != nv || static_cast<int>(markings.size()) != nv)
    throw std::invalid_argument("glue: one class and one marking list per vertex required");
  for (int v = 0; v < nv; ++v) {
    if (classes[v].is_zero()) return TautClass(G.genus(), G.num_legs());
    if (classes[v].genus() != G.vertex_genus[v] || classes[v].markings() != G.valence(v) ||
        static_cast<int>(markings[v].size()) != G.valence(v))
      throw std::invalid_argument("glue: class at vertex " + std::to_string(v) + " lives on the wrong space");
  }
  std::string prefix = serialize(G) + "|";
  for (const auto& mk : markings) {
    for (int h : mk) prefix += std::to_string(h) + ",";
    prefix += ";";
  }
  auto& R = StratumRegistry::instance();
  auto& M = glue_memo();
  TautClass out(G.genus(), G.num_legs());
  const int dim = moduli_dimension(G.genus(), G.num_legs());
  std::vector<std::pair<StratumId, Rational>> pick(nv);
  std::function<void(int, int)> rec = [&](int v, int deg) {
    if (deg > dim) return;
    if (v == nv) {
      std::string key = prefix;
      Rational c(1);
      for (const auto& [id, x] : pick) {
        key += std::to_string(id) + ",";
        c *= x;
      }
      StratumId sid = -1;
      {
        std::shared_lock lock(M.mu);
        auto it = M.table.find(key);
        if (it != M.table.end()) sid = it->second;
      }
      if (sid < 0) {
        std::vector<const DecoratedStratum*> parts(nv);
        for (int w = 0; w < nv; ++w) parts[w] = &R.get(pick[w].first);
        DecoratedStratum s = glue_strata(G, markings, parts);
        sid = survives_truncation(s) ? R.intern(s) : std::numeric_limits<StratumId>::max();
        std::unique_lock lock(M.mu);
        M.table.try_emplace(std::move(key), sid);
      }
      if (sid != std::numeric_limits<StratumId>::max()) out.add(sid, c);
      return;
    }
    for (const auto& [id, x] : classes[v].terms()) {
      pick[v] = {id, x};
      rec(v + 1, deg + R.degree(id));
    }
  };
  rec(0, G.num_edges());
  return out;
}

TautClass boundary_pushforward(const StarTree& T, const std::vector<VertexClass>& classes) {
  const int k = T.num_edges();
  const int N = T.n + T.m;
  if (static_cast<int>(classes.size()) != k + 1) throw std::invalid_argument("boundary_pushforward: wrong class count");
  auto expect_class = [&](int idx, bool unstable) {
    const bool scalar = std::holds_alternative<Rational>(classes[idx]);
    if (scalar != unstable)
      throw std::invalid_argument("boundary_pushforward: vertex " + std::to_string(idx) +
                                  (unstable ? " is unstable and needs a scalar" : " is stable and needs a class"));
  };
  expect_class(0, T.root_unstable());
  for (int e = 0; e < k; ++e) expect_class(e + 1, T.leaf_unstable(e));

  if (T.root_unstable()) {
    // The root only carries the edge and leg n+1; contracting it makes the
    // leaf's edge marking the leg n+1.
    const Rational s = std::get<Rational>(classes[0]);
    const auto& leaf = std::get<TautClass>(classes[1]);
    if (leaf.is_zero()) return TautClass(T.g, N);
    if (leaf.genus() != T.g || leaf.markings() != N)
      throw std::invalid_argument("boundary_pushforward: leaf class lives on the wrong space");
    return leaf * s;
  }

  StableGraph G;
  G.vertex_genus.push_back(T.root_genus);
  G.leg_vertex.assign(N, 0);
  Rational scalar(1);
  std::vector<std::vector<int>> markings(1);
  std::vector<TautClass> vc{std::get<TautClass>(classes[0])};
  std::vector<int> root_edge_marks;
  for (int e = 0; e < k; ++e) {
    if (T.leaf_unstable(e)) {
      scalar *= std::get<Rational>(classes[e + 1]);
      root_edge_marks.push_back(T.blocks[e][0] - 1);  // the leg itself lands on the root
      continue;
    }
    const int v = G.num_vertices();
    G.vertex_genus.push_back(T.leaf_genus[e]);
    for (int leg : T.blocks[e]) G.leg_vertex[leg - 1] = v;
    const int edge = G.num_edges();
    G.edges.push_back({0, v});
    root_edge_marks.push_back(N + 2 * edge);
    std::vector<int> mk;
    for (int leg : T.blocks[e]) mk.push_back(leg - 1);
    mk.push_back(N + 2 * edge + 1);
    markings.push_back(std::move(mk));
    vc.push_back(std::get<TautClass>(classes[e + 1]));
  }
  markings[0] = root_edge_marks;
  for (int i = T.n; i < N; ++i) markings[0].push_back(i);
  TautClass out = glue(G, markings, vc);
  return out * scalar;
}

IntersectionStats intersection_stats() { return {g_products.load(), g_pair_hits.load(), g_pair_misses.load()}; }

}  // namespace taut
