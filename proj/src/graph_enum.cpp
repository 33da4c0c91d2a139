#include "taut/graph_enum.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>

namespace taut {

namespace {

/// All one-step degenerations of G (loop additions and vertex splits).
void degenerations(const StableGraph& G, std::vector<StableGraph>& out) {
  const int nv = G.num_vertices();
  for (int v = 0; v < nv; ++v) {
    if (G.vertex_genus[v] >= 1) {
      StableGraph H = G;
      H.vertex_genus[v] -= 1;
      H.edges.push_back({v, v});
      out.push_back(std::move(H));
    }
    std::vector<int> halves = G.half_edges_at(v);
    const int k = static_cast<int>(halves.size());
    const int gv = G.vertex_genus[v];
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      const int moved = __builtin_popcount(mask);
      for (int h = 0; h <= gv; ++h) {
        // new vertex w gets genus h and the half-edges in mask
        if (2 * h - 2 + moved + 1 <= 0) continue;
        if (2 * (gv - h) - 2 + (k - moved) + 1 <= 0) continue;
        StableGraph H = G;
        const int w = nv;
        H.vertex_genus[v] = gv - h;
        H.vertex_genus.push_back(h);
        const int n = G.num_legs();
        for (int j = 0; j < k; ++j) {
          if (!(mask & (1u << j))) continue;
          const int he = halves[j];
          if (he < n) {
            H.leg_vertex[he] = w;
          } else {
            const int e = (he - n) / 2, side = (he - n) % 2;
            H.edges[e][side] = w;
          }
        }
        H.edges.push_back({v, w});
        out.push_back(std::move(H));
      }
    }
  }
}

std::vector<StableGraph> build_graphs(int g, int n) {
  std::vector<StableGraph> all;
  std::vector<StableGraph> level{canonical_form(StableGraph::trivial(g, n))};
  const int dim = moduli_dimension(g, n);
  for (int e = 0; e <= dim && !level.empty(); ++e) {
    all.insert(all.end(), level.begin(), level.end());
    std::map<std::string, StableGraph> next;
    std::vector<StableGraph> cand;
    for (const auto& G : level) {
      cand.clear();
      degenerations(G, cand);
      for (const auto& H : cand) {
        auto c = canonicalize(DecoratedStratum::bare(H)).form;
        next.emplace(encode(c), std::move(c.graph));
      }
    }
    level.clear();
    for (auto& [k, G] : next) level.push_back(std::move(G));
  }
  return all;
}

}  // namespace

const std::vector<StableGraph>& stable_graphs(int g, int n) {
  if (g < 0 || n < 0 || !is_stable_type(g, n))
    throw std::domain_error("stable_graphs: (g, n) = (" + std::to_string(g) + ", " + std::to_string(n) +
                            ") is not a stable type");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<StableGraph>> memo;
  {
    std::lock_guard lock(mu);
    auto it = memo.find({g, n});
    if (it != memo.end()) return it->second;
  }
  auto graphs = build_graphs(g, n);
  std::lock_guard lock(mu);
  return memo.try_emplace({g, n}, std::move(graphs)).first->second;
}

namespace {

/// Partitions of `total` into positive parts, each list sorted ascending.
void partitions(int total, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (total == 0) {
    std::vector<int> p(cur.rbegin(), cur.rend());
    out.push_back(std::move(p));
    return;
  }
  for (int k = std::min(total, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(total - k, k, cur, out);
    cur.pop_back();
  }
}

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = total; k >= 0; --k) {
    cur.push_back(k);
    compositions(total - k, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<DecoratedStratum> enumerate_strata(int g, int n, int d) {
  const int dim = moduli_dimension(g, n);
  if (d < 0 || d > dim)
    throw std::domain_error("enumerate_strata: degree " + std::to_string(d) + " outside [0, " + std::to_string(dim) + "]");
  std::vector<DecoratedStratum> out;
  std::set<std::string> seen;
  for (const auto& G : stable_graphs(g, n)) {
    if (G.num_edges() > d) break;
    const int budget = d - G.num_edges();
    const int nv = G.num_vertices();
    std::vector<std::vector<int>> halves(nv);
    std::vector<int> vdim(nv);
    for (int v = 0; v < nv; ++v) {
      halves[v] = G.half_edges_at(v);
      vdim[v] = moduli_dimension(G.vertex_genus[v], static_cast<int>(halves[v].size()));
    }
    // Per-vertex decoration options of each degree.
    std::vector<std::vector<std::vector<std::pair<std::vector<int>, std::vector<int>>>>> options(nv);
    for (int v = 0; v < nv; ++v) {
      options[v].resize(std::min(budget, vdim[v]) + 1);
      for (int b = 0; b < static_cast<int>(options[v].size()); ++b) {
        for (int t = 0; t <= b; ++t) {
          std::vector<std::vector<int>> kps;
          std::vector<int> cur;
          partitions(t, t, cur, kps);
          std::vector<std::vector<int>> pss;
          compositions(b - t, static_cast<int>(halves[v].size()), cur, pss);
          for (const auto& kp : kps)
            for (const auto& ps : pss) options[v][b].emplace_back(ps, kp);
        }
      }
    }
    std::vector<int> vbudget;
    std::vector<std::vector<int>> splits;
    compositions(budget, nv, vbudget, splits);
    for (const auto& split : splits) {
      bool ok = true;
      for (int v = 0; v < nv; ++v)
        if (split[v] > vdim[v]) ok = false;
      if (!ok) continue;
      DecoratedStratum s = DecoratedStratum::bare(G);
      std::function<void(int)> rec = [&](int v) {
        if (v == nv) {
          auto c = canonicalize(s).form;
          if (seen.insert(encode(c)).second) out.push_back(std::move(c));
          return;
        }
        for (const auto& [ps, kp] : options[v][split[v]]) {
          for (std::size_t j = 0; j < ps.size(); ++j) s.psi[halves[v][j]] = ps[j];
          s.kappa[v] = kp;
          rec(v + 1);
        }
        for (int h : halves[v]) s.psi[h] = 0;
        s.kappa[v].clear();
      };
      rec(0);
    }
  }
  return out;
}

}  // namespace taut
