#include "taut/star_tree.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace taut {

StableGraph StarTree::graph() const {
  StableGraph G;
  const int k = num_edges();
  G.vertex_genus.push_back(root_genus);
  G.vertex_genus.insert(G.vertex_genus.end(), leaf_genus.begin(), leaf_genus.end());
  G.leg_vertex.assign(n + m, 0);
  for (int e = 0; e < k; ++e) {
    for (int leg : blocks[e]) G.leg_vertex[leg - 1] = e + 1;
    G.edges.push_back({0, e + 1});
  }
  return G;
}

APoly StarTree::edge_part(int e) const {
  APoly p(n);
  for (int leg : blocks[e]) p += APoly::variable(n, leg - 1);
  return p;
}

long StarTree::edge_part(int e, std::span<const long> a) const {
  long s = 0;
  for (int leg : blocks[e]) s += a[leg - 1];
  return s;
}

std::string StarTree::serialize() const { return taut::serialize(canonical_form(graph())); }

namespace {

/// Set partitions of {1..n} as restricted growth strings, blocks ordered by
/// their minimum element.
void set_partitions(int n, std::vector<std::vector<std::vector<int>>>& out) {
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> rec = [&](int i, int num_blocks) {
    if (i == n) {
      std::vector<std::vector<int>> blocks(num_blocks);
      for (int j = 0; j < n; ++j) blocks[rgs[j]].push_back(j + 1);
      out.push_back(std::move(blocks));
      return;
    }
    for (int b = 0; b <= num_blocks; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(num_blocks, b + 1));
    }
  };
  rec(0, 0);
}

void weak_compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    cur.push_back(k);
    weak_compositions(total - k, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<StarTree> enumerate_pssrt(int g, int n, int m) {
  if (g < 0 || n < 1 || m < 1 || 2 * g - 2 + n + m <= 0)
    throw std::domain_error("enumerate_pssrt: need g >= 0, n >= 1, m >= 1, 2g-2+n+m > 0; got (" + std::to_string(g) +
                            ", " + std::to_string(n) + ", " + std::to_string(m) + ")");
  std::vector<std::vector<std::vector<int>>> parts;
  set_partitions(n, parts);
  std::stable_sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });
  std::vector<StarTree> out;
  for (const auto& blocks : parts) {
    const int k = static_cast<int>(blocks.size());
    std::vector<std::vector<int>> genera;
    std::vector<int> cur;
    weak_compositions(g, k + 1, cur, genera);
    for (const auto& gv : genera) {
      StarTree t;
      t.g = g;
      t.n = n;
      t.m = m;
      t.root_genus = gv[0];
      t.blocks = blocks;
      t.leaf_genus.assign(gv.begin() + 1, gv.end());
      // Pre-stability and the one-leg-per-vertex rule hold automatically for
      // this construction; they are re-checked by star_tree_violations.
      out.push_back(std::move(t));
    }
  }
  return out;
}

long pssrt_count_formula(int g, int n) {
  // Stirling numbers of the second kind by the standard recurrence.
  std::vector<std::vector<long>> S(n + 1, std::vector<long>(n + 1, 0));
  S[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= i; ++k) S[i][k] = k * S[i - 1][k] + S[i - 1][k - 1];
  long total = 0;
  for (int k = 1; k <= n; ++k) {
    long c = 1;  // C(g + k, k)
    for (int j = 1; j <= k; ++j) c = c * (g + j) / j;
    total += S[n][k] * c;
  }
  return total;
}

std::vector<std::string> star_tree_violations(const StableGraph& G, int root, int g, int n, int m) {
  std::vector<std::string> bad;
  const int nv = G.num_vertices();
  if (G.num_legs() != n + m) bad.emplace_back("leg count differs from n+m");
  if (root < 0 || root >= nv) {
    bad.emplace_back("root out of range");
    return bad;
  }
  if (G.num_edges() != nv - 1 || !G.is_connected()) bad.emplace_back("underlying graph is not a tree");
  for (const auto& e : G.edges) {
    if (e[0] == e[1]) bad.emplace_back("loop present");
    if (e[0] != root && e[1] != root) bad.emplace_back("edge not incident to the root");
  }
  for (int i = 0; i < G.num_legs(); ++i) {
    const bool on_root = G.leg_vertex[i] == root;
    if (i < n && on_root) bad.emplace_back("leg " + std::to_string(i + 1) + " on the root");
    if (i >= n && !on_root) bad.emplace_back("leg " + std::to_string(i + 1) + " off the root");
  }
  for (int v = 0; v < nv; ++v) {
    if (2 * G.vertex_genus[v] - 2 + G.valence(v) < 0) bad.emplace_back("vertex " + std::to_string(v) + " not pre-stable");
    if (std::count(G.leg_vertex.begin(), G.leg_vertex.end(), v) == 0)
      bad.emplace_back("vertex " + std::to_string(v) + " has no leg");
  }
  // Multi-edges: in a star every non-root vertex has exactly one edge.
  for (int v = 0; v < nv; ++v)
    if (v != root && G.valence(v) - std::count(G.leg_vertex.begin(), G.leg_vertex.end(), v) != 1)
      bad.emplace_back("vertex " + std::to_string(v) + " does not have exactly one edge");
  if (std::accumulate(G.vertex_genus.begin(), G.vertex_genus.end(), 0) != g || G.genus() != g)
    bad.emplace_back("vertex genera do not sum to g");
  return bad;
}

}  // namespace taut
