#include "taut/stable_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace taut {

int StableGraph::half_edge_vertex(int h) const {
  const int n = num_legs();
  if (h < n) return leg_vertex[h];
  const int k = (h - n) / 2;
  return edges[k][(h - n) % 2];
}

int StableGraph::partner(int h) const {
  const int n = num_legs();
  if (h < n) return -1;
  return ((h - n) % 2 == 0) ? h + 1 : h - 1;
}

std::vector<int> StableGraph::half_edges_at(int v) const {
  std::vector<int> out;
  for (int h = 0; h < num_half_edges(); ++h)
    if (half_edge_vertex(h) == v) out.push_back(h);
  return out;
}

int StableGraph::valence(int v) const {
  int c = static_cast<int>(std::count(leg_vertex.begin(), leg_vertex.end(), v));
  for (const auto& e : edges) c += (e[0] == v) + (e[1] == v);
  return c;
}

int StableGraph::genus() const {
  return std::accumulate(vertex_genus.begin(), vertex_genus.end(), 0) + num_edges() - num_vertices() + 1;
}

bool StableGraph::is_connected() const {
  const int nv = num_vertices();
  if (nv == 0) return false;
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int comps = nv;
  for (const auto& e : edges) {
    int a = find(e[0]), b = find(e[1]);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

bool StableGraph::is_stable() const {
  for (int v = 0; v < num_vertices(); ++v)
    if (2 * vertex_genus[v] - 2 + valence(v) <= 0) return false;
  return true;
}

StableGraph StableGraph::trivial(int g, int n) {
  StableGraph G;
  G.vertex_genus = {g};
  G.leg_vertex.assign(n, 0);
  return G;
}

DecoratedStratum DecoratedStratum::bare(StableGraph g) {
  DecoratedStratum s;
  s.psi.assign(g.num_half_edges(), 0);
  s.kappa.assign(g.num_vertices(), {});
  s.graph = std::move(g);
  return s;
}

int DecoratedStratum::degree() const {
  int d = graph.num_edges() + std::accumulate(psi.begin(), psi.end(), 0);
  for (const auto& k : kappa) d += std::accumulate(k.begin(), k.end(), 0);
  return d;
}

int DecoratedStratum::vertex_degree(int v) const {
  int d = std::accumulate(kappa[v].begin(), kappa[v].end(), 0);
  for (int h = 0; h < graph.num_half_edges(); ++h)
    if (graph.half_edge_vertex(h) == v) d += psi[h];
  return d;
}

bool DecoratedStratum::is_undecorated() const {
  return std::all_of(psi.begin(), psi.end(), [](int x) { return x == 0; }) &&
         std::all_of(kappa.begin(), kappa.end(), [](const auto& k) { return k.empty(); });
}

namespace {

using Key = std::vector<int>;

std::vector<int> rank_keys(const std::vector<Key>& keys) {
  std::vector<Key> sorted(keys);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
  return out;
}

/// Vertex colours after iterated refinement; isomorphism-invariant.
std::vector<int> refined_colors(const DecoratedStratum& s) {
  const auto& G = s.graph;
  const int nv = G.num_vertices();
  const int n = G.num_legs();
  std::vector<Key> keys(nv);
  for (int v = 0; v < nv; ++v) {
    Key& k = keys[v];
    k.push_back(G.vertex_genus[v]);
    k.push_back(static_cast<int>(s.kappa[v].size()));
    k.insert(k.end(), s.kappa[v].begin(), s.kappa[v].end());
    Key legs;
    for (int i = 0; i < n; ++i)
      if (G.leg_vertex[i] == v) {
        legs.push_back(i);
        legs.push_back(s.psi[i]);
      }
    k.push_back(static_cast<int>(legs.size()));
    k.insert(k.end(), legs.begin(), legs.end());
    Key halves;
    int loops = 0;
    for (int e = 0; e < G.num_edges(); ++e) {
      if (G.edges[e][0] == v) halves.push_back(s.psi[n + 2 * e]);
      if (G.edges[e][1] == v) halves.push_back(s.psi[n + 2 * e + 1]);
      if (G.edges[e][0] == v && G.edges[e][1] == v) ++loops;
    }
    std::sort(halves.begin(), halves.end());
    k.push_back(loops);
    k.push_back(static_cast<int>(halves.size()));
    k.insert(k.end(), halves.begin(), halves.end());
  }
  std::vector<int> color = rank_keys(keys);
  int num_colors = *std::max_element(color.begin(), color.end()) + 1;
  while (true) {
    std::vector<Key> nk(nv);
    for (int v = 0; v < nv; ++v) {
      std::vector<std::array<int, 3>> nbr;
      for (int e = 0; e < G.num_edges(); ++e) {
        const int a = G.edges[e][0], b = G.edges[e][1];
        if (a == v) nbr.push_back({color[b], s.psi[n + 2 * e], s.psi[n + 2 * e + 1]});
        if (b == v) nbr.push_back({color[a], s.psi[n + 2 * e + 1], s.psi[n + 2 * e]});
      }
      std::sort(nbr.begin(), nbr.end());
      nk[v].push_back(color[v]);
      for (const auto& t : nbr) nk[v].insert(nk[v].end(), t.begin(), t.end());
    }
    std::vector<int> nc = rank_keys(nk);
    int nnum = *std::max_element(nc.begin(), nc.end()) + 1;
    color = std::move(nc);
    if (nnum == num_colors) break;
    num_colors = nnum;
  }
  return color;
}

struct EdgeTuple {
  std::array<int, 4> t;  // (pos_a, psi_a, pos_b, psi_b), oriented so (pos_a, psi_a) <= (pos_b, psi_b)
  bool flipped;
  int edge;
};

std::vector<EdgeTuple> edge_tuples(const DecoratedStratum& s, const std::vector<int>& pos) {
  const auto& G = s.graph;
  const int n = G.num_legs();
  std::vector<EdgeTuple> out;
  out.reserve(G.num_edges());
  for (int e = 0; e < G.num_edges(); ++e) {
    std::array<int, 2> x{pos[G.edges[e][0]], s.psi[n + 2 * e]};
    std::array<int, 2> y{pos[G.edges[e][1]], s.psi[n + 2 * e + 1]};
    bool flip = y < x;
    if (flip) std::swap(x, y);
    out.push_back({{x[0], x[1], y[0], y[1]}, flip, e});
  }
  std::stable_sort(out.begin(), out.end(), [](const EdgeTuple& a, const EdgeTuple& b) { return a.t < b.t; });
  return out;
}

/// Encoding of the stratum under vertex positions `pos`. Vertex data is the
/// same for every admissible ordering, so only legs and edges are encoded.
Key encode_order(const DecoratedStratum& s, const std::vector<int>& pos) {
  const auto& G = s.graph;
  Key k;
  k.reserve(2 * G.num_legs() + 4 * G.num_edges());
  for (int i = 0; i < G.num_legs(); ++i) k.push_back(pos[G.leg_vertex[i]]);
  for (const auto& et : edge_tuples(s, pos)) k.insert(k.end(), et.t.begin(), et.t.end());
  return k;
}

/// Calls f(order) for every vertex order compatible with the colour cells.
void for_each_cell_order(const std::vector<int>& color, const std::function<void(const std::vector<int>&)>& f) {
  const int nv = static_cast<int>(color.size());
  std::vector<int> verts(nv);
  std::iota(verts.begin(), verts.end(), 0);
  std::stable_sort(verts.begin(), verts.end(), [&](int a, int b) { return color[a] < color[b]; });
  std::vector<std::pair<int, int>> cells;  // [begin, end)
  for (int i = 0; i < nv;) {
    int j = i;
    while (j < nv && color[verts[j]] == color[verts[i]]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == cells.size()) {
      f(verts);
      return;
    }
    auto [b, e] = cells[c];
    std::sort(verts.begin() + b, verts.begin() + e);
    do {
      rec(c + 1);
    } while (std::next_permutation(verts.begin() + b, verts.begin() + e));
  };
  rec(0);
}

void require_connected(const StableGraph& G) {
  if (!G.is_connected()) throw std::invalid_argument("canonical form requires a connected graph");
}

}  // namespace

CanonicalResult canonicalize(const DecoratedStratum& s) {
  const auto& G = s.graph;
  require_connected(G);
  const int nv = G.num_vertices();
  const int n = G.num_legs();
  std::vector<int> color = refined_colors(s);

  std::vector<int> best_pos;
  Key best;
  for_each_cell_order(color, [&](const std::vector<int>& order) {
    std::vector<int> pos(nv);
    for (int p = 0; p < nv; ++p) pos[order[p]] = p;
    Key k = encode_order(s, pos);
    if (best_pos.empty() || k < best) {
      best = std::move(k);
      best_pos = std::move(pos);
    }
  });

  CanonicalResult r;
  DecoratedStratum& out = r.form;
  out.graph.vertex_genus.resize(nv);
  out.kappa.resize(nv);
  for (int v = 0; v < nv; ++v) {
    out.graph.vertex_genus[best_pos[v]] = G.vertex_genus[v];
    out.kappa[best_pos[v]] = s.kappa[v];
  }
  out.graph.leg_vertex.resize(n);
  out.psi.assign(G.num_half_edges(), 0);
  r.map.vertex = best_pos;
  r.map.half_edge.assign(G.num_half_edges(), -1);
  for (int i = 0; i < n; ++i) {
    out.graph.leg_vertex[i] = best_pos[G.leg_vertex[i]];
    out.psi[i] = s.psi[i];
    r.map.half_edge[i] = i;
  }
  auto tuples = edge_tuples(s, best_pos);
  out.graph.edges.resize(tuples.size());
  for (std::size_t j = 0; j < tuples.size(); ++j) {
    const auto& et = tuples[j];
    out.graph.edges[j] = {et.t[0], et.t[2]};
    const int nh0 = n + 2 * static_cast<int>(j), nh1 = nh0 + 1;
    out.psi[nh0] = et.t[1];
    out.psi[nh1] = et.t[3];
    const int oh0 = n + 2 * et.edge, oh1 = oh0 + 1;
    r.map.half_edge[oh0] = et.flipped ? nh1 : nh0;
    r.map.half_edge[oh1] = et.flipped ? nh0 : nh1;
  }
  return r;
}

StableGraph canonical_form(const StableGraph& g) { return canonicalize(DecoratedStratum::bare(g)).form.graph; }

namespace {

std::vector<Relabeling> automorphisms_impl(const DecoratedStratum& s) {
  const auto& G = s.graph;
  require_connected(G);
  const int nv = G.num_vertices();
  const int n = G.num_legs();
  const int ne = G.num_edges();
  std::vector<int> color = refined_colors(s);
  std::vector<int> identity(nv);
  std::iota(identity.begin(), identity.end(), 0);
  const Key reference = encode_order(s, identity);

  std::vector<Relabeling> out;
  for_each_cell_order(color, [&](const std::vector<int>& order) {
    // Every colour-preserving vertex permutation arises exactly once.
    std::vector<int> sigma(nv);
    {
      std::vector<int> sorted(nv);
      std::iota(sorted.begin(), sorted.end(), 0);
      std::stable_sort(sorted.begin(), sorted.end(), [&](int a, int b) { return color[a] < color[b]; });
      for (int i = 0; i < nv; ++i) sigma[sorted[i]] = order[i];
    }
    for (int v = 0; v < nv; ++v)
      if (G.vertex_genus[sigma[v]] != G.vertex_genus[v] || s.kappa[sigma[v]] != s.kappa[v]) return;
    if (encode_order(s, sigma) != reference) return;

    // Lift to half-edges: each edge maps to an edge with the same oriented
    // tuple after applying sigma.
    struct Choice {
      int target;
      bool flip;
    };
    std::vector<std::vector<Choice>> options(ne);
    for (int e = 0; e < ne; ++e) {
      const int a = sigma[G.edges[e][0]], b = sigma[G.edges[e][1]];
      const int pa = s.psi[n + 2 * e], pb = s.psi[n + 2 * e + 1];
      for (int f = 0; f < ne; ++f) {
        const int c = G.edges[f][0], d = G.edges[f][1];
        const int pc = s.psi[n + 2 * f], pd = s.psi[n + 2 * f + 1];
        // Both hold only for a loop with equal decorations at its ends.
        if (a == c && b == d && pa == pc && pb == pd) options[e].push_back({f, false});
        if (a == d && b == c && pa == pd && pb == pc) options[e].push_back({f, true});
      }
    }
    std::vector<char> used(ne, 0);
    Relabeling cur;
    cur.vertex = sigma;
    cur.half_edge.assign(G.num_half_edges(), -1);
    for (int i = 0; i < n; ++i) cur.half_edge[i] = i;
    std::function<void(int)> rec = [&](int e) {
      if (e == ne) {
        out.push_back(cur);
        return;
      }
      for (const auto& ch : options[e]) {
        if (used[ch.target]) continue;
        used[ch.target] = 1;
        const int h0 = n + 2 * e, t0 = n + 2 * ch.target;
        cur.half_edge[h0] = ch.flip ? t0 + 1 : t0;
        cur.half_edge[h0 + 1] = ch.flip ? t0 : t0 + 1;
        rec(e + 1);
        used[ch.target] = 0;
      }
    };
    rec(0);
  });
  return out;
}

}  // namespace

std::vector<Relabeling> automorphisms(const StableGraph& g) { return automorphisms_impl(DecoratedStratum::bare(g)); }

std::int64_t automorphism_count(const StableGraph& g) {
  return static_cast<std::int64_t>(automorphisms_impl(DecoratedStratum::bare(g)).size());
}

std::int64_t automorphism_count(const DecoratedStratum& s) {
  return static_cast<std::int64_t>(automorphisms_impl(s).size());
}

std::string serialize(const StableGraph& g) {
  std::ostringstream os;
  os << "V[";
  for (int v = 0; v < g.num_vertices(); ++v) os << (v ? "," : "") << g.vertex_genus[v];
  os << "] L[";
  for (int i = 0; i < g.num_legs(); ++i) os << (i ? "," : "") << g.leg_vertex[i];
  os << "] E[";
  for (int e = 0; e < g.num_edges(); ++e) os << (e ? "," : "") << "(" << g.edges[e][0] << "," << g.edges[e][1] << ")";
  os << "]";
  return os.str();
}

std::string serialize(const DecoratedStratum& s) {
  std::ostringstream os;
  os << serialize(s.graph);
  if (s.is_undecorated()) return os.str();
  os << " psi[";
  for (std::size_t h = 0; h < s.psi.size(); ++h) os << (h ? "," : "") << s.psi[h];
  os << "] kappa[";
  for (std::size_t v = 0; v < s.kappa.size(); ++v) {
    os << (v ? ";" : "");
    for (std::size_t j = 0; j < s.kappa[v].size(); ++j) os << (j ? "," : "") << s.kappa[v][j];
  }
  os << "]";
  return os.str();
}

std::string encode(const DecoratedStratum& s) {
  std::string out;
  const auto& G = s.graph;
  auto put = [&](int x) { out.push_back(static_cast<char>(x + 64)); };
  put(G.num_vertices());
  put(G.num_legs());
  put(G.num_edges());
  for (int v = 0; v < G.num_vertices(); ++v) {
    put(G.vertex_genus[v]);
    put(static_cast<int>(s.kappa[v].size()));
    for (int k : s.kappa[v]) put(k);
  }
  for (int v : G.leg_vertex) put(v);
  for (const auto& e : G.edges) {
    put(e[0]);
    put(e[1]);
  }
  for (int p : s.psi) put(p);
  return out;
}

}  // namespace taut
