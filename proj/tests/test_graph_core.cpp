#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "taut/graph_enum.hpp"
#include "taut/star_tree.hpp"

using namespace taut;

namespace {

/// Independent count of PSSRT_{g,n,m}: every map from legs to leaf labels and
/// every genus vector, filtered by the star-tree predicates, deduplicated by
/// canonical form.
std::size_t brute_force_pssrt(int g, int n, int m) {
  std::set<std::string> seen;
  std::vector<int> label(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      std::vector<int> used(label);
      std::sort(used.begin(), used.end());
      used.erase(std::unique(used.begin(), used.end()), used.end());
      const int k = static_cast<int>(used.size());
      std::vector<int> genus(k + 1, 0);
      std::function<void(int, int)> gen = [&](int v, int left) {
        if (v == k) {
          genus[k] = left;
          StableGraph G;
          G.vertex_genus = genus;  // root last
          std::rotate(G.vertex_genus.begin(), G.vertex_genus.end() - 1, G.vertex_genus.end());
          G.leg_vertex.assign(n + m, 0);
          for (int j = 0; j < n; ++j)
            G.leg_vertex[j] = 1 + static_cast<int>(std::lower_bound(used.begin(), used.end(), label[j]) - used.begin());
          for (int e = 0; e < k; ++e) G.edges.push_back({0, e + 1});
          if (star_tree_violations(G, 0, g, n, m).empty()) seen.insert(serialize(canonical_form(G)));
          return;
        }
        for (int x = 0; x <= left; ++x) {
          genus[v] = x;
          gen(v + 1, left - x);
        }
      };
      gen(0, g);
      return;
    }
    for (int l = 0; l < n; ++l) {
      label[i] = l;
      rec(i + 1);
    }
  };
  rec(0);
  return seen.size();
}

StableGraph random_relabel(const StableGraph& G, std::mt19937& rng) {
  const int nv = G.num_vertices();
  std::vector<int> perm(nv);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  StableGraph H;
  H.vertex_genus.resize(nv);
  for (int v = 0; v < nv; ++v) H.vertex_genus[perm[v]] = G.vertex_genus[v];
  for (int v : G.leg_vertex) H.leg_vertex.push_back(perm[v]);
  for (const auto& e : G.edges) {
    std::array<int, 2> f{perm[e[0]], perm[e[1]]};
    if (rng() & 1u) std::swap(f[0], f[1]);
    H.edges.push_back(f);
  }
  std::shuffle(H.edges.begin(), H.edges.end(), rng);
  return H;
}

}  // namespace

TEST_CASE("PSSRT examples") {
  CHECK(enumerate_pssrt(0, 2, 1).size() == 2);
  CHECK(enumerate_pssrt(1, 1, 1).size() == 2);
  CHECK(enumerate_pssrt(0, 3, 1).size() == 5);
  auto t = enumerate_pssrt(0, 2, 1);
  CHECK(t[0].blocks == std::vector<std::vector<int>>{{1, 2}});
  CHECK(t[1].blocks == std::vector<std::vector<int>>{{1}, {2}});
  CHECK_THROWS_AS(enumerate_pssrt(0, 1, 1), std::domain_error);
  CHECK_THROWS_AS(enumerate_pssrt(0, 0, 3), std::domain_error);
  CHECK_THROWS_AS(enumerate_pssrt(-1, 2, 2), std::domain_error);
}

TEST_CASE("PSSRT brute force and closed form agree") {
  for (int g = 0; g <= 3; ++g)
    for (int n = 1; n <= 5; ++n)
      for (int m = 1; m <= 3; ++m) {
        if (2 * g - 2 + n + m <= 0) continue;
        const auto trees = enumerate_pssrt(g, n, m);
        CAPTURE(g);
        CAPTURE(n);
        CAPTURE(m);
        CHECK(static_cast<long>(trees.size()) == pssrt_count_formula(g, n));
        if (n <= 4) CHECK(trees.size() == brute_force_pssrt(g, n, m));
        std::set<std::string> keys;
        for (const auto& T : trees) {
          CHECK(star_tree_violations(T.graph(), 0, g, n, m).empty());
          keys.insert(T.serialize());
          // a(e) is the leg sum of its block.
          for (int e = 0; e < T.num_edges(); ++e) CHECK(T.edge_part(e).total_degree() == 1);
        }
        CHECK(keys.size() == trees.size());
      }
}

TEST_CASE("star-tree predicates flag each violation") {
  StableGraph G;  // leg 1 on the root
  G.vertex_genus = {0, 0};
  G.leg_vertex = {0, 1, 0};
  G.edges = {{0, 1}};
  CHECK(!star_tree_violations(G, 0, 0, 2, 1).empty());
  StableGraph L = StableGraph::trivial(0, 3);  // loop: not a tree
  L.vertex_genus = {0};
  L.edges = {{0, 0}};
  CHECK(!star_tree_violations(L, 0, 1, 2, 1).empty());
}

TEST_CASE("canonical form examples") {
  StableGraph rigid = StableGraph::trivial(1, 2);
  CHECK(canonical_form(rigid) == rigid);

  StableGraph a;
  a.vertex_genus = {1, 0};
  a.leg_vertex = {1, 1};
  a.edges = {{0, 1}};
  StableGraph b;
  b.vertex_genus = {0, 1};
  b.leg_vertex = {0, 0};
  b.edges = {{1, 0}};
  CHECK(canonical_form(a) == canonical_form(b));
  CHECK(canonical_form(canonical_form(a)) == canonical_form(a));

  for (const auto& T : enumerate_pssrt(0, 4, 1)) {
    StableGraph G = T.graph();
    std::mt19937 rng(5);
    CHECK(canonical_form(random_relabel(G, rng)) == canonical_form(G));
  }
  StableGraph disc;
  disc.vertex_genus = {0, 0};
  disc.leg_vertex = {0, 0, 0, 1, 1, 1};
  CHECK_THROWS_AS(canonical_form(disc), std::invalid_argument);
}

TEST_CASE("canonical form is invariant under random relabelings") {
  std::mt19937 rng(2024);
  std::vector<const std::vector<StableGraph>*> pools{&stable_graphs(0, 6), &stable_graphs(1, 3), &stable_graphs(2, 1),
                                                     &stable_graphs(2, 2)};
  int cases = 0;
  for (int t = 0; t < 1200; ++t) {
    const auto& pool = *pools[t % pools.size()];
    const auto& G = pool[rng() % pool.size()];
    StableGraph H = random_relabel(G, rng);
    CHECK(canonical_form(H) == G);
    ++cases;
  }
  CHECK(cases >= 1000);
}

TEST_CASE("automorphism counts") {
  for (const auto& T : enumerate_pssrt(1, 3, 2)) CHECK(automorphism_count(T.graph()) == 1);
  StableGraph legs_one_side;  // equal genera, double edge, legs on vertex 0
  legs_one_side.vertex_genus = {1, 1};
  legs_one_side.leg_vertex = {0};
  legs_one_side.edges = {{0, 1}, {0, 1}};
  CHECK(automorphism_count(legs_one_side) == 2);
  StableGraph banana;
  banana.vertex_genus = {0, 0};
  banana.leg_vertex = {0, 1};
  banana.edges = {{0, 1}, {0, 1}};
  CHECK(automorphism_count(banana) == 2);
  StableGraph loop;
  loop.vertex_genus = {0};
  loop.leg_vertex = {0};
  loop.edges = {{0, 0}};
  CHECK(automorphism_count(loop) == 2);
  StableGraph two_loops;
  two_loops.vertex_genus = {0};
  two_loops.leg_vertex = {0};
  two_loops.edges = {{0, 0}, {0, 0}};
  CHECK(automorphism_count(two_loops) == 8);
}

TEST_CASE("stable graph counts") {
  CHECK(stable_graphs(0, 3).size() == 1);
  CHECK(stable_graphs(0, 4).size() == 4);
  CHECK(stable_graphs(1, 1).size() == 2);
  CHECK(stable_graphs(1, 2).size() == 5);
  CHECK(stable_graphs(2, 0).size() == 7);
  CHECK_THROWS_AS(stable_graphs(0, 2), std::domain_error);
}

TEST_CASE("enumerate_strata examples") {
  CHECK(enumerate_strata(0, 3, 0).size() == 1);
  CHECK(enumerate_strata(0, 4, 1).size() == 8);
  CHECK(enumerate_strata(1, 1, 1).size() == 3);
  for (const auto& s : enumerate_strata(1, 2, 2)) CHECK(s.degree() == 2);
  CHECK_THROWS_AS(enumerate_strata(0, 4, 2), std::domain_error);
}

TEST_CASE("serialisation is byte-stable") {
  const auto& G = stable_graphs(1, 2)[1];
  CHECK(serialize(G) == serialize(canonical_form(G)));
  StableGraph s;
  s.vertex_genus = {0, 1};
  s.leg_vertex = {0, 0, 1};
  s.edges = {{0, 1}};
  CHECK(serialize(s) == "V[0,1] L[0,0,1] E[(0,1)]");
}
