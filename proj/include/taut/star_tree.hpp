#pragma once

#include <span>
#include <string>
#include <vector>

#include "taut/apoly.hpp"
#include "taut/stable_graph.hpp"

namespace taut {

/// Pre-stable star rooted tree of genus g with legs 1..n on non-root
/// vertices and legs n+1..n+m on the root.
///
/// Edge e joins the root to leaf e; `blocks[e]` lists the (1-based) legs on
/// leaf e in increasing order. In graph(), the root is vertex 0, leaf e is
/// vertex e+1, and half-edge N+2e sits at the root.
struct StarTree {
  int g = 0, n = 0, m = 0;
  int root_genus = 0;
  std::vector<std::vector<int>> blocks;
  std::vector<int> leaf_genus;

  [[nodiscard]] int num_edges() const { return static_cast<int>(blocks.size()); }
  [[nodiscard]] int num_markings() const { return n + m; }
  [[nodiscard]] StableGraph graph() const;

  /// a(e) as a linear form in a_1..a_n.
  [[nodiscard]] APoly edge_part(int e) const;
  /// a(e) at an integer point.
  [[nodiscard]] long edge_part(int e, std::span<const long> a) const;

  /// The exceptional genus-0 root with one edge and one root leg.
  [[nodiscard]] bool root_unstable() const { return root_genus == 0 && num_edges() + m == 2; }
  /// A genus-0 leaf with a single leg.
  [[nodiscard]] bool leaf_unstable(int e) const { return leaf_genus[e] == 0 && blocks[e].size() == 1; }

  /// Serialisation of the canonical form of graph(), for reports.
  [[nodiscard]] std::string serialize() const;
};

/// All of PSSRT_{g,n,m}, duplicate-free, ordered by edge count, then by
/// block structure, then by genus assignment. Throws std::domain_error unless
/// g >= 0, n >= 1, m >= 1 and 2g - 2 + n + m > 0.
std::vector<StarTree> enumerate_pssrt(int g, int n, int m);

/// Closed form sum_k S(n, k) * C(g + k, k) for |PSSRT_{g,n,m}|.
long pssrt_count_formula(int g, int n);

/// Names of the star-tree conditions violated by (graph, root) as a
/// PSSRT_{g,n,m} element; empty when all hold. Checked independently of the
/// enumeration.
std::vector<std::string> star_tree_violations(const StableGraph& graph, int root, int g, int n, int m);

}  // namespace taut
