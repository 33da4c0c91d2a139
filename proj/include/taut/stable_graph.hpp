#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace taut {

/// Dual graph of a nodal curve with N legs.
///
/// Half-edges have a fixed layout: leg i (marking i+1) is half-edge i, and
/// edge k consists of half-edges N+2k (at edges[k][0]) and N+2k+1 (at
/// edges[k][1]). Loops have both endpoints equal.
struct StableGraph {
  std::vector<int> vertex_genus;
  std::vector<int> leg_vertex;
  std::vector<std::array<int, 2>> edges;

  [[nodiscard]] int num_vertices() const { return static_cast<int>(vertex_genus.size()); }
  [[nodiscard]] int num_legs() const { return static_cast<int>(leg_vertex.size()); }
  [[nodiscard]] int num_edges() const { return static_cast<int>(edges.size()); }
  [[nodiscard]] int num_half_edges() const { return num_legs() + 2 * num_edges(); }

  [[nodiscard]] int half_edge_vertex(int h) const;
  /// The other half of an edge, or -1 for a leg.
  [[nodiscard]] int partner(int h) const;
  [[nodiscard]] bool is_leg(int h) const { return h < num_legs(); }

  /// Half-edges at v in increasing index order.
  [[nodiscard]] std::vector<int> half_edges_at(int v) const;
  [[nodiscard]] int valence(int v) const;

  /// Sum of vertex genera plus the first Betti number.
  [[nodiscard]] int genus() const;
  [[nodiscard]] bool is_connected() const;
  /// 2g(v) - 2 + n(v) > 0 at every vertex.
  [[nodiscard]] bool is_stable() const;

  /// Single vertex of genus g carrying all N legs.
  static StableGraph trivial(int g, int n);

  friend auto operator<=>(const StableGraph&, const StableGraph&) = default;
  friend bool operator==(const StableGraph&, const StableGraph&) = default;
};

/// Dimension 3g - 3 + n of the moduli space of stable curves.
constexpr int moduli_dimension(int g, int n) { return 3 * g - 3 + n; }
constexpr bool is_stable_type(int g, int n) { return 2 * g - 2 + n > 0; }

/// A boundary stratum together with a psi exponent on every half-edge and a
/// kappa monomial (sorted positive indices) at every vertex. Represents the
/// class xi_{Gamma*}(decoration) without any automorphism normalisation.
struct DecoratedStratum {
  StableGraph graph;
  std::vector<int> psi;
  std::vector<std::vector<int>> kappa;

  static DecoratedStratum bare(StableGraph g);

  /// #edges + sum psi + sum kappa indices.
  [[nodiscard]] int degree() const;
  /// Decoration degree at vertex v (psi at its half-edges plus kappa).
  [[nodiscard]] int vertex_degree(int v) const;
  [[nodiscard]] bool is_undecorated() const;

  friend auto operator<=>(const DecoratedStratum&, const DecoratedStratum&) = default;
  friend bool operator==(const DecoratedStratum&, const DecoratedStratum&) = default;
};

/// Old-index to new-index maps produced by canonicalisation.
struct Relabeling {
  std::vector<int> vertex;
  std::vector<int> half_edge;
};

struct CanonicalResult {
  DecoratedStratum form;
  Relabeling map;  // input labels -> canonical labels
};

/// Canonical representative of the isomorphism class of a connected decorated
/// graph (legs are fixed pointwise). Isomorphic inputs give identical forms.
/// Throws std::invalid_argument on disconnected input.
CanonicalResult canonicalize(const DecoratedStratum& s);

/// Canonical form of an undecorated graph.
StableGraph canonical_form(const StableGraph& g);

/// Order of the automorphism group fixing legs pointwise (and respecting any
/// decorations).
std::int64_t automorphism_count(const StableGraph& g);
std::int64_t automorphism_count(const DecoratedStratum& s);

/// All automorphisms of a graph as half-edge permutations (plus the induced
/// vertex permutation), identity included.
std::vector<Relabeling> automorphisms(const StableGraph& g);

/// Byte-stable textual form, e.g. "V[0,1] L[0,0,1] E[(0,1)]". Used as cache
/// keys and in reports; apply to canonical forms for isomorphism invariance.
std::string serialize(const StableGraph& g);
std::string serialize(const DecoratedStratum& s);

/// Compact integer encoding of a canonical stratum, used for hashing.
std::string encode(const DecoratedStratum& s);

}  // namespace taut
