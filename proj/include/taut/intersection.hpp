#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "taut/rational.hpp"
#include "taut/star_tree.hpp"
#include "taut/taut_class.hpp"

namespace taut {

/// Product in the strata algebra: sum over generic (A,B)-structures with the
/// excess class prod(-psi_h - psi_h') on common edges. Truncated at the
/// ambient dimension. Throws std::invalid_argument on mismatched ambients.
TautClass multiply(const TautClass& x, const TautClass& y);

/// Integral over M_{g,N}-bar; only the top-degree part contributes.
Rational integrate(const TautClass& x);
/// Integral of one decorated stratum (0 unless its degree is the dimension).
Rational integrate_stratum(const DecoratedStratum& s);

/// Memoised integral of the product of two interned strata on the same space.
Rational pair_strata(StratumId x, StratumId y);
/// Integral of x times stratum y.
Rational pairing(const TautClass& x, StratumId y);

/// Pushes forward classes from the vertices of a stable graph G to
/// M_{g,N}-bar. `markings[v]` lists the half-edges of G at v in the order of
/// the markings of the class on M_{g(v),|H(v)|}-bar.
/// Throws std::invalid_argument when a class lives on the wrong space.
TautClass glue(const StableGraph& G, const std::vector<std::vector<int>>& markings,
               const std::vector<TautClass>& classes);

/// A vertex class of a star tree: a tautological class on a stable vertex, or
/// the formal scalar carried by a contracted unstable vertex.
using VertexClass = std::variant<TautClass, Rational>;

/// (b_T)_* with unstable vertices contracted. `classes[0]` is the root class
/// (markings: edges, then legs n+1..n+m); `classes[e+1]` is the class on leaf
/// e (markings: its legs, then the edge). Unstable vertices must carry a
/// Rational, stable ones a TautClass on the matching space.
TautClass boundary_pushforward(const StarTree& T, const std::vector<VertexClass>& classes);

struct IntersectionStats {
  std::size_t products = 0;       // generic gluings expanded
  std::size_t pair_hits = 0;      // memoised pairings reused
  std::size_t pair_misses = 0;
};
IntersectionStats intersection_stats();

}  // namespace taut
