#pragma once

#include <vector>

#include "taut/stable_graph.hpp"

namespace taut {

/// Every stable graph of M_{g,n}-bar (all codimensions), in canonical form,
/// ordered by edge count and then by encoding. Memoised per (g, n).
/// Throws std::domain_error for unstable (g, n).
const std::vector<StableGraph>& stable_graphs(int g, int n);

/// A spanning set of R^d(M_{g,n}-bar): every stable graph with at most d
/// edges, decorated by all psi/kappa monomials that fill degree d without
/// exceeding any vertex dimension. Canonical, duplicate-free, deterministic.
/// Not a basis.
std::vector<DecoratedStratum> enumerate_strata(int g, int n, int d);

}  // namespace taut
