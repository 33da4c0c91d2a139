#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "taut/apoly.hpp"
#include "taut/laurent.hpp"
#include "taut/star_tree.hpp"
#include "taut/taut_class.hpp"

namespace taut {

/// Sign and grading conventions of the tree classes, shared with the formal
/// audit so that both sides read the same constants.
struct XiConventions {
  /// The root series is sum_d Psi_d / (root_u_sign * u)^d.
  static constexpr int root_u_sign = -1;
  /// The leaf series is sum_d D_d / (leaf_u_sign * u)^d.
  static constexpr int leaf_u_sign = +1;
  /// Global prefactor u^{2g-2+m}.
  static int prefactor_exponent(int g, int m) { return 2 * g - 2 + m; }
};

using UClass = ULaurent<TautClass>;

/// Series attached to one vertex of a tree. A contracted unstable vertex
/// carries `scalar * u^{scalar_u_exponent}` and no class.
struct VertexSeries {
  bool contracted = false;
  Rational scalar;
  int scalar_u_exponent = 0;
  UClass series;
};

/// Root series on M_{g(v_r), |E|+m}-bar. Throws std::invalid_argument when
/// some a(e) is zero or a has the wrong length.
VertexSeries root_class(const StarTree& T, std::span<const long> a);
/// Leaf series on M_{g(v_e), |block|+1}-bar.
VertexSeries leaf_class(const StarTree& T, int e, std::span<const long> a);

/// Xi(T) at an integer point a, truncated at the ambient dimension.
UClass xi_of_tree(const StarTree& T, std::span<const long> a);
/// Sum of xi_of_tree over PSSRT_{g,n,m}.
UClass xi_total(int g, int n, int m, std::span<const long> a);

/// Cohomological degree forced on the coefficient of u^k: 2g-2+m-k.
constexpr int xi_coefficient_degree(int g, int m, int k) { return 2 * g - 2 + m - k; }
/// True when every u^k coefficient of x is homogeneous of that degree.
bool xi_grading_consistent(int g, int m, const UClass& x);

/// Degree bound 3g-3+n+m on the a-dependence.
constexpr int xi_degree_bound(int g, int n, int m) { return 3 * g - 3 + n + m; }

/// Xi^m_{g,n} with coefficients interpolated to polynomials in a over the
/// simplex grid of the given degree: (u exponent, stratum) -> APoly.
struct XiPolynomial {
  int g = 0, n = 0, m = 0;
  int sample_degree = 0;
  std::map<int, std::map<StratumId, APoly>> coefficients;
  /// Largest total a-degree over all coefficients (-1 when zero).
  [[nodiscard]] int max_a_degree() const;
};
XiPolynomial xi_interpolate(int g, int n, int m, int sample_degree);

enum class GridKind { Simplex, Box };

struct CheckOptions {
  GridKind grid = GridKind::Simplex;
  int jobs = 1;
  bool degree_check = true;  // interpolate over the degree-(B+1) simplex
  bool audit = true;
};

/// Negative-u pairing polynomial that failed to vanish.
struct PairingRecord {
  int u_exponent = 0;
  std::string stratum;  // serialised spanning-set element
  APoly value;          // pairing as a polynomial in a
};

struct TreeRecord {
  std::string tree;
  int min_u = 0, max_u = 0;  // at a = (1,...,1); min > max when zero
  std::size_t terms = 0;
  bool audit_pass = true;
};

struct XiReport {
  int g = 0, n = 0, m = 0;
  int dimension = 0;
  std::string grid;
  std::size_t grid_points = 0;
  std::size_t trees = 0;
  std::vector<TreeRecord> tree_records;
  std::map<int, std::size_t> spanning_set_sizes;  // u exponent -> |spanning set|
  std::size_t pairings = 0;
  std::size_t nonzero_pairings = 0;
  std::vector<PairingRecord> failures;
  bool negative_part_zero = true;  // no negative-u terms at any grid point
  bool grading_ok = true;
  int degree_bound = 0;
  int max_a_degree = -1;
  bool degree_checked = false;
  bool degree_ok = true;
  std::size_t audited = 0, audit_passed = 0;
  bool pass = false;
  double seconds = 0.0;
  std::size_t pair_cache_hits = 0, pair_cache_misses = 0;
  [[nodiscard]] std::string verdict() const { return pass ? "pass" : "fail"; }
};

/// Pairs the negative-u part of Xi^m_{g,n} with a spanning set at every grid
/// point; pass iff every pairing is exactly zero (and, when enabled, the
/// degree bound and tree audits hold). Failures are recorded, not thrown.
XiReport polynomiality_check(int g, int n, int m, const CheckOptions& opts = {});

}  // namespace taut
