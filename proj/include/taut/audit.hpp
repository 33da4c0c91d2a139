#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "taut/rational.hpp"
#include "taut/star_tree.hpp"

namespace taut {

/// Commuting formal symbols of the localization bookkeeping.
enum class SymKind : int {
  U,          // u
  A,          // a(e)
  Fact,       // a(e)!, opaque
  PowSelf,    // a(e)^{a(e)}, opaque
  UPowA,      // u^{a(e)}, opaque
  PsiRoot,    // psi of edge e at the root
  PsiLeaf,    // psi of edge e at leaf e
  Lambda,     // lambda_i at vertex v (v = 0 root, e + 1 leaf e)
  DR,         // DR cycle of leaf e
};

struct Symbol {
  SymKind kind;
  int a = 0;  // edge or vertex
  int b = 0;  // lambda index
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// Cohomological degree of one power of a symbol (0 for scalar atoms).
int symbol_degree(const Symbol& s, const StarTree& T);

using Monomial = std::map<Symbol, int>;

/// Polynomial in the formal symbols with rational coefficients and integer
/// (possibly negative) exponents. Terms of cohomological degree above `cap`
/// are dropped.
class FormalExpr {
 public:
  FormalExpr() = default;
  FormalExpr(const StarTree* T, int cap) : T_(T), cap_(cap) {}

  static FormalExpr scalar(const StarTree* T, int cap, const Rational& c);
  static FormalExpr symbol(const StarTree* T, int cap, Symbol s, int power = 1, const Rational& c = Rational(1));

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const std::map<Monomial, Rational>& terms() const { return terms_; }
  [[nodiscard]] int cap() const { return cap_; }

  void add(const Monomial& m, const Rational& c);
  FormalExpr& operator+=(const FormalExpr& o);
  FormalExpr& operator*=(const Rational& c);
  friend FormalExpr operator*(const FormalExpr& x, const FormalExpr& y);
  friend bool operator==(const FormalExpr& x, const FormalExpr& y) { return x.terms_ == y.terms_; }

  /// u -> -u on explicit powers of u (requires no opaque u^{a(e)} atoms).
  [[nodiscard]] FormalExpr flip_u() const;
  /// Applies lambda_l^2 -> -2 (-1)^l sum_{i<l} (-1)^i lambda_i lambda_{2l-i}
  /// at every vertex (lambda_0 = 1, lambda_i = 0 above the vertex genus)
  /// until no lambda appears squared.
  [[nodiscard]] FormalExpr mumford_reduce() const;
  /// Sum of c * prod over the degree-d part of sum_k (x)^k, for a degree-1
  /// nilpotent-by-truncation x: 1/(1 - x) truncated at the cap.
  [[nodiscard]] static FormalExpr geometric(const FormalExpr& x);

  [[nodiscard]] std::string str() const;

 private:
  const StarTree* T_ = nullptr;
  int cap_ = 0;
  std::map<Monomial, Rational> terms_;
};

/// First localization factor of the tree, assembled literally.
FormalExpr alpha1(const StarTree& T);
/// Second localization factor of the tree.
FormalExpr alpha2(const StarTree& T);
/// The Xi(T) integrand built from XiConventions, with u replaced by -u.
FormalExpr xi_integrand_flipped(const StarTree& T);

struct AuditResult {
  bool pass = false;
  bool mumford_used = false;   // the rewrite changed something
  bool edge_degrees_unique = false;
  std::string product;         // alpha1 * alpha2 after reduction
  std::string expected;        // flipped integrand
};

/// alpha1 * alpha2, reduced with Mumford's relation, against the flipped
/// integrand, truncated at degree 3g-3+n+m.
AuditResult audit_tree(const StarTree& T);

/// True when the per-vertex balancing equations for edge degrees of the tree
/// have the unique solution d(e) = a(e) (checked with symbolic right-hand
/// sides in a_1..a_n).
bool edge_degrees_unique(const StarTree& T);

}  // namespace taut
