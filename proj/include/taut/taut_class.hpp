#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "taut/rational.hpp"
#include "taut/stable_graph.hpp"

namespace taut {

/// Index of an interned canonical decorated stratum.
using StratumId = std::int32_t;

/// Process-wide table of canonical decorated strata. Interning is idempotent
/// and safe under concurrent callers; ids are never reused.
class StratumRegistry {
 public:
  static StratumRegistry& instance();

  /// Canonicalises `s` and returns its id.
  StratumId intern(const DecoratedStratum& s);
  /// Interns a stratum that is already in canonical form.
  StratumId intern_canonical(const DecoratedStratum& s);

  [[nodiscard]] const DecoratedStratum& get(StratumId id) const;
  /// Cached degree of a stratum, with its genus and leg count.
  [[nodiscard]] int degree(StratumId id) const;
  [[nodiscard]] int genus(StratumId id) const;
  [[nodiscard]] int legs(StratumId id) const;
  [[nodiscard]] std::size_t size() const;

 private:
  StratumRegistry() = default;
  struct Impl;
  Impl& impl() const;
};

/// Formal rational combination of canonical decorated strata on M_{g,N}-bar.
///
/// Zero coefficients are dropped, and so is any stratum whose total degree
/// exceeds 3g-3+N or whose decoration at some vertex exceeds that vertex's
/// dimension (such classes vanish).
class TautClass {
 public:
  TautClass() = default;
  TautClass(int g, int n) : g_(g), n_(n) {}

  static TautClass fundamental(int g, int n);
  static TautClass from_stratum(const DecoratedStratum& s, const Rational& c = Rational(1));
  /// psi_i (1-based marking) to the given power.
  static TautClass psi(int g, int n, int marking, int power = 1);
  /// kappa_a on the trivial graph.
  static TautClass kappa(int g, int n, int a);

  [[nodiscard]] int genus() const { return g_; }
  [[nodiscard]] int markings() const { return n_; }
  [[nodiscard]] int dimension() const { return 3 * g_ - 3 + n_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const std::map<StratumId, Rational>& terms() const { return terms_; }
  [[nodiscard]] Rational coefficient(StratumId id) const;

  /// Adds c times stratum `id`, applying the truncation rule.
  void add(StratumId id, const Rational& c);
  void add(const DecoratedStratum& s, const Rational& c);

  /// Part of pure degree d.
  [[nodiscard]] TautClass degree_part(int d) const;
  /// Terms of degree <= d.
  [[nodiscard]] TautClass truncated(int d) const;
  /// Largest degree present, -1 for zero.
  [[nodiscard]] int max_degree() const;
  [[nodiscard]] bool is_homogeneous(int d) const;

  TautClass& operator+=(const TautClass& o);
  TautClass& operator-=(const TautClass& o);
  TautClass& operator*=(const Rational& c);
  friend TautClass operator+(TautClass a, const TautClass& b) { return a += b; }
  friend TautClass operator-(TautClass a, const TautClass& b) { return a -= b; }
  friend TautClass operator*(TautClass a, const Rational& c) { return a *= c; }
  friend bool operator==(const TautClass& a, const TautClass& b);

  /// Deterministic listing "c * <stratum>" sorted by serialised stratum, one
  /// term per line; "0" for the zero class.
  [[nodiscard]] std::string str() const;
  /// (serialised stratum, coefficient) pairs, sorted by the string.
  [[nodiscard]] std::vector<std::pair<std::string, Rational>> sorted_terms() const;

 private:
  void check_ambient(const TautClass& o) const;
  int g_ = 0, n_ = 0;
  std::map<StratumId, Rational> terms_;
};

/// True when s may be nonzero: degree within the ambient dimension and each
/// vertex decoration within its vertex dimension.
bool survives_truncation(const DecoratedStratum& s);

}  // namespace taut
