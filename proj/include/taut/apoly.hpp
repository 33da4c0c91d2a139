#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "taut/rational.hpp"

namespace taut {

/// Exponent vector of a monomial a_1^{e_1} ... a_n^{e_n}.
using Exponents = std::vector<int>;

/// Sparse multivariate polynomial over Q in the ramification variables
/// a_1..a_n. Zero coefficients are never stored.
class APoly {
 public:
  explicit APoly(int num_vars = 0) : n_(num_vars) {}

  static APoly constant(int num_vars, const Rational& c);
  /// The variable a_{index+1} (index is zero-based).
  static APoly variable(int num_vars, int index);

  [[nodiscard]] int num_vars() const { return n_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const std::map<Exponents, Rational>& terms() const { return terms_; }
  [[nodiscard]] int total_degree() const;  // -1 for the zero polynomial
  [[nodiscard]] Rational coefficient(const Exponents& e) const;

  void add_term(const Exponents& e, const Rational& c);

  [[nodiscard]] Rational evaluate(std::span<const long> point) const;
  [[nodiscard]] std::string str() const;

  APoly& operator+=(const APoly& o);
  APoly& operator-=(const APoly& o);
  APoly& operator*=(const Rational& c);
  friend APoly operator+(APoly a, const APoly& b) { return a += b; }
  friend APoly operator-(APoly a, const APoly& b) { return a -= b; }
  friend APoly operator*(APoly a, const Rational& c) { return a *= c; }
  friend APoly operator*(const APoly& a, const APoly& b);
  friend APoly operator-(APoly a) { return a *= Rational(-1); }
  friend bool operator==(const APoly& a, const APoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  int n_;
  std::map<Exponents, Rational> terms_;
};

/// One interpolation sample: an integer point and the value there.
struct Sample {
  std::vector<long> point;
  Rational value;
};

/// Returns the unique polynomial of total degree <= degree_bound through all
/// samples. Throws std::invalid_argument when the samples cannot determine it
/// (the message names the deficient variable when one is identifiable) or are
/// inconsistent with any such polynomial.
APoly poly_interpolate(std::span<const Sample> samples, int degree_bound);

/// Points {1 + k : k in N^n, |k| <= degree} in a fixed lexicographic order.
/// This set is unisolvent for total degree `degree`.
std::vector<std::vector<long>> simplex_grid(int num_vars, int degree);

/// Newton forward-difference interpolation on simplex_grid(num_vars, degree).
/// `values` follow the grid order. Much cheaper than the general solver.
APoly interpolate_on_simplex(int num_vars, int degree, std::span<const Rational> values);

/// Largest |k| with a nonzero k-th forward difference at the grid origin, i.e.
/// the total degree of the simplex interpolant, without expanding it.
int simplex_interpolant_degree(int num_vars, int degree, std::span<const Rational> values);

}  // namespace taut
