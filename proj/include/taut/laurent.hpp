#pragma once

#include <map>
#include <utility>

#include "taut/rational.hpp"

namespace taut {

/// Laurent polynomial in the equivariant variable u with coefficients of type
/// C (Rational, APoly, TautClass, ...). C must provide is_zero(), +=, and
/// scaling by a Rational through `C * Rational`. Zero coefficients are dropped
/// eagerly, so an empty map is the zero element.
template <class C>
class ULaurent {
 public:
  ULaurent() = default;

  /// c * u^k.
  static ULaurent monomial(int k, C c) {
    ULaurent out;
    out.add(k, std::move(c));
    return out;
  }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const std::map<int, C>& terms() const { return terms_; }
  [[nodiscard]] int min_exponent() const { return terms_.begin()->first; }
  [[nodiscard]] int max_exponent() const { return terms_.rbegin()->first; }

  [[nodiscard]] const C* coefficient(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? nullptr : &it->second;
  }

  void add(int k, const C& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  ULaurent& operator+=(const ULaurent& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }

  ULaurent& operator-=(const ULaurent& o) {
    for (const auto& [k, c] : o.terms_) add(k, c * Rational(-1));
    return *this;
  }

  ULaurent& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c = c * s;
    return *this;
  }

  friend ULaurent operator+(ULaurent a, const ULaurent& b) { return a += b; }
  friend ULaurent operator-(ULaurent a, const ULaurent& b) { return a -= b; }
  friend ULaurent operator*(ULaurent a, const Rational& s) { return a *= s; }

  /// Multiplication by u^k.
  [[nodiscard]] ULaurent shifted(int k) const {
    ULaurent out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
    return out;
  }

  /// Product using a caller-supplied coefficient product (needed when the
  /// coefficient ring carries context, e.g. an ambient moduli space).
  template <class Mul>
  [[nodiscard]] ULaurent times(const ULaurent& o, Mul&& mul) const {
    ULaurent out;
    for (const auto& [i, a] : terms_)
      for (const auto& [j, b] : o.terms_) out.add(i + j, mul(a, b));
    return out;
  }

  friend bool operator==(const ULaurent& a, const ULaurent& b) { return a.terms_ == b.terms_; }

 private:
  std::map<int, C> terms_;
};

/// The sub-sum of strictly negative u-exponents.
template <class C>
ULaurent<C> laurent_negative_part(const ULaurent<C>& x) {
  ULaurent<C> out;
  for (const auto& [k, c] : x.terms()) {
    if (k >= 0) break;
    out.add(k, c);
  }
  return out;
}

/// Substitution u -> -u: the coefficient of u^k picks up (-1)^k.
template <class C>
ULaurent<C> laurent_flip_u(const ULaurent<C>& x) {
  ULaurent<C> out;
  for (const auto& [k, c] : x.terms()) out.add(k, (k % 2 == 0) ? c : c * Rational(-1));
  return out;
}

}  // namespace taut
