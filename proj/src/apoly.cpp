#include "taut/apoly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace taut {

APoly APoly::constant(int num_vars, const Rational& c) {
  APoly p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

APoly APoly::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) throw std::out_of_range("APoly::variable index");
  APoly p(num_vars);
  Exponents e(num_vars, 0);
  e[index] = 1;
  p.add_term(e, Rational(1));
  return p;
}

int APoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

Rational APoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void APoly::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != n_) throw std::invalid_argument("APoly: exponent length mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational APoly::evaluate(std::span<const long> point) const {
  if (static_cast<int>(point.size()) != n_) throw std::invalid_argument("APoly::evaluate: point length mismatch");
  Rational total;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < n_; ++i)
      if (e[i] != 0) t *= pow(Rational(point[i]), e[i]);
    total += t;
  }
  return total;
}

std::string APoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Constant term first, then increasing total degree.
  std::vector<std::pair<Exponents, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    return std::accumulate(x.first.begin(), x.first.end(), 0) < std::accumulate(y.first.begin(), y.first.end(), 0);
  });
  for (const auto& [e, c] : sorted) {
    bool is_const = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == Rational(1);
    if (!unit || is_const) os << mag.str();
    bool need_star = !unit;
    for (int i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << "a" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

APoly& APoly::operator+=(const APoly& o) {
  if (o.n_ != n_) throw std::invalid_argument("APoly: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

APoly& APoly::operator-=(const APoly& o) {
  if (o.n_ != n_) throw std::invalid_argument("APoly: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

APoly& APoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

APoly operator*(const APoly& a, const APoly& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("APoly: variable count mismatch");
  APoly out(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea);
      for (int i = 0; i < a.n_; ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

namespace {

void monomials_up_to(int n, int degree, std::vector<Exponents>& out) {
  Exponents cur(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[i] = k;
      rec(i + 1, left - k);
    }
    cur[i] = 0;
  };
  rec(0, degree);
}

}  // namespace

APoly poly_interpolate(std::span<const Sample> samples, int degree_bound) {
  if (degree_bound < 0) throw std::invalid_argument("poly_interpolate: negative degree bound");
  if (samples.empty()) throw std::invalid_argument("poly_interpolate: no samples");
  const int n = static_cast<int>(samples.front().point.size());
  for (const auto& s : samples)
    if (static_cast<int>(s.point.size()) != n)
      throw std::invalid_argument("poly_interpolate: sample points have differing dimensions");

  for (int i = 0; i < n; ++i) {
    std::set<long> distinct;
    for (const auto& s : samples) distinct.insert(s.point[i]);
    if (static_cast<int>(distinct.size()) < degree_bound + 1)
      throw std::invalid_argument("poly_interpolate: insufficient samples along a" + std::to_string(i + 1) +
                                  ": need " + std::to_string(degree_bound + 1) + " distinct values, have " +
                                  std::to_string(distinct.size()));
  }

  std::vector<Exponents> monos;
  monomials_up_to(n, degree_bound, monos);
  const std::size_t cols = monos.size();
  if (samples.size() < cols)
    throw std::invalid_argument("poly_interpolate: " + std::to_string(samples.size()) +
                                " samples cannot determine " + std::to_string(cols) + " coefficients");

  std::vector<std::vector<Rational>> m(samples.size(), std::vector<Rational>(cols + 1));
  for (std::size_t r = 0; r < samples.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      Rational v(1);
      for (int i = 0; i < n; ++i)
        if (monos[c][i]) v *= pow(Rational(samples[r].point[i]), monos[c][i]);
      m[r][c] = v;
    }
    m[r][cols] = samples[r].value;
  }

  std::size_t row = 0;
  std::vector<std::size_t> pivot_row(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size())
      throw std::invalid_argument("poly_interpolate: samples are not unisolvent for total degree " +
                                  std::to_string(degree_bound));
    std::swap(m[p], m[row]);
    Rational inv = Rational(1) / m[row][c];
    for (std::size_t k = c; k <= cols; ++k) m[row][k] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c].is_zero()) continue;
      Rational f = m[r][c];
      for (std::size_t k = c; k <= cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivot_row[c] = row++;
  }
  for (std::size_t r = row; r < m.size(); ++r)
    if (!m[r][cols].is_zero())
      throw std::invalid_argument("poly_interpolate: samples are inconsistent with total degree " +
                                  std::to_string(degree_bound));

  APoly out(n);
  for (std::size_t c = 0; c < cols; ++c) out.add_term(monos[c], m[pivot_row[c]][cols]);
  return out;
}

std::vector<std::vector<long>> simplex_grid(int num_vars, int degree) {
  std::vector<Exponents> ks;
  monomials_up_to(num_vars, degree, ks);
  std::vector<std::vector<long>> pts;
  pts.reserve(ks.size());
  for (const auto& k : ks) {
    std::vector<long> p(k.begin(), k.end());
    for (auto& x : p) x += 1;
    pts.push_back(std::move(p));
  }
  return pts;
}

namespace {

/// In-place forward differences: on return values[k] = (Delta^k f)(origin).
std::vector<Rational> forward_differences(int n, int degree, std::span<const Rational> values) {
  std::vector<Exponents> ks;
  monomials_up_to(n, degree, ks);
  if (values.size() != ks.size())
    throw std::invalid_argument("simplex interpolation: expected " + std::to_string(ks.size()) + " values, got " +
                                std::to_string(values.size()));
  std::map<Exponents, std::size_t> index;
  for (std::size_t i = 0; i < ks.size(); ++i) index[ks[i]] = i;
  std::vector<Rational> f(values.begin(), values.end());
  // Order points by decreasing k_i so that each level uses not-yet-updated neighbours.
  for (int dir = 0; dir < n; ++dir) {
    std::vector<std::size_t> order(ks.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ks[x][dir] > ks[y][dir]; });
    for (int level = 1; level <= degree; ++level) {
      for (std::size_t idx : order) {
        if (ks[idx][dir] < level) continue;
        Exponents prev = ks[idx];
        --prev[dir];
        f[idx] -= f[index.at(prev)];
      }
    }
  }
  return f;
}

}  // namespace

APoly interpolate_on_simplex(int num_vars, int degree, std::span<const Rational> values) {
  std::vector<Rational> diffs = forward_differences(num_vars, degree, values);
  std::vector<Exponents> ks;
  monomials_up_to(num_vars, degree, ks);

  // binom_poly[k] = C(x - 1, k) as a univariate polynomial in x (coefficient list).
  std::vector<std::vector<Rational>> binom_poly(degree + 1);
  binom_poly[0] = {Rational(1)};
  for (int k = 1; k <= degree; ++k) {
    // C(x-1, k) = C(x-1, k-1) * (x - k) / k
    const auto& prev = binom_poly[k - 1];
    std::vector<Rational> cur(prev.size() + 1);
    for (std::size_t j = 0; j < prev.size(); ++j) {
      cur[j + 1] += prev[j] / Rational(k);
      cur[j] -= prev[j];
    }
    binom_poly[k] = std::move(cur);
  }

  APoly out(num_vars);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (diffs[i].is_zero()) continue;
    APoly term = APoly::constant(num_vars, diffs[i]);
    for (int v = 0; v < num_vars; ++v) {
      if (ks[i][v] == 0) continue;
      APoly factor(num_vars);
      const auto& bp = binom_poly[ks[i][v]];
      for (std::size_t j = 0; j < bp.size(); ++j) {
        Exponents e(num_vars, 0);
        e[v] = static_cast<int>(j);
        factor.add_term(e, bp[j]);
      }
      term = term * factor;
    }
    out += term;
  }
  return out;
}

int simplex_interpolant_degree(int num_vars, int degree, std::span<const Rational> values) {
  std::vector<Rational> diffs = forward_differences(num_vars, degree, values);
  std::vector<Exponents> ks;
  monomials_up_to(num_vars, degree, ks);
  int d = -1;
  for (std::size_t i = 0; i < ks.size(); ++i)
    if (!diffs[i].is_zero()) d = std::max(d, std::accumulate(ks[i].begin(), ks[i].end(), 0));
  return d;
}

}  // namespace taut
