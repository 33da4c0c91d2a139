#include "taut/psi_integrals.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>

namespace taut {

namespace {

using Key = std::pair<int, std::vector<int>>;

struct PsiMemo {
  std::shared_mutex mu;
  std::map<Key, Rational> table;
  std::atomic<std::size_t> hits{0}, misses{0};
};

PsiMemo& memo() {
  static PsiMemo m;
  return m;
}

Rational double_factorial_odd(int m) {  // (2m-1)!!, with (-1)!! = 1
  Rational r(1);
  for (int j = 2 * m - 1; j > 1; j -= 2) r *= Rational(j);
  return r;
}

Rational compute(int g, std::vector<int> d);

Rational lookup(int g, std::vector<int> d) {
  const int n = static_cast<int>(d.size());
  if (g < 0 || 2 * g - 2 + n <= 0) return Rational(0);
  for (int x : d)
    if (x < 0) return Rational(0);
  if (std::accumulate(d.begin(), d.end(), 0) != 3 * g - 3 + n) return Rational(0);
  std::sort(d.begin(), d.end());
  auto& M = memo();
  {
    std::shared_lock lock(M.mu);
    auto it = M.table.find({g, d});
    if (it != M.table.end()) {
      ++M.hits;
      return it->second;
    }
  }
  ++M.misses;
  Rational v = compute(g, d);
  std::unique_lock lock(M.mu);
  M.table.try_emplace({g, std::move(d)}, v);
  return v;
}

Rational compute(int g, std::vector<int> d) {
  const int n = static_cast<int>(d.size());
  if (g == 0 && n == 3) return Rational(1);
  if (g == 1 && n == 1) return Rational(1, 24);
  if (d.front() == 0) {
    std::vector<int> rest(d.begin() + 1, d.end());
    Rational s;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (rest[j] == 0) continue;
      auto r = rest;
      --r[j];
      s += lookup(g, r);
    }
    return s;
  }
  if (d.front() == 1) {
    std::vector<int> rest(d.begin() + 1, d.end());
    return Rational(2 * g - 2 + n - 1) * lookup(g, rest);
  }
  const int k = d.back() - 1;
  std::vector<int> rest(d.begin(), d.end() - 1);
  const int r_n = static_cast<int>(rest.size());
  Rational total;
  for (int j = 0; j < r_n; ++j) {
    auto r = rest;
    r[j] += k;
    total += double_factorial_odd(k + rest[j] + 1) / double_factorial_odd(rest[j]) * lookup(g, r);
  }
  Rational half(1, 2);
  for (int r = 0; r <= k - 1; ++r) {
    const int s = k - 1 - r;
    const Rational w = double_factorial_odd(r + 1) * double_factorial_odd(s + 1);
    auto x = rest;
    x.push_back(r);
    x.push_back(s);
    total += half * w * lookup(g - 1, x);
    for (unsigned mask = 0; mask < (1u << r_n); ++mask) {
      std::vector<int> left{r}, right{s};
      for (int j = 0; j < r_n; ++j) ((mask >> j) & 1u ? left : right).push_back(rest[j]);
      for (int g1 = 0; g1 <= g; ++g1) {
        Rational a = lookup(g1, left);
        if (a.is_zero()) continue;
        total += half * w * a * lookup(g - g1, right);
      }
    }
  }
  return total / double_factorial_odd(k + 2);
}

}  // namespace

Rational psi_integral(int g, std::span<const int> exponents) {
  const int n = static_cast<int>(exponents.size());
  if (g < 0 || n < 1 || !(2 * g - 2 + n > 0))
    throw std::domain_error("psi_integral: (g, N) = (" + std::to_string(g) + ", " + std::to_string(n) +
                            ") is not a stable type with N >= 1");
  int sum = 0;
  for (int x : exponents) {
    if (x < 0) throw std::domain_error("psi_integral: negative exponent");
    sum += x;
  }
  if (sum != 3 * g - 3 + n)
    throw std::domain_error("psi_integral: dimension mismatch, sum of exponents " + std::to_string(sum) +
                            " != 3g-3+N = " + std::to_string(3 * g - 3 + n));
  return lookup(g, std::vector<int>(exponents.begin(), exponents.end()));
}

Rational psi_kappa_integral(int g, std::span<const int> psi, std::span<const int> kappa) {
  const int n = static_cast<int>(psi.size());
  int deg = std::accumulate(psi.begin(), psi.end(), 0) + std::accumulate(kappa.begin(), kappa.end(), 0);
  if (!(2 * g - 2 + n > 0) || deg != 3 * g - 3 + n) return Rational(0);
  if (kappa.empty()) return lookup(g, std::vector<int>(psi.begin(), psi.end()));
  // kappa_{b_1}...kappa_{b_k} = sum over set partitions P of [k] of
  // (-1)^{k-|P|} pi_*( prod_{B in P} psi_B^{1 + b_B} ).
  const int k = static_cast<int>(kappa.size());
  Rational total;
  std::vector<int> block(k, 0);
  std::function<void(int, int)> rec = [&](int i, int nb) {
    if (i == k) {
      std::vector<int> ex(psi.begin(), psi.end());
      std::vector<int> extra(nb, 1);
      for (int j = 0; j < k; ++j) extra[block[j]] += kappa[j];
      ex.insert(ex.end(), extra.begin(), extra.end());
      Rational v = lookup(g, ex);
      total += ((k - nb) % 2 == 0) ? v : -v;
      return;
    }
    for (int b = 0; b <= nb; ++b) {
      block[i] = b;
      rec(i + 1, std::max(nb, b + 1));
    }
  };
  rec(0, 0);
  return total;
}

std::vector<PsiEntry> psi_memo_snapshot() {
  auto& M = memo();
  std::shared_lock lock(M.mu);
  std::vector<PsiEntry> out;
  out.reserve(M.table.size());
  for (const auto& [k, v] : M.table) out.push_back({k.first, k.second, v});
  return out;
}

void psi_memo_seed(const std::vector<PsiEntry>& entries) {
  auto& M = memo();
  std::unique_lock lock(M.mu);
  for (const auto& e : entries) {
    auto d = e.exponents;
    std::sort(d.begin(), d.end());
    auto [it, inserted] = M.table.try_emplace({e.genus, d}, e.value);
    if (!inserted && it->second != e.value)
      throw std::runtime_error("psi memo conflict for genus " + std::to_string(e.genus));
  }
}

std::size_t psi_memo_size() {
  auto& M = memo();
  std::shared_lock lock(M.mu);
  return M.table.size();
}

void psi_memo_clear() {
  auto& M = memo();
  std::unique_lock lock(M.mu);
  M.table.clear();
  M.hits = 0;
  M.misses = 0;
}

MemoStats psi_memo_stats() {
  auto& M = memo();
  return {M.hits.load(), M.misses.load()};
}

}  // namespace taut
