#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "taut/rational.hpp"

namespace taut {

/// <tau_{d_1} ... tau_{d_N}>_g, the integral of psi_1^{d_1}...psi_N^{d_N}
/// over M_{g,N}-bar. Computed from <tau_0^3>_0 = 1 and <tau_1>_1 = 1/24 by the
/// DVV recursion (string and dilaton as shortcuts); memoised.
/// Throws std::domain_error on an unstable (g, N) or when sum d_i != 3g-3+N.
Rational psi_integral(int g, std::span<const int> exponents);

/// Integral of prod psi_i^{d_i} * prod kappa_{b_j} over M_{g,N}-bar, with
/// kappa classes rewritten as pushforwards of psi classes from extra markings.
/// Returns 0 when the degree does not match the dimension.
Rational psi_kappa_integral(int g, std::span<const int> psi, std::span<const int> kappa);

/// Entry of the intersection-number memo, keyed by genus and the sorted
/// exponent vector.
struct PsiEntry {
  int genus;
  std::vector<int> exponents;
  Rational value;
};

/// Snapshot of all memoised psi intersection numbers, sorted by key.
std::vector<PsiEntry> psi_memo_snapshot();
/// Seeds the memo; existing entries must agree (throws std::runtime_error on
/// conflict).
void psi_memo_seed(const std::vector<PsiEntry>& entries);
std::size_t psi_memo_size();
void psi_memo_clear();

struct MemoStats {
  std::size_t hits = 0;
  std::size_t misses = 0;
};
MemoStats psi_memo_stats();

}  // namespace taut
