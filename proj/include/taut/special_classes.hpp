#pragma once

#include <span>
#include <string>
#include <vector>

#include "taut/laurent.hpp"
#include "taut/taut_class.hpp"

namespace taut {

/// r-values used to sample Pixton's formula for DR_g(parts): schedule 0 takes
/// the first 2g+2 primes above sum|parts| + 2g, schedule 1 the next 2g+2.
std::vector<long> dr_schedule(int g, std::span<const long> parts, int schedule);

/// The raw Pixton sum at one value of r (all graphs, all weightings mod r),
/// degree-g part, before extracting the constant term in r and before the
/// 2^{-g} normalisation.
TautClass pixton_class_at(int g, std::span<const long> parts, long r);

/// DR_g(parts) on M_{g,N}-bar, N = parts.size(), from the r-samples in
/// `r_values`: a degree-2g fit through the first 2g+1 values, checked
/// against every remaining value. Throws std::invalid_argument when the
/// parts do not sum to zero or (g, N) is unstable, and std::runtime_error when
/// a check value disagrees with the fit.
TautClass dr_cycle_with_schedule(int g, std::span<const long> parts, std::span<const long> r_values);

/// DR_g(parts) using schedule 0; memoised per (g, parts).
TautClass dr_cycle(int g, std::span<const long> parts);

/// Degree-k Chern character of the Hodge bundle on M_{g,N}-bar (zero for even
/// k >= 2), from Mumford's formula.
TautClass chern_character(int g, int n, int k);

/// lambda_i on M_{g,N}-bar via Newton's identities. Throws
/// std::invalid_argument when i < 0 or i > g. Memoised.
TautClass lambda_class(int g, int n, int i);

/// sum_{i=0}^{g} sign^i lambda_i u^{g-i} on M_{g,N}-bar.
ULaurent<TautClass> hodge_poly(int g, int n, int sign);

struct MumfordResult {
  bool pass = true;
  int pairings = 0;       // (degree, stratum) pairs tested
  std::string witness;    // first nonzero pairing, if any
};

/// Checks that hodge_poly(-1) * hodge_poly(+1) - u^{2g} pairs to zero with
/// every element of enumerate_strata in the complementary degree.
MumfordResult mumford_check(int g, int n);

}  // namespace taut
