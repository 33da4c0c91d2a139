#include <functional>
#include <numeric>
#include <random>

#include "doctest.h"
#include "taut/graph_enum.hpp"
#include "taut/intersection.hpp"
#include "taut/psi_integrals.hpp"
#include "taut/star_tree.hpp"

using namespace taut;

namespace {

Rational psi_int(int g, std::vector<int> d) { return psi_integral(g, d); }

/// Graph with a single separating edge: vertex 0 of genus g0 carries legs
/// `left`, vertex 1 of genus g1 the rest.
StableGraph separating(int g0, int g1, int n, const std::vector<int>& left) {
  StableGraph G;
  G.vertex_genus = {g0, g1};
  G.leg_vertex.assign(n, 1);
  for (int i : left) G.leg_vertex[i - 1] = 0;
  G.edges = {{0, 1}};
  return G;
}

StableGraph loop_graph(int g, int n) {
  StableGraph G = StableGraph::trivial(g - 1, n);
  G.edges = {{0, 0}};
  return G;
}

TautClass stratum(const StableGraph& G) { return TautClass::from_stratum(DecoratedStratum::bare(G)); }

}  // namespace

TEST_CASE("psi integrals: hand values") {
  CHECK(psi_int(0, {0, 0, 0}) == Rational(1));
  CHECK(psi_int(1, {1}) == Rational(1, 24));
  CHECK(psi_int(2, {4}) == Rational(1, 1152));
  CHECK(psi_int(2, {2, 3}) == Rational(29, 5760));
  CHECK(psi_int(3, {7}) == Rational(1, 82944));
  CHECK(psi_int(1, {1, 1}) == Rational(1, 24));
  CHECK_THROWS_AS(psi_int(1, {2}), std::domain_error);
  CHECK_THROWS_AS(psi_int(0, {0, 0}), std::domain_error);
}

TEST_CASE("psi integrals: genus-zero closed form for N <= 8") {
  int checked = 0;
  for (int N = 3; N <= 8; ++N) {
    std::vector<int> d(N, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == N - 1) {
        d[i] = left;
        Rational expect = factorial(N - 3);
        for (int x : d) expect /= factorial(x);
        CHECK(psi_integral(0, d) == expect);
        ++checked;
        return;
      }
      for (int x = 0; x <= left; ++x) {
        d[i] = x;
        rec(i + 1, left - x);
      }
    };
    rec(0, N - 3);
  }
  CHECK(checked > 500);
}

TEST_CASE("psi integrals: string and dilaton on random inputs") {
  std::mt19937 rng(99);
  int cases = 0;
  while (cases < 240) {
    const int g = static_cast<int>(rng() % 4);
    const int N = 1 + static_cast<int>(rng() % 5);
    if (2 * g - 2 + N <= 0) continue;
    // random exponents summing to 3g-3+N+1, for the space with one more point
    const int total = 3 * g - 3 + N + 1;
    std::vector<int> d(N, 0);
    for (int k = 0; k < total; ++k) ++d[rng() % N];
    // string: <tau_0 prod tau_{d_i}> = sum_j <... tau_{d_j - 1} ...>
    std::vector<int> with0(d);
    with0.push_back(0);
    Rational rhs;
    for (int j = 0; j < N; ++j)
      if (d[j] > 0) {
        auto e = d;
        --e[j];
        rhs += psi_integral(g, e);
      }
    CHECK(psi_integral(g, with0) == rhs);
    // dilaton: <tau_1 prod tau_{d_i}> = (2g-2+N) <prod tau_{d_i}>
    std::vector<int> e(N, 0);
    for (int k = 0; k < total - 1; ++k) ++e[rng() % N];
    std::vector<int> with1(e);
    with1.push_back(1);
    CHECK(psi_integral(g, with1) == Rational(2 * g - 2 + N) * psi_integral(g, e));
    cases += 2;
  }
}

TEST_CASE("psi memo snapshot and seeding") {
  (void)psi_int(2, {4});
  auto snap = psi_memo_snapshot();
  CHECK(!snap.empty());
  CHECK_NOTHROW(psi_memo_seed(snap));
  auto bad = snap;
  bad[0].value += Rational(1);
  CHECK_THROWS_AS(psi_memo_seed(bad), std::runtime_error);
}

TEST_CASE("integrate examples") {
  CHECK(integrate(TautClass::fundamental(0, 3)) == Rational(1));
  CHECK(integrate(TautClass::psi(0, 4, 1)) == Rational(1));
  CHECK(integrate(TautClass::psi(1, 1, 1)) == Rational(1, 24));
  CHECK(integrate(TautClass::kappa(1, 1, 1)) == Rational(1, 24));
  CHECK(integrate(TautClass::kappa(0, 5, 2)) == Rational(1));
  CHECK(integrate(stratum(loop_graph(1, 1))) == Rational(1));
  // lower-degree parts do not contribute
  CHECK(integrate(TautClass::fundamental(0, 4)) == Rational(0));
}

TEST_CASE("truncation drops classes above vertex dimensions") {
  auto s = DecoratedStratum::bare(StableGraph::trivial(0, 3));
  s.psi[0] = 1;
  CHECK(TautClass::from_stratum(s).is_zero());
  CHECK(TautClass::psi(0, 4, 1, 2).is_zero());
}

TEST_CASE("multiply examples") {
  const TautClass one = TautClass::fundamental(1, 2);
  const TautClass x = TautClass::psi(1, 2, 1) + stratum(loop_graph(1, 2)) * Rational(3, 7);
  CHECK(multiply(one, x) == x);
  CHECK(multiply(x, one) == x);

  // Disjoint boundary divisors of M_{0,4}-bar.
  TautClass d12 = stratum(separating(0, 0, 4, {1, 2}));
  TautClass d13 = stratum(separating(0, 0, 4, {1, 3}));
  CHECK(multiply(d12, d13).is_zero());

  // Self-intersection of the separating divisor of M_{1,2}-bar: excess class
  // -psi at the genus-one side gives -1/24.
  TautClass delta0 = stratum(separating(1, 0, 2, {}));
  CHECK(integrate(multiply(delta0, delta0)) == Rational(-1, 24));
  // The irreducible divisor on M_{1,1}-bar squares to zero for degree reasons,
  // and on M_{1,2}-bar it is a pullback from M_{1,1}-bar.
  TautClass irr11 = stratum(loop_graph(1, 1)) * Rational(1, 2);
  CHECK(multiply(irr11, irr11).is_zero());
  CHECK(integrate(irr11) == Rational(1, 2));
  TautClass irr12 = stratum(loop_graph(1, 2)) * Rational(1, 2);
  CHECK(integrate(multiply(irr12, irr12)) == Rational(0));
  CHECK(integrate(multiply(irr12, TautClass::psi(1, 2, 1))) == Rational(1, 2));
  CHECK(integrate(multiply(delta0, TautClass::psi(1, 2, 1))) == Rational(0));
  CHECK(integrate(multiply(delta0, TautClass::kappa(1, 2, 1))) == Rational(1, 24));
}

TEST_CASE("pullbacks of psi and kappa to a boundary divisor of M_{0,5}-bar") {
  TautClass D = stratum(separating(0, 0, 5, {1, 2}));
  CHECK(integrate(multiply(D, TautClass::psi(0, 5, 1))) == Rational(0));
  CHECK(integrate(multiply(D, TautClass::psi(0, 5, 3))) == Rational(1));
  CHECK(integrate(multiply(D, TautClass::kappa(0, 5, 1))) == Rational(1));
  CHECK(integrate(multiply(D, D)) == Rational(-1));
  CHECK(pairing(D, StratumRegistry::instance().intern(DecoratedStratum::bare(separating(0, 0, 5, {1, 2})))) ==
        Rational(-1));
}

TEST_CASE("multiply is commutative and associative on random low-degree strata") {
  std::mt19937 rng(17);
  for (auto [g, n] : {std::pair{1, 2}, std::pair{0, 5}}) {
    const int dim = moduli_dimension(g, n);
    std::vector<DecoratedStratum> pool;
    for (int d = 0; d <= 1; ++d)
      for (auto& s : enumerate_strata(g, n, d)) pool.push_back(s);
    for (int t = 0; t < 25; ++t) {
      TautClass x = TautClass::from_stratum(pool[rng() % pool.size()]);
      TautClass y = TautClass::from_stratum(pool[rng() % pool.size()], Rational(2, 3));
      TautClass z = TautClass::from_stratum(pool[rng() % pool.size()], Rational(-5));
      CHECK(multiply(x, y) == multiply(y, x));
      CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
      CHECK(multiply(x, y + z) == multiply(x, y) + multiply(x, z));
      CHECK(multiply(x, y).max_degree() <= dim);
    }
  }
}

TEST_CASE("pair_strata agrees with integrate(multiply)") {
  const auto lows = enumerate_strata(1, 3, 1);
  const auto highs = enumerate_strata(1, 3, 2);
  auto& R = StratumRegistry::instance();
  for (const auto& x : lows)
    for (const auto& y : highs) {
      const StratumId ix = R.intern(x), iy = R.intern(y);
      CHECK(pair_strata(ix, iy) == integrate(multiply(TautClass::from_stratum(x), TautClass::from_stratum(y))));
      CHECK(pair_strata(iy, ix) == pair_strata(ix, iy));
    }
}

TEST_CASE("glue and boundary pushforward") {
  // One-vertex graph: identity.
  StableGraph T0 = StableGraph::trivial(1, 2);
  TautClass x = TautClass::psi(1, 2, 2);
  CHECK(glue(T0, {{0, 1}}, {x}) == x);
  // Marking order is respected: swapping the order swaps psi_1 and psi_2.
  CHECK(glue(T0, {{1, 0}}, {x}) == TautClass::psi(1, 2, 1));

  // (0,2,1): both leaves contracted, root M_{0,3}-bar.
  StarTree t = enumerate_pssrt(0, 2, 1)[1];
  auto pushed = boundary_pushforward(t, {TautClass::fundamental(0, 3), Rational(1, 2), Rational(1, 3)});
  CHECK(pushed == TautClass::fundamental(0, 3) * Rational(1, 6));
  CHECK_THROWS_AS(boundary_pushforward(t, {TautClass::fundamental(0, 3), TautClass::fundamental(0, 3), Rational(1)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(boundary_pushforward(t, {TautClass::fundamental(0, 4), Rational(1), Rational(1)}),
                  std::invalid_argument);

  // Projection formula on M_{0,5}-bar for the tree with leaf {1,2}:
  // pushforward of psi at the root edge is the divisor with that psi.
  StarTree s;
  s.g = 0;
  s.n = 2;
  s.m = 3;
  s.root_genus = 0;
  s.blocks = {{1, 2}};
  s.leaf_genus = {0};
  TautClass D = boundary_pushforward(s, {TautClass::fundamental(0, 4), TautClass::fundamental(0, 3)});
  CHECK(integrate(multiply(D, TautClass::psi(0, 5, 3))) == Rational(1));
  CHECK(integrate(multiply(D, TautClass::psi(0, 5, 1))) == Rational(0));
  CHECK(integrate(multiply(D, TautClass::kappa(0, 5, 1))) == Rational(1));
  CHECK(integrate(multiply(D, D)) == Rational(-1));
  TautClass Dpsi = boundary_pushforward(s, {TautClass::psi(0, 4, 1), TautClass::fundamental(0, 3)});
  CHECK(integrate(Dpsi) == Rational(1));
}
