#include <random>

#include "doctest.h"
#include "taut/apoly.hpp"
#include "taut/laurent.hpp"
#include "taut/rational.hpp"

using namespace taut;

TEST_CASE("rationals are reduced and exact") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(6, -4).str() == "-3/2");
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-7").str() == "-7");
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(factorial(20).str() == "2432902008176640000");
  CHECK(factorial(25).str() == "15511210043330985984000000");
  CHECK(binomial(10, 3) == Rational(120));
  CHECK(binomial(3, 5) == Rational(0));
}

TEST_CASE("ring axioms and two-way exactness on random inputs") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-50, 50);
  auto rnd = [&] {
    long q = 0;
    while (q == 0) q = d(rng);
    return Rational(d(rng), q);
  };
  for (int i = 0; i < 300; ++i) {
    Rational x = rnd(), y = rnd(), z = rnd();
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    // a/b + c/d both as a direct sum and over the common denominator.
    long a = d(rng), b = 1 + (d(rng) + 50), c = d(rng), e = 1 + (d(rng) + 50);
    CHECK(Rational(a, b) + Rational(c, e) == Rational(a * e + c * b, b * e));
  }
}

TEST_CASE("poly_interpolate examples") {
  {
    std::vector<Sample> s{{{1}, Rational(3)}, {{2}, Rational(5)}};
    APoly p = poly_interpolate(s, 1);
    CHECK(p == APoly::constant(1, 1) + APoly::variable(1, 0) * Rational(2));
    CHECK(p.str() == "1 + 2*a1");
  }
  {
    Rational c(7, 3);
    std::vector<Sample> s{{{1}, c}, {{2}, c}, {{3}, c}};
    CHECK(poly_interpolate(s, 2) == APoly::constant(1, c));
  }
  {
    std::vector<Sample> s;
    for (long x = 1; x <= 3; ++x)
      for (long y = 1; y <= 3; ++y) s.push_back({{x, y}, Rational(x * y)});
    CHECK(poly_interpolate(s, 2) == APoly::variable(2, 0) * APoly::variable(2, 1));
  }
}

TEST_CASE("poly_interpolate reports the deficient direction") {
  std::vector<Sample> s{{{1, 1}, Rational(1)}, {{1, 2}, Rational(2)}, {{1, 3}, Rational(3)}};
  try {
    (void)poly_interpolate(s, 1);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("a1") != std::string::npos);
  }
  std::vector<Sample> bad{{{1}, Rational(1)}, {{2}, Rational(2)}, {{3}, Rational(5)}};
  CHECK_THROWS_AS((void)poly_interpolate(bad, 1), std::invalid_argument);
}

namespace {

APoly random_poly(std::mt19937& rng, int n, int deg) {
  std::uniform_int_distribution<int> coef(-9, 9);
  std::uniform_int_distribution<int> ex(0, deg);
  APoly p(n);
  for (int t = 0; t < 6; ++t) {
    Exponents e(n, 0);
    int left = deg;
    for (int i = 0; i < n; ++i) {
      std::uniform_int_distribution<int> k(0, left);
      e[i] = k(rng);
      left -= e[i];
    }
    p.add_term(e, Rational(coef(rng), 1 + (ex(rng) % 3)));
  }
  return p;
}

}  // namespace

TEST_CASE("interpolation inverts evaluation for random polynomials") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const int deg = trial % 7;
    APoly p = random_poly(rng, n, deg);
    auto grid = simplex_grid(n, deg);
    std::vector<Sample> samples;
    std::vector<Rational> values;
    for (const auto& pt : grid) {
      samples.push_back({pt, p.evaluate(pt)});
      values.push_back(p.evaluate(pt));
    }
    CHECK(poly_interpolate(samples, deg) == p);
    CHECK(interpolate_on_simplex(n, deg, values) == p);
    CHECK(simplex_interpolant_degree(n, deg, values) == p.total_degree());
  }
}

TEST_CASE("simplex grid sizes") {
  CHECK(simplex_grid(1, 4).size() == 5);
  CHECK(simplex_grid(2, 3).size() == 10);
  CHECK(simplex_grid(4, 2).size() == 15);
}

TEST_CASE("laurent negative part and flip") {
  using L = ULaurent<APoly>;
  const APoly a1 = APoly::variable(1, 0);
  const APoly one = APoly::constant(1, 1);
  L x = L::monomial(-2, a1) + L::monomial(0, one * Rational(3)) + L::monomial(1, one);
  CHECK(laurent_negative_part(x) == L::monomial(-2, a1));
  L y = L::monomial(0, one * Rational(5)) + L::monomial(3, one * Rational(7));
  CHECK(laurent_negative_part(y).is_zero());
  L z = L::monomial(-1, -one) + L::monomial(-1, one);
  CHECK(z.is_zero());
  CHECK(laurent_negative_part(z).is_zero());

  using Q = ULaurent<Rational>;
  CHECK(laurent_flip_u(Q::monomial(-1, Rational(1))) == Q::monomial(-1, Rational(-1)));
  Q w = Q::monomial(0, Rational(1)) + Q::monomial(2, Rational(1));
  CHECK(laurent_flip_u(w) == w);
  L v = L::monomial(1, a1) + L::monomial(2, one);
  CHECK(laurent_flip_u(v) == L::monomial(1, -a1) + L::monomial(2, one));
}

TEST_CASE("laurent split property on random inputs") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> k(-5, 5), c(-4, 4);
  using Q = ULaurent<Rational>;
  for (int t = 0; t < 100; ++t) {
    Q x;
    for (int j = 0; j < 5; ++j) x.add(k(rng), Rational(c(rng)));
    Q neg = laurent_negative_part(x);
    Q rest = x - neg;
    CHECK(neg + rest == x);
    if (!rest.is_zero()) CHECK(rest.min_exponent() >= 0);
  }
}
