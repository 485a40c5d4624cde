#include <random>
#include <vector>

#include "doctest.h"
#include "rforest/algebra.hpp"

using namespace rforest;

namespace {

MPoly x(unsigned i) { return MPoly::variable(i); }

MPoly random_poly(std::mt19937& rng) {
  MPoly poly;
  const int terms = 1 + static_cast<int>(rng() % 4u);
  for (int t = 0; t < terms; ++t) {
    std::vector<Monomial::Factor> factors;
    for (unsigned v = 0; v < 3; ++v) {
      const unsigned exp = rng() % 3u;
      if (exp > 0) factors.push_back({v, exp});
    }
    const int coeff = static_cast<int>(rng() % 11u) - 5;
    poly.add_term(Monomial::from_factors(std::move(factors)), coeff);
  }
  return poly;
}

std::vector<Rational> random_point(std::mt19937& rng, int vars) {
  std::vector<Rational> point(vars);
  for (auto& value : point) {
    value = Rational(static_cast<int>(rng() % 13u) - 6,
                     1 + static_cast<int>(rng() % 5u));
  }
  return point;
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("binomial basics") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(64, 32) == BigInt("1832624140942590534"));
}

TEST_CASE("binomial satisfies the Pascal rule up to n = 64") {
  for (unsigned n = 1; n <= 64; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

TEST_CASE("square of a sum") {
  MPoly square = (x(0) + x(1)).pow(2);
  MPoly expected;
  expected.add_term(Monomial::variable(0, 2), 1);
  expected.add_term(Monomial::variable(0) * Monomial::variable(1), 2);
  expected.add_term(Monomial::variable(1, 2), 1);
  CHECK(square == expected);
  CHECK(square.str() == "x0^2 + 2*x0*x1 + x1^2");
}

TEST_CASE("multiplication by zero and simple powers") {
  MPoly zero;
  CHECK((x(0) + x(1)) * zero == zero);
  CHECK(zero.str() == "0");
  CHECK(x(0).pow(3).str() == "x0^3");
  CHECK(x(0).pow(0) == MPoly{BigInt(1)});
  CHECK(zero.pow(0) == MPoly{BigInt(1)});
}

TEST_CASE("evaluation") {
  std::vector<Rational> p12 = {Rational(1), Rational(2)};
  CHECK((x(0) + x(1)).eval(p12) == Rational(3));
  CHECK(MPoly{BigInt(5)}.eval({}) == Rational(5));
  std::vector<Rational> ones = {Rational(1), Rational(1), Rational(1)};
  CHECK((x(0) + x(1) + x(2)).pow(2).eval(ones) == Rational(9));
  CHECK_THROWS_AS(x(2).eval(p12), std::invalid_argument);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(20240601);
  const MPoly one{BigInt(1)};
  const MPoly zero;
  for (int trial = 0; trial < 40; ++trial) {
    MPoly a = random_poly(rng);
    MPoly b = random_poly(rng);
    MPoly c = random_poly(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + zero == a);
    CHECK(a * one == a);
    CHECK(a - a == zero);
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    MPoly p = random_poly(rng);
    MPoly q = random_poly(rng);
    const auto point = random_point(rng, 3);
    CHECK((p * q).eval(point) == p.eval(point) * q.eval(point));
    CHECK((p + q).eval(point) == p.eval(point) + q.eval(point));
  }
}

TEST_CASE("canonical ordering and rendering") {
  MPoly poly;
  poly.add_term(Monomial{}, 7);
  poly.add_term(Monomial::variable(1, 1), -3);
  poly.add_term(Monomial::variable(0, 2), 1);
  poly.add_term(Monomial::variable(0) * Monomial::variable(1), 2);
  // Degree 2 terms first, lexicographically within a degree, constant last.
  CHECK(poly.str() == "x0^2 + 2*x0*x1 - 3*x1 + 7");
  CHECK(poly.total_degree() == 2);
  CHECK_FALSE(poly.is_homogeneous(2));
  CHECK((x(0) + x(1)).pow(3).is_homogeneous(3));

  const std::vector<std::string> names = {"lambda", "a"};
  MPoly census;
  census.add_term(Monomial::variable(0, 2), 4);
  census.add_term(Monomial::variable(0) * Monomial::variable(1), 4);
  CHECK(census.str(names) == "4*lambda^2 + 4*lambda*a");
  const auto terms = census.term_strings(names);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0] == std::pair<std::string, std::string>{"lambda^2", "4"});
  CHECK(terms[1] == std::pair<std::string, std::string>{"lambda*a", "4"});
}

TEST_CASE("normalization keeps equality structural") {
  MPoly a;
  a.add_term(Monomial::variable(0), 2);
  a.add_term(Monomial::variable(0), -2);
  CHECK(a.is_zero());
  CHECK(a == MPoly{});
  CHECK(Monomial::variable(3, 0) == Monomial{});
}

}  // TEST_SUITE
