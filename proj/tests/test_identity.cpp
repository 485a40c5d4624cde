#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "rforest/identity.hpp"

using namespace rforest;

namespace {

MPoly sum_of_first(int m) {
  MPoly sum;
  for (int i = 0; i < m; ++i) sum += MPoly::variable(static_cast<unsigned>(i));
  return sum;
}

std::vector<Rational> ones(int m) {
  return std::vector<Rational>(static_cast<std::size_t>(m), Rational(1));
}

MPoly permute_variables(const MPoly& poly, const std::vector<unsigned>& perm) {
  MPoly out;
  for (const auto& [mono, coeff] : poly.terms()) {
    std::vector<Monomial::Factor> factors;
    for (const auto& [var, exp] : mono.factors()) {
      factors.push_back({perm[var], exp});
    }
    out.add_term(Monomial::from_factors(std::move(factors)), coeff);
  }
  return out;
}

}  // namespace

TEST_SUITE("identity") {

TEST_CASE("left side degenerate cells") {
  for (int m = 1; m <= 5; ++m) {
    CHECK(lhs_eq1({m, m}) == MPoly{BigInt(1)});
  }
  for (int m = 2; m <= 6; ++m) {
    CHECK(lhs_eq1({m, 1}) == sum_of_first(m).pow(static_cast<unsigned>(m - 1)));
  }
}

TEST_CASE("spot values at the all-ones point") {
  CHECK(lhs_eq1({3, 2}).eval(ones(3)) == Rational(6));
  CHECK(rhs_eq1({3, 2}).eval(ones(3)) == Rational(6));
  std::vector<Rational> e1 = {Rational(1), Rational(0), Rational(0), Rational(0)};
  CHECK(rhs_eq1({4, 2}).eval(e1) == Rational(3));
}

TEST_CASE("symbolic verification across the small grid") {
  for (int m = 1; m <= 6; ++m) {
    for (int p = 1; p <= m; ++p) {
      const auto verdict = verify_eq1({m, p});
      CHECK_MESSAGE(verdict.equal, "m=", m, " p=", p, " diff=",
                    verdict.difference.str());
    }
  }
}

TEST_CASE("mutated right side is caught") {
  // Negative control: the binomial factor shifted by one must break
  // equality. Note C(m-1,p) == C(m-1,p-1) when m == 2p, so the probe has to
  // avoid those cells (at m=4, p=2 the mutation is invisible).
  {
    const IdentityInstance inst{4, 2};
    MPoly same_rhs = sum_of_first(4).pow(2);
    same_rhs *= binomial(3, 2);
    CHECK((lhs_eq1(inst) - same_rhs).is_zero());
  }
  const IdentityInstance inst{4, 3};
  MPoly wrong_rhs = sum_of_first(4).pow(1);
  wrong_rhs *= binomial(3, 3);
  MPoly diff = lhs_eq1(inst) - wrong_rhs;
  CHECK_FALSE(diff.is_zero());

  int caught = 0;
  for (int m = 1; m <= 5; ++m) {
    for (int p = 1; p <= m; ++p) {
      MPoly mutated = sum_of_first(m).pow(static_cast<unsigned>(m - p));
      mutated *= binomial(static_cast<unsigned>(m - 1),
                          static_cast<unsigned>(p));
      if (!(lhs_eq1({m, p}) - mutated).is_zero()) ++caught;
    }
  }
  CHECK(caught > 0);
}

TEST_CASE("both sides are homogeneous of degree m - p") {
  for (int m = 1; m <= 6; ++m) {
    for (int p = 1; p <= m; ++p) {
      const unsigned degree = static_cast<unsigned>(m - p);
      CHECK(lhs_eq1({m, p}).is_homogeneous(degree));
      CHECK(rhs_eq1({m, p}).is_homogeneous(degree));
    }
  }
}

TEST_CASE("left side is symmetric under variable permutations") {
  std::mt19937 rng(5);
  for (const auto& [m, p] :
       {std::pair{4, 2}, std::pair{5, 2}, std::pair{5, 3}}) {
    const MPoly lhs = lhs_eq1({m, p});
    std::vector<unsigned> perm(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) perm[i] = static_cast<unsigned>(i);
    for (int trial = 0; trial < 4; ++trial) {
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(permute_variables(lhs, perm) == lhs);
    }
  }
}

TEST_CASE("two-sum induction identity") {
  for (int m = 1; m <= 5; ++m) {
    for (int p = 2; p <= m + 1; ++p) {
      const auto verdict = verify_claim0(m, p);
      CHECK_MESSAGE(verdict.equal, "claim0 m=", m, " p=", p);
    }
  }
  CHECK_THROWS_AS(verify_claim0(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_claim0(3, 5), std::invalid_argument);
}

TEST_CASE("binomial-weighted induction identity") {
  for (int m = 1; m <= 5; ++m) {
    for (int p = 1; p <= m; ++p) {
      for (int n = 1; n <= m + 1 - p; ++n) {
        const auto verdict = verify_claim(m, p, n);
        CHECK_MESSAGE(verdict.equal, "claim m=", m, " p=", p, " n=", n);
      }
    }
  }
  CHECK_THROWS_AS(verify_claim(3, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify_claim(3, 2, 3), std::invalid_argument);
}

TEST_CASE("multinomial-style subdivision expansion") {
  // p=2, m=3 by hand: q=1 gives x1^2 + x2^2, q=2 gives 2*x1*x2.
  CHECK(verify_multinomial_variant(2, 3).equal);
  for (int m = 2; m <= 5; ++m) CHECK(verify_multinomial_variant(1, m).equal);
  CHECK(verify_multinomial_variant(3, 4).equal);
  CHECK(verify_multinomial_variant(4, 5).equal);
  CHECK_THROWS_AS(verify_multinomial_variant(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(verify_multinomial_variant(2, 1), std::invalid_argument);
}

TEST_CASE("numeric evaluation agrees with the expanded polynomial") {
  std::mt19937 rng(99);
  for (int m = 1; m <= 6; ++m) {
    std::vector<MPoly> expanded;
    for (int p = 1; p <= m; ++p) expanded.push_back(lhs_eq1({m, p}));
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Rational> point(static_cast<std::size_t>(m));
      for (auto& value : point) {
        value = Rational(static_cast<int>(rng() % 19u) - 9,
                         1 + static_cast<int>(rng() % 9u));
      }
      const auto values = lhs_eq1_values_at(point);
      for (int p = 1; p <= m; ++p) {
        CHECK(values[p - 1] == expanded[p - 1].eval(point));
      }
    }
  }
}

TEST_CASE("seeded numeric verification passes and is reproducible") {
  NumericOptions options;
  options.max_m = 10;
  options.points = 200;
  options.seed = 42;
  const auto outcome = verify_eq1_numeric(options);
  CHECK(outcome.all_equal);
  CHECK(outcome.points_checked == 200);
  CHECK(outcome.first_failure.empty());

  const auto again = verify_eq1_numeric(options);
  CHECK(again.instances_checked == outcome.instances_checked);
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(lhs_eq1({3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(lhs_eq1({0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(rhs_eq1({2, 0}), std::invalid_argument);
}

}  // TEST_SUITE
