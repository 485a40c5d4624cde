#include <vector>

#include "doctest.h"
#include "rforest/closed_forms.hpp"
#include "rforest/forest.hpp"

using namespace rforest;

namespace {

Monomial census_cell(int lambda_edges, int extra_edges) {
  return Monomial::variable(kLambdaVar, static_cast<unsigned>(lambda_edges)) *
         Monomial::variable(kExtraWeightVar,
                            static_cast<unsigned>(extra_edges));
}

// All size vectors with m parts, each in [1, max_size], total <= max_total.
std::vector<std::vector<int>> size_vectors(int m, int max_size, int max_total) {
  std::vector<std::vector<int>> out;
  std::vector<int> sizes(static_cast<std::size_t>(m), 1);
  while (true) {
    int total = 0;
    for (int s : sizes) total += s;
    if (total <= max_total) out.push_back(sizes);
    int i = m - 1;
    while (i >= 0 && sizes[i] == max_size) sizes[i--] = 1;
    if (i < 0) break;
    ++sizes[i];
  }
  return out;
}

}  // namespace

TEST_SUITE("closed_forms") {

TEST_CASE("rho at lambda = 1 counts nonempty subsets") {
  std::vector<Rational> at_one = {Rational(1)};
  for (int s = 0; s <= 8; ++s) {
    CHECK(rho_lambda(s).eval(at_one) == Rational(rho_count(s)));
    CHECK(rho_count(s) == ipow(2, static_cast<unsigned>(s)) - 1);
  }
  CHECK(rho_lambda(2).str(census_variable_names()) == "lambda^2 + 2*lambda");
}

TEST_CASE("pair counts") {
  for (int s = 1; s <= 4; ++s) {
    for (int t = 1; t <= 4; ++t) {
      std::vector<int> sizes = {s, t};
      CHECK(n_m_closed(sizes) == BigInt(s) * rho_count(t));
    }
  }
}

TEST_CASE("all-singleton families count labeled trees") {
  for (int m = 1; m <= 7; ++m) {
    std::vector<int> sizes(static_cast<std::size_t>(m), 1);
    const BigInt expected =
        m == 1 ? BigInt(1) : ipow(m, static_cast<unsigned>(m - 2));
    CHECK(n_m_closed(sizes) == expected);
  }
}

TEST_CASE("mixed family") {
  std::vector<int> sizes = {1, 2, 3};
  CHECK(n_m_closed(sizes) == 126);
  CHECK_THROWS_AS(n_m_closed(std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(n_m_closed(std::vector<int>{0, 1}), std::invalid_argument);
}

TEST_CASE("single-set census formula") {
  {
    std::vector<int> sizes = {2};
    CensusPolynomial expected;
    expected.add_term(census_cell(1, 0), 2);
    CHECK(q_closed(sizes, 1) == expected);
  }
  {
    std::vector<int> sizes = {2};
    CensusPolynomial expected;
    expected.add_term(census_cell(2, 0), 4);
    expected.add_term(census_cell(1, 1), 4);
    CHECK(q_closed(sizes, 2) == expected);
  }
}

TEST_CASE("extras-free census degenerations") {
  {
    std::vector<int> sizes = {1, 1};
    CensusPolynomial expected;
    expected.add_term(census_cell(1, 0), 1);
    CHECK(q_closed(sizes, 0) == expected);
  }
  std::vector<int> single = {3};
  CHECK(q_closed(single, 0) == MPoly{BigInt(1)});
  // At lambda = 1 the extras-free census reproduces the plain count.
  std::vector<Rational> at_one = {Rational(1), Rational(1)};
  for (const auto& sizes : size_vectors(3, 3, 7)) {
    CHECK(q_closed(sizes, 0).eval(at_one) == Rational(n_m_closed(sizes)));
  }
  for (const auto& sizes : size_vectors(2, 4, 8)) {
    CHECK(q_closed(sizes, 0).eval(at_one) == Rational(n_m_closed(sizes)));
  }
}

TEST_CASE("restricted census") {
  {
    std::vector<int> sizes = {1, 1};
    CensusPolynomial expected;
    expected.add_term(census_cell(2, 0), 1);
    CHECK(qtilde_closed(sizes, 1) == expected);
  }
  // With one set there is nothing to restrict.
  for (int n = 1; n <= 4; ++n) {
    for (int s = 1; s <= 3; ++s) {
      std::vector<int> sizes = {s};
      CHECK(qtilde_closed(sizes, n) == q_closed(sizes, n));
    }
  }
  CHECK_THROWS_AS(qtilde_closed(std::vector<int>{1, 1}, 0),
                  std::invalid_argument);
}

TEST_CASE("restricted census against the restricted oracle") {
  AdmissibilityOptions restricted;
  restricted.forbid_interset = true;
  for (const auto& sizes : size_vectors(2, 2, 4)) {
    for (int n = 1; n <= 3; ++n) {
      CAPTURE(sizes);
      CAPTURE(n);
      CHECK(qtilde_closed(sizes, n) ==
            oracle_filter_census(VertexFamily(sizes, n), restricted));
    }
  }
  // Two sets and no extras cannot be connected without interset edges.
  CHECK(oracle_filter_census(VertexFamily({2, 1}), restricted).is_zero());
}

TEST_CASE("nested-sum expansion equals the closed form") {
  {
    std::vector<int> sizes = {1, 1};
    CensusPolynomial expected;
    expected.add_term(census_cell(2, 0), 1);
    CHECK(qtilde_expansion(sizes, 1) == expected);
  }
  for (int m = 2; m <= 3; ++m) {
    for (const auto& sizes : size_vectors(m, 3, 5)) {
      for (int n = 1; n <= 3; ++n) {
        CAPTURE(sizes);
        CAPTURE(n);
        const auto memoized = qtilde_expansion(sizes, n);
        CHECK(memoized == qtilde_closed(sizes, n));
        CHECK(memoized == qtilde_expansion(sizes, n, ExpansionMode::Literal));
      }
    }
  }
  CHECK_THROWS_AS(qtilde_expansion(std::vector<int>{2}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(qtilde_expansion(std::vector<int>{1, 1}, 0),
                  std::invalid_argument);
}

TEST_CASE("binomial recombination reproduces the unrestricted census") {
  for (int m = 1; m <= 3; ++m) {
    for (const auto& sizes : size_vectors(m, 2, 5)) {
      for (int n = 1; n <= 3; ++n) {
        CAPTURE(sizes);
        CAPTURE(n);
        CHECK(q_from_qtilde(sizes, n) == q_closed(sizes, n));
      }
    }
  }
  CHECK_THROWS_AS(q_from_qtilde(std::vector<int>{1}, 0),
                  std::invalid_argument);
}

TEST_CASE("census coefficients are nonnegative") {
  for (const auto& sizes : size_vectors(2, 2, 4)) {
    for (int n = 0; n <= 3; ++n) {
      const auto census = q_closed(sizes, n);
      for (const auto& [mono, coeff] : census.terms()) {
        CHECK(coeff > 0);
      }
      if (n >= 1) {
        const auto restricted = qtilde_closed(sizes, n);
        for (const auto& [mono, coeff] : restricted.terms()) {
          CHECK(coeff > 0);
        }
      }
    }
  }
}

TEST_CASE("closed census against the full oracle") {
  for (const auto& sizes : size_vectors(2, 2, 4)) {
    for (int n = 0; n <= 2; ++n) {
      CAPTURE(sizes);
      CAPTURE(n);
      CHECK(q_closed(sizes, n) == oracle_filter_census(VertexFamily(sizes, n)));
    }
  }
  std::vector<int> triple = {1, 1, 1};
  for (int n = 0; n <= 2; ++n) {
    CHECK(q_closed(triple, n) ==
          oracle_filter_census(VertexFamily(triple, n)));
  }
}

}  // TEST_SUITE
