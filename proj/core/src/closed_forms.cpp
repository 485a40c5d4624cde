#include "rforest/closed_forms.hpp"

#include <functional>
#include <stdexcept>

#include "rforest/partitions.hpp"

namespace rforest {

namespace {

void check_sizes(std::span<const int> sizes) {
  if (sizes.empty()) {
    throw std::invalid_argument("closed forms: need at least one set");
  }
  for (int s : sizes) {
    if (s < 1) {
      throw std::invalid_argument("closed forms: set sizes must be positive");
    }
  }
}

BigInt sum_of(std::span<const int> sizes) {
  BigInt total = 0;
  for (int s : sizes) total += s;
  return total;
}

MPoly rho_tail_product(std::span<const int> sizes) {
  MPoly product{BigInt(1)};
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    product *= rho_lambda(sizes[i]);
  }
  return product;
}

// lambda * |V| + n * a
MPoly mixed_weight(const BigInt& set_total, int extras) {
  MPoly poly;
  poly.add_term(Monomial::variable(kLambdaVar), set_total);
  poly.add_term(Monomial::variable(kExtraWeightVar), extras);
  return poly;
}

// Descending integer compositions of `total` into exactly `parts` parts.
void for_each_shape(int total, int parts,
                    const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> shape;
  std::function<void(int, int, int)> rec = [&](int remaining, int left,
                                               int max_part) {
    if (left == 0) {
      if (remaining == 0) fn(shape);
      return;
    }
    const int hi = std::min(max_part, remaining - (left - 1));
    const int lo = (remaining + left - 1) / left;
    for (int s = hi; s >= lo; --s) {
      shape.push_back(s);
      rec(remaining - s, left - 1, s);
      shape.pop_back();
    }
  };
  rec(total, parts, total);
}

// Number of set partitions of a ground set with the given block-size shape:
// ground! / (prod s_j! * prod multiplicity!).
BigInt shape_partition_count(int ground, const std::vector<int>& shape) {
  BigInt count = factorial(static_cast<unsigned>(ground));
  for (int s : shape) count /= factorial(static_cast<unsigned>(s));
  std::size_t i = 0;
  while (i < shape.size()) {
    std::size_t j = i;
    while (j < shape.size() && shape[j] == shape[i]) ++j;
    count /= factorial(static_cast<unsigned>(j - i));
    i = j;
  }
  return count;
}

// Sum over ordered injective tuples (j_1..j_q) of distinct block indices of
// prod_k block_sizes[j_k]^exponents[k].
BigInt assignment_sum(const std::vector<int>& block_sizes,
                      const std::vector<int>& exponents) {
  const int p = static_cast<int>(block_sizes.size());
  const int q = static_cast<int>(exponents.size());
  std::vector<bool> used(block_sizes.size(), false);
  std::function<BigInt(int)> rec = [&](int k) -> BigInt {
    if (k == q) return 1;
    BigInt total = 0;
    for (int j = 0; j < p; ++j) {
      if (used[j]) continue;
      used[j] = true;
      total += ipow(block_sizes[j], static_cast<unsigned>(exponents[k])) *
               rec(k + 1);
      used[j] = false;
    }
    return total;
  };
  return rec(0);
}

}  // namespace

MPoly rho_lambda(int set_size) {
  if (set_size < 0) {
    throw std::invalid_argument("rho_lambda: size must be nonnegative");
  }
  MPoly poly;
  for (int j = 1; j <= set_size; ++j) {
    poly.add_term(Monomial::variable(kLambdaVar, static_cast<unsigned>(j)),
                  binomial(static_cast<unsigned>(set_size),
                           static_cast<unsigned>(j)));
  }
  return poly;
}

BigInt rho_count(int set_size) {
  if (set_size < 0) {
    throw std::invalid_argument("rho_count: size must be nonnegative");
  }
  return ipow(2, static_cast<unsigned>(set_size)) - 1;
}

BigInt n_m_closed(std::span<const int> sizes) {
  check_sizes(sizes);
  const int m = static_cast<int>(sizes.size());
  if (m == 1) return 1;
  BigInt total = sizes[0];
  total *= ipow(sum_of(sizes), static_cast<unsigned>(m - 2));
  for (int i = 1; i < m; ++i) total *= rho_count(sizes[i]);
  return total;
}

CensusPolynomial q_closed(std::span<const int> sizes, int extras) {
  check_sizes(sizes);
  if (extras < 0) {
    throw std::invalid_argument("q_closed: extras must be >= 0");
  }
  const int m = static_cast<int>(sizes.size());
  const BigInt set_total = sum_of(sizes);
  if (extras == 0) {
    if (m == 1) return MPoly{BigInt(1)};
    MPoly result = rho_tail_product(sizes);
    result *= BigInt(sizes[0]) * ipow(set_total, static_cast<unsigned>(m - 2));
    return result;
  }
  MPoly result = MPoly::variable(kLambdaVar);
  result *= rho_tail_product(sizes);
  result *= mixed_weight(set_total, extras).pow(static_cast<unsigned>(extras - 1));
  result *= BigInt(sizes[0]) *
            ipow(set_total + extras, static_cast<unsigned>(m - 1));
  return result;
}

CensusPolynomial qtilde_closed(std::span<const int> sizes, int extras) {
  check_sizes(sizes);
  if (extras < 1) {
    throw std::invalid_argument("qtilde_closed: extras must be >= 1");
  }
  const int m = static_cast<int>(sizes.size());
  const BigInt set_total = sum_of(sizes);
  MPoly result = MPoly::variable(kLambdaVar);
  result *= rho_tail_product(sizes);
  result *= mixed_weight(set_total, extras).pow(static_cast<unsigned>(extras - 1));
  result *= BigInt(sizes[0]) * ipow(extras, static_cast<unsigned>(m - 1));
  return result;
}

CensusPolynomial qtilde_expansion(std::span<const int> sizes, int extras,
                                  ExpansionMode mode) {
  check_sizes(sizes);
  const int m = static_cast<int>(sizes.size());
  const int n = extras;
  if (m < 2 || n < 1) {
    throw std::invalid_argument("qtilde_expansion: need m >= 2 and extras >= 1");
  }
  const BigInt set_total = sum_of(sizes);

  MPoly inner;
  auto add_cell = [&](int p, const BigInt& coefficient) {
    inner.add_term(
        Monomial::variable(kLambdaVar, static_cast<unsigned>(p - 1)) *
            Monomial::variable(kExtraWeightVar, static_cast<unsigned>(n - p)),
        coefficient);
  };

  if (mode == ExpansionMode::Literal) {
    for (int q = 1; q <= m - 1; ++q) {
      PartitionStream subdivisions(m - 1, q);
      while (auto subdivision = subdivisions.next()) {
        const auto exponents = subdivision->block_sizes();
        for (int p = q; p <= n; ++p) {
          PartitionStream partitions(n, p);
          while (auto partition = partitions.next()) {
            const auto block_sizes = partition->block_sizes();
            InjectiveTupleStream tuples(p, q);
            while (auto tuple = tuples.next()) {
              BigInt coefficient = ipow(set_total, static_cast<unsigned>(p - 1));
              for (int k = 0; k < q; ++k) {
                coefficient *= ipow(block_sizes[(*tuple)[k] - 1],
                                    static_cast<unsigned>(exponents[k]));
              }
              for (int s : block_sizes) {
                coefficient *= ipow(s, static_cast<unsigned>(s - 1));
              }
              add_cell(p, coefficient);
            }
          }
        }
      }
    }
  } else {
    // Only block-size shapes matter: collapse both partition sums to shapes
    // weighted by the number of set partitions realizing each shape.
    for (int q = 1; q <= m - 1; ++q) {
      for_each_shape(m - 1, q, [&](const std::vector<int>& shape_j) {
        const BigInt count_j = shape_partition_count(m - 1, shape_j);
        for (int p = q; p <= n; ++p) {
          for_each_shape(n, p, [&](const std::vector<int>& shape_i) {
            BigInt coefficient = shape_partition_count(n, shape_i);
            coefficient *= count_j;
            coefficient *= assignment_sum(shape_i, shape_j);
            coefficient *= ipow(set_total, static_cast<unsigned>(p - 1));
            for (int s : shape_i) {
              coefficient *= ipow(s, static_cast<unsigned>(s - 1));
            }
            add_cell(p, coefficient);
          });
        }
      });
    }
  }

  MPoly prefactor = MPoly::variable(kLambdaVar);
  prefactor *= rho_tail_product(sizes);
  prefactor *= BigInt(sizes[0]);
  return prefactor * inner;
}

CensusPolynomial q_from_qtilde(std::span<const int> sizes, int extras) {
  check_sizes(sizes);
  if (extras < 1) {
    throw std::invalid_argument("q_from_qtilde: extras must be >= 1");
  }
  const int m = static_cast<int>(sizes.size());
  const BigInt set_total = sum_of(sizes);
  BigInt recombination = 0;
  for (int q = 1; q <= m; ++q) {
    recombination += binomial(static_cast<unsigned>(m - 1),
                              static_cast<unsigned>(q - 1)) *
                     ipow(set_total, static_cast<unsigned>(m - q)) *
                     ipow(extras, static_cast<unsigned>(q - 1));
  }
  MPoly result = MPoly::variable(kLambdaVar);
  result *= rho_tail_product(sizes);
  result *= mixed_weight(set_total, extras).pow(static_cast<unsigned>(extras - 1));
  result *= BigInt(sizes[0]) * recombination;
  return result;
}

}  // namespace rforest
