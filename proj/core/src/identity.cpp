#include "rforest/identity.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rforest/partitions.hpp"

namespace rforest {

namespace {

void check_instance(const IdentityInstance& inst) {
  if (inst.m < 1 || inst.p < 1 || inst.p > inst.m || inst.m > 31) {
    throw std::invalid_argument("IdentityInstance: need 1 <= p <= m <= 31");
  }
}

// Bitmask over variable indices 0..m-1 for each block of a partition of
// {1..m}.
std::vector<std::uint32_t> block_masks(const SetPartition& part) {
  std::vector<std::uint32_t> masks;
  masks.reserve(part.blocks().size());
  for (const auto& block : part.blocks()) {
    std::uint32_t mask = 0;
    for (int e : block) mask |= 1u << (e - 1);
    masks.push_back(mask);
  }
  return masks;
}

MPoly sum_of_variables(std::uint32_t mask) {
  MPoly sum;
  for (unsigned v = 0; mask != 0; ++v, mask >>= 1) {
    if (mask & 1u) sum += MPoly::variable(v);
  }
  return sum;
}

// Cache of (sum of the variables in `mask`)^exp, shared across the many
// partitions that reuse the same block.
class SubsetPowCache {
 public:
  const MPoly& get(std::uint32_t mask, unsigned exp) {
    auto key = std::make_pair(mask, exp);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    MPoly value = sum_of_variables(mask).pow(exp);
    return cache_.emplace(key, std::move(value)).first->second;
  }

 private:
  std::map<std::pair<std::uint32_t, unsigned>, MPoly> cache_;
};

}  // namespace

MPoly lhs_eq1(const IdentityInstance& inst) {
  check_instance(inst);
  SubsetPowCache pows;
  MPoly total;
  PartitionStream stream(inst.m, inst.p);
  while (auto part = stream.next()) {
    MPoly term{BigInt(1)};
    for (std::uint32_t mask : block_masks(*part)) {
      term *= pows.get(mask, static_cast<unsigned>(std::popcount(mask)) - 1);
    }
    total += term;
  }
  return total;
}

MPoly rhs_eq1(const IdentityInstance& inst) {
  check_instance(inst);
  const std::uint32_t full = (inst.m == 32) ? ~0u : ((1u << inst.m) - 1);
  MPoly result = sum_of_variables(full).pow(static_cast<unsigned>(inst.m - inst.p));
  result *= binomial(static_cast<unsigned>(inst.m - 1),
                     static_cast<unsigned>(inst.p - 1));
  return result;
}

Verdict verify_eq1(const IdentityInstance& inst) {
  MPoly diff = lhs_eq1(inst) - rhs_eq1(inst);
  return Verdict{diff.is_zero(), std::move(diff)};
}

Verdict verify_claim0(int m, int p) {
  if (m < 1 || m > 31 || p < 2 || p > m + 1) {
    throw std::invalid_argument("verify_claim0: need 2 <= p <= m+1, m <= 31");
  }
  SubsetPowCache pows;
  MPoly lhs;
  {
    PartitionStream stream(m, p - 1);
    while (auto part = stream.next()) {
      MPoly term{BigInt(1)};
      for (std::uint32_t mask : block_masks(*part)) {
        term *= pows.get(mask, static_cast<unsigned>(std::popcount(mask)) - 1);
      }
      lhs += term;
    }
  }
  if (p <= m) {  // for p == m+1 there is no p-block partition of {1..m}
    PartitionStream stream(m, p);
    while (auto part = stream.next()) {
      const auto masks = block_masks(*part);
      for (std::size_t l = 0; l < masks.size(); ++l) {
        MPoly term{BigInt(1)};
        for (std::size_t j = 0; j < masks.size(); ++j) {
          const auto size = static_cast<unsigned>(std::popcount(masks[j]));
          term *= pows.get(masks[j], j == l ? size : size - 1);
        }
        lhs += term;
      }
    }
  }
  const std::uint32_t full = (1u << m) - 1;
  MPoly rhs = sum_of_variables(full).pow(static_cast<unsigned>(m + 1 - p));
  rhs *= binomial(static_cast<unsigned>(m), static_cast<unsigned>(p - 1));
  MPoly diff = lhs - rhs;
  return Verdict{diff.is_zero(), std::move(diff)};
}

Verdict verify_claim(int m, int p, int n) {
  if (m < 1 || m > 31 || p < 1 || p > m || n < 1 || n > m + 1 - p) {
    throw std::invalid_argument(
        "verify_claim: need 1 <= p <= m <= 31 and 1 <= n <= m+1-p");
  }
  SubsetPowCache pows;
  MPoly lhs;
  PartitionStream stream(m, p);
  while (auto part = stream.next()) {
    const auto masks = block_masks(*part);
    for (std::size_t l = 0; l < masks.size(); ++l) {
      const auto size_l = static_cast<int>(std::popcount(masks[l]));
      if (size_l < n) continue;
      MPoly term{binomial(static_cast<unsigned>(size_l),
                          static_cast<unsigned>(n))};
      for (std::size_t j = 0; j < masks.size(); ++j) {
        const auto size = static_cast<unsigned>(std::popcount(masks[j]));
        term *= pows.get(masks[j], j == l ? size - n : size - 1);
      }
      lhs += term;
    }
  }
  const std::uint32_t full = (1u << m) - 1;
  MPoly rhs = sum_of_variables(full).pow(static_cast<unsigned>(m + 1 - p - n));
  rhs *= binomial(static_cast<unsigned>(m), static_cast<unsigned>(p - 1)) *
         binomial(static_cast<unsigned>(m + 1 - p), static_cast<unsigned>(n));
  MPoly diff = lhs - rhs;
  return Verdict{diff.is_zero(), std::move(diff)};
}

Verdict verify_multinomial_variant(int p, int m) {
  if (p < 1 || m < 2) {
    throw std::invalid_argument("verify_multinomial_variant: need p >= 1, m >= 2");
  }
  MPoly lhs;
  const int q_max = std::min(m - 1, p);
  for (int q = 1; q <= q_max; ++q) {
    PartitionStream stream(m - 1, q);
    while (auto part = stream.next()) {
      const auto sizes = part->block_sizes();
      InjectiveTupleStream tuples(p, q);
      while (auto tuple = tuples.next()) {
        std::vector<Monomial::Factor> factors;
        factors.reserve(sizes.size());
        for (int k = 0; k < q; ++k) {
          factors.push_back({static_cast<unsigned>((*tuple)[k] - 1),
                             static_cast<unsigned>(sizes[k])});
        }
        lhs.add_term(Monomial::from_factors(std::move(factors)), 1);
      }
    }
  }
  MPoly sum;
  for (int v = 0; v < p; ++v) sum += MPoly::variable(static_cast<unsigned>(v));
  MPoly rhs = sum.pow(static_cast<unsigned>(m - 1));
  MPoly diff = lhs - rhs;
  return Verdict{diff.is_zero(), std::move(diff)};
}

std::vector<Rational> lhs_eq1_values_at(std::span<const Rational> x) {
  const int m = static_cast<int>(x.size());
  if (m < 1 || m > 16) {
    throw std::invalid_argument("lhs_eq1_values_at: need 1 <= m <= 16");
  }
  // Clear denominators: every partition term is homogeneous of degree m-p,
  // so evaluating at the integer vector a_i = x_i * D and dividing by
  // D^(m-p) afterwards is exact.
  BigInt common_den = 1;
  for (const auto& xi : x) {
    common_den = boost::multiprecision::lcm(common_den,
                                            boost::multiprecision::denominator(xi));
  }
  std::vector<BigInt> a(m);
  for (int i = 0; i < m; ++i) {
    a[i] = boost::multiprecision::numerator(x[i]) *
           (common_den / boost::multiprecision::denominator(x[i]));
  }

  const std::uint32_t full = (1u << m) - 1;
  std::vector<BigInt> subset_sum(full + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int low = std::countr_zero(mask);
    subset_sum[mask] = subset_sum[mask & (mask - 1)] + a[low];
  }
  // f[S] = (sum over S)^(|S|-1)
  std::vector<BigInt> f(full + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    f[mask] = ipow(subset_sum[mask],
                   static_cast<unsigned>(std::popcount(mask)) - 1);
  }

  // g[S] for the current block count p; the block containing the lowest
  // element of S is split off to count each unordered partition once.
  std::vector<Rational> out(m);
  std::vector<BigInt> g = f;
  out[0] = Rational(g[full], ipow(common_den, static_cast<unsigned>(m - 1)));
  std::vector<BigInt> next(full + 1, 0);
  for (int p = 2; p <= m; ++p) {
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      BigInt acc = 0;
      if (std::popcount(mask) >= p) {
        const std::uint32_t low = mask & (0u - mask);
        const std::uint32_t rest = mask ^ low;
        // The block containing the lowest element is low | (rest ^ sub);
        // sub runs over every submask of rest and is what remains for the
        // other p-1 blocks (g[0] == 0, so the degenerate split drops out).
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
          acc += f[low | (rest ^ sub)] * g[sub];
          if (sub == 0) break;
        }
      }
      next[mask] = std::move(acc);
    }
    g.swap(next);
    out[p - 1] =
        Rational(g[full], ipow(common_den, static_cast<unsigned>(m - p)));
  }
  return out;
}

NumericOutcome verify_eq1_numeric(const NumericOptions& options) {
  if (options.max_m < 1 || options.max_m > 16 || options.points < 0) {
    throw std::invalid_argument("verify_eq1_numeric: bad options");
  }
  std::mt19937 rng(options.seed);
  NumericOutcome outcome;
  for (int t = 0; t < options.points; ++t) {
    const int m = 1 + t % options.max_m;
    std::vector<Rational> x(m);
    Rational sum = 0;
    for (int i = 0; i < m; ++i) {
      const int num = static_cast<int>(rng() % 19u) - 9;
      const int den = 1 + static_cast<int>(rng() % 9u);
      x[i] = Rational(num, den);
      sum += x[i];
    }
    const auto lhs_values = lhs_eq1_values_at(x);
    for (int p = 1; p <= m; ++p) {
      Rational rhs = Rational(binomial(static_cast<unsigned>(m - 1),
                                       static_cast<unsigned>(p - 1)));
      for (int e = 0; e < m - p; ++e) rhs *= sum;
      ++outcome.instances_checked;
      if (lhs_values[p - 1] != rhs) {
        outcome.all_equal = false;
        if (outcome.first_failure.empty()) {
          std::ostringstream msg;
          msg << "m=" << m << " p=" << p << " point=(";
          for (int i = 0; i < m; ++i) {
            if (i > 0) msg << ',';
            msg << x[i].str();
          }
          msg << ")";
          outcome.first_failure = msg.str();
        }
      }
    }
    ++outcome.points_checked;
  }
  return outcome;
}

}  // namespace rforest
