#pragma once

#include <span>
#include <string>
#include <vector>

#include "rforest/algebra.hpp"

namespace rforest {

/// One cell of the verification grid: m formal variables x_1..x_m
/// (variable indices 0..m-1) partitioned into p blocks.
struct IdentityInstance {
  int m = 1;
  int p = 1;
};

/// Result of a symbolic equality check. `difference` is lhs - rhs and is
/// kept for diagnostics; it is zero exactly when the check passed.
struct Verdict {
  bool equal = false;
  MPoly difference;
  explicit operator bool() const { return equal; }
};

/// Sum over all partitions of {1..m} into p blocks of
/// prod_j (sum of the block's variables)^(block size - 1), fully expanded.
MPoly lhs_eq1(const IdentityInstance& inst);

/// C(m-1, p-1) * (x_1 + ... + x_m)^(m-p), fully expanded.
MPoly rhs_eq1(const IdentityInstance& inst);

Verdict verify_eq1(const IdentityInstance& inst);

/// The p-1/p two-sum identity used as the n=0 induction step:
/// sum over (p-1)-block partitions of prod (block sum)^(size-1)
/// + sum_l over p-block partitions of (block_l sum)^(size_l) * prod_{j!=l} ...
/// == C(m, p-1) * (sum x)^(m+1-p).  Requires 2 <= p <= m+1.
Verdict verify_claim0(int m, int p);

/// The binomial-weighted identity used for 1 <= n <= m+1-p:
/// sum_l over p-block partitions with |block_l| >= n of
/// C(|block_l|, n) * (block_l sum)^(|block_l|-n) * prod_{j!=l} (...)^(size-1)
/// == C(m, p-1) * C(m+1-p, n) * (sum x)^(m+1-p-n).
Verdict verify_claim(int m, int p, int n);

/// Multinomial-style expansion over block subdivisions: summing
/// prod_k x_{j_k}^{|J_k|} over q-block partitions of {1..m-1} and injective
/// q-tuples (j_k) from {1..p} reproduces (x_1 + ... + x_p)^(m-1).
Verdict verify_multinomial_variant(int p, int m);

/// Exact value of the eq-1 left side at a rational point, for every block
/// count p = 1..m at once (index p-1). Computed by a subset DP over the
/// 2^m variable subsets, so it does not share the partition-stream path
/// used by the symbolic builder.
std::vector<Rational> lhs_eq1_values_at(std::span<const Rational> x);

struct NumericOptions {
  int max_m = 12;
  int points = 100;
  unsigned seed = 0;
};

struct NumericOutcome {
  bool all_equal = true;
  int points_checked = 0;
  long instances_checked = 0;
  std::string first_failure;  // empty when all_equal
};

/// Seeded random rational spot checks of eq 1: each point draws one m in
/// 1..max_m and checks every p at that m exactly.
NumericOutcome verify_eq1_numeric(const NumericOptions& options);

}  // namespace rforest
