#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rforest/algebra.hpp"

namespace rforest {

/// A partition of {1..m} into nonempty blocks. Blocks are sorted
/// internally and ordered by their minimum element, so the block containing
/// 1 is always block 0.
class SetPartition {
 public:
  SetPartition(int ground_size, std::vector<std::vector<int>> blocks);

  /// Fast path used by the enumerator: rgs[i] is the (0-based) block of
  /// element i+1, with first occurrences in increasing order.
  static SetPartition from_rgs(std::span<const int> rgs, int block_count);

  int ground_size() const { return ground_size_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  std::vector<int> block_sizes() const;

  bool valid() const;

  /// Canonical rendering, e.g. "{1,3}{2}".
  std::string str() const;

  bool operator==(const SetPartition& other) const = default;

 private:
  SetPartition() = default;
  int ground_size_ = 0;
  std::vector<std::vector<int>> blocks_;
};

/// Streams every partition of {1..m} into exactly p blocks, each exactly
/// once, in ascending restricted-growth-string order. O(m) state.
class PartitionStream {
 public:
  PartitionStream(int ground_size, int block_count);

  std::optional<SetPartition> next();

 private:
  bool advance();

  int m_;
  int p_;
  std::vector<int> rgs_;
  bool first_ = true;
  bool exhausted_ = false;
};

/// Streams all ordered tuples of tuple_len distinct values from {1..pool_size}
/// in lexicographic order; (pool, 0) yields the single empty tuple.
class InjectiveTupleStream {
 public:
  InjectiveTupleStream(int pool_size, int tuple_len);

  std::optional<std::vector<int>> next();

 private:
  bool advance();

  int p_;
  int q_;
  std::vector<int> entries_;
  std::vector<bool> used_;
  bool first_ = true;
  bool exhausted_ = false;
};

/// Stirling number of the second kind via S(n,k) = k*S(n-1,k) + S(n-1,k-1).
BigInt stirling2(int m, int p);

}  // namespace rforest
