#include "rforest/partitions.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rforest {

SetPartition::SetPartition(int ground_size,
                           std::vector<std::vector<int>> blocks)
    : ground_size_(ground_size), blocks_(std::move(blocks)) {
  for (auto& block : blocks_) std::sort(block.begin(), block.end());
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  if (!valid()) {
    throw std::invalid_argument("SetPartition: blocks do not partition {1..m}");
  }
}

SetPartition SetPartition::from_rgs(std::span<const int> rgs,
                                    int block_count) {
  SetPartition part;
  part.ground_size_ = static_cast<int>(rgs.size());
  part.blocks_.resize(block_count);
  for (int i = 0; i < part.ground_size_; ++i) {
    part.blocks_[rgs[i]].push_back(i + 1);
  }
  return part;
}

std::vector<int> SetPartition::block_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(blocks_.size());
  for (const auto& block : blocks_) sizes.push_back(static_cast<int>(block.size()));
  return sizes;
}

bool SetPartition::valid() const {
  std::vector<bool> seen(static_cast<std::size_t>(ground_size_) + 1, false);
  int covered = 0;
  int prev_min = 0;
  for (const auto& block : blocks_) {
    if (block.empty()) return false;
    if (block.front() <= prev_min) return false;  // ascending block minima
    prev_min = block.front();
    int prev = 0;
    for (int e : block) {
      if (e < 1 || e > ground_size_ || e <= prev || seen[e]) return false;
      prev = e;
      seen[e] = true;
      ++covered;
    }
  }
  return covered == ground_size_;
}

std::string SetPartition::str() const {
  std::ostringstream out;
  for (const auto& block : blocks_) {
    out << '{';
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i > 0) out << ',';
      out << block[i];
    }
    out << '}';
  }
  return out.str();
}

PartitionStream::PartitionStream(int ground_size, int block_count)
    : m_(ground_size), p_(block_count) {
  if (m_ < 1 || p_ < 1 || p_ > m_) {
    throw std::invalid_argument("PartitionStream: need 1 <= p <= m");
  }
  rgs_.resize(m_);
  // Smallest string with exactly p blocks: zeros, then a forced ascent.
  for (int i = 0; i < m_; ++i) rgs_[i] = std::max(0, i - (m_ - p_));
}

std::optional<SetPartition> PartitionStream::next() {
  if (exhausted_) return std::nullopt;
  if (first_) {
    first_ = false;
    return SetPartition::from_rgs(rgs_, p_);
  }
  if (!advance()) {
    exhausted_ = true;
    return std::nullopt;
  }
  return SetPartition::from_rgs(rgs_, p_);
}

bool PartitionStream::advance() {
  std::vector<int> prefix_max(m_);
  prefix_max[0] = 0;
  for (int i = 1; i < m_; ++i) prefix_max[i] = std::max(prefix_max[i - 1], rgs_[i]);

  for (int i = m_ - 1; i >= 1; --i) {
    const int v = rgs_[i] + 1;
    if (v > prefix_max[i - 1] + 1 || v > p_ - 1) continue;
    const int bmax = std::max(prefix_max[i - 1], v);
    const int deficit = (p_ - 1) - bmax;  // new block values still needed
    if (deficit > m_ - 1 - i) continue;
    rgs_[i] = v;
    for (int j = i + 1; j < m_; ++j) {
      const int t = j - (m_ - deficit);
      rgs_[j] = t >= 0 ? bmax + 1 + t : 0;
    }
    return true;
  }
  return false;
}

InjectiveTupleStream::InjectiveTupleStream(int pool_size, int tuple_len)
    : p_(pool_size), q_(tuple_len) {
  if (p_ < 0 || q_ < 0 || q_ > p_) {
    throw std::invalid_argument("InjectiveTupleStream: need 0 <= q <= p");
  }
  entries_.resize(q_);
  used_.assign(static_cast<std::size_t>(p_) + 1, false);
  for (int i = 0; i < q_; ++i) {
    entries_[i] = i + 1;
    used_[i + 1] = true;
  }
}

std::optional<std::vector<int>> InjectiveTupleStream::next() {
  if (exhausted_) return std::nullopt;
  if (first_) {
    first_ = false;
    return entries_;
  }
  if (!advance()) {
    exhausted_ = true;
    return std::nullopt;
  }
  return entries_;
}

bool InjectiveTupleStream::advance() {
  for (int i = q_ - 1; i >= 0; --i) {
    used_[entries_[i]] = false;
    for (int v = entries_[i] + 1; v <= p_; ++v) {
      if (used_[v]) continue;
      entries_[i] = v;
      used_[v] = true;
      int fill = 1;
      for (int j = i + 1; j < q_; ++j) {
        while (used_[fill]) ++fill;
        entries_[j] = fill;
        used_[fill] = true;
      }
      return true;
    }
  }
  return false;
}

BigInt stirling2(int m, int p) {
  if (m < 0 || p < 0) {
    throw std::invalid_argument("stirling2: arguments must be nonnegative");
  }
  if (p > m) return 0;
  if (m == 0) return p == 0 ? 1 : 0;
  if (p == 0) return 0;
  std::vector<BigInt> row(static_cast<std::size_t>(p) + 1, 0);
  row[0] = 1;  // S(0,0)
  for (int n = 1; n <= m; ++n) {
    for (int k = std::min(n, p); k >= 1; --k) {
      row[k] = k * row[k] + row[k - 1];
    }
    row[0] = 0;
  }
  return row[p];
}

}  // namespace rforest
