#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "rforest/partitions.hpp"

using namespace rforest;

namespace {

std::vector<SetPartition> collect(int m, int p) {
  std::vector<SetPartition> out;
  PartitionStream stream(m, p);
  while (auto part = stream.next()) out.push_back(*part);
  return out;
}

// Independent Bell-number oracle via the Bell triangle.
BigInt bell_triangle(int m) {
  std::vector<BigInt> row = {1};
  for (int i = 1; i <= m; ++i) {
    std::vector<BigInt> next = {row.back()};
    for (const BigInt& value : row) next.push_back(next.back() + value);
    row = std::move(next);
  }
  return row.front();
}

BigInt falling_factorial(int p, int q) {
  BigInt result = 1;
  for (int i = 0; i < q; ++i) result *= p - i;
  return result;
}

}  // namespace

TEST_SUITE("partitions") {

TEST_CASE("two-block partitions of a 3-set") {
  const auto parts = collect(3, 2);
  REQUIRE(parts.size() == 3);
  // Ascending restricted-growth-string order.
  CHECK(parts[0].str() == "{1,2}{3}");
  CHECK(parts[1].str() == "{1,3}{2}");
  CHECK(parts[2].str() == "{1}{2,3}");
}

TEST_CASE("degenerate block counts") {
  for (int m = 1; m <= 6; ++m) {
    const auto singletons = collect(m, m);
    REQUIRE(singletons.size() == 1);
    CHECK(singletons[0].block_count() == m);
    const auto whole = collect(m, 1);
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].blocks()[0].size() == static_cast<std::size_t>(m));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(PartitionStream(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(PartitionStream(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(PartitionStream(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(stirling2(-1, 2), std::invalid_argument);
}

TEST_CASE("stirling numbers") {
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(3, 0) == 0);
  CHECK(stirling2(3, 5) == 0);
  for (int m = 1; m <= 8; ++m) CHECK(stirling2(m, m) == 1);
}

TEST_CASE("enumeration count matches stirling2 and yields no duplicates") {
  for (int m = 1; m <= 9; ++m) {
    BigInt total = 0;
    for (int p = 1; p <= m; ++p) {
      std::set<std::string> seen;
      PartitionStream stream(m, p);
      BigInt count = 0;
      while (auto part = stream.next()) {
        CHECK(part->valid());
        CHECK(part->block_count() == p);
        CHECK(seen.insert(part->str()).second);
        ++count;
      }
      CHECK(count == stirling2(m, p));
      total += count;
    }
    CHECK(total == bell_triangle(m));
  }
}

TEST_CASE("injective tuples of a 3-pool") {
  InjectiveTupleStream stream(3, 2);
  std::vector<std::vector<int>> tuples;
  while (auto tuple = stream.next()) tuples.push_back(*tuple);
  const std::vector<std::vector<int>> expected = {
      {1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}};
  CHECK(tuples == expected);
}

TEST_CASE("injective tuple edge cases") {
  InjectiveTupleStream empty(4, 0);
  auto first = empty.next();
  REQUIRE(first.has_value());
  CHECK(first->empty());
  CHECK_FALSE(empty.next().has_value());

  InjectiveTupleStream full(2, 2);
  CHECK(*full.next() == std::vector<int>{1, 2});
  CHECK(*full.next() == std::vector<int>{2, 1});
  CHECK_FALSE(full.next().has_value());

  CHECK_THROWS_AS(InjectiveTupleStream(2, 3), std::invalid_argument);
}

TEST_CASE("injective tuple counts are falling factorials") {
  for (int p = 0; p <= 6; ++p) {
    for (int q = 0; q <= p; ++q) {
      InjectiveTupleStream stream(p, q);
      BigInt count = 0;
      std::set<std::vector<int>> seen;
      while (auto tuple = stream.next()) {
        CHECK(seen.insert(*tuple).second);
        ++count;
      }
      CHECK(count == falling_factorial(p, q));
    }
  }
}

}  // TEST_SUITE
