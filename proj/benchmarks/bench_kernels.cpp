#include <benchmark/benchmark.h>

#include "rforest/closed_forms.hpp"
#include "rforest/forest.hpp"
#include "rforest/identity.hpp"
#include "rforest/partitions.hpp"

namespace {

using namespace rforest;

void BM_PartitionStream(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int p = static_cast<int>(state.range(1));
  for (auto _ : state) {
    PartitionStream stream(m, p);
    std::int64_t count = 0;
    while (auto part = stream.next()) count += part->block_count();
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_PartitionStream)->Args({10, 4})->Args({12, 5});

void BM_FilterOracle(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const int sets = static_cast<int>(state.range(1));
  VertexFamily family(std::vector<int>(sets, size));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_filter_count(family));
  }
}
BENCHMARK(BM_FilterOracle)->Args({2, 3})->Args({2, 4})->Args({3, 3});

void BM_FilterOracleParallel(benchmark::State& state) {
  VertexFamily family(std::vector<int>(4, 2));
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_filter_count(family, {}, workers));
  }
}
BENCHMARK(BM_FilterOracleParallel)->Arg(1)->Arg(2)->Arg(4);

void BM_ConstructiveOracle(benchmark::State& state) {
  const int sets = static_cast<int>(state.range(0));
  VertexFamily family(std::vector<int>(sets, 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_constructive_count(family));
  }
}
BENCHMARK(BM_ConstructiveOracle)->Arg(4)->Arg(6)->Arg(8);

void BM_CensusOracle(benchmark::State& state) {
  VertexFamily family({2, 2}, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_filter_census(family));
  }
}
BENCHMARK(BM_CensusOracle)->Arg(1)->Arg(2)->Arg(3);

void BM_IdentityLhs(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (int p = 1; p <= m; ++p) {
      benchmark::DoNotOptimize(lhs_eq1({m, p}));
    }
  }
}
BENCHMARK(BM_IdentityLhs)->Arg(5)->Arg(6)->Arg(7);

void BM_NumericIdentityPoint(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::vector<Rational> point(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) point[i] = Rational(i + 1, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lhs_eq1_values_at(point));
  }
}
BENCHMARK(BM_NumericIdentityPoint)->Arg(8)->Arg(10)->Arg(12);

void BM_MPolyMul(benchmark::State& state) {
  const int vars = static_cast<int>(state.range(0));
  MPoly sum;
  for (int i = 0; i < vars; ++i) {
    sum += MPoly::variable(static_cast<unsigned>(i));
  }
  const MPoly lhs = sum.pow(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lhs * lhs);
  }
}
BENCHMARK(BM_MPolyMul)->Arg(4)->Arg(6);

void BM_QtildeExpansion(benchmark::State& state) {
  const std::vector<int> sizes = {2, 2, 1};
  const int extras = static_cast<int>(state.range(0));
  const auto mode = state.range(1) == 0 ? ExpansionMode::Memoized
                                        : ExpansionMode::Literal;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qtilde_expansion(sizes, extras, mode));
  }
}
BENCHMARK(BM_QtildeExpansion)->Args({4, 0})->Args({4, 1})->Args({6, 0});

}  // namespace

BENCHMARK_MAIN();
