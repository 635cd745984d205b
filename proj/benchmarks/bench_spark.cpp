#include <benchmark/benchmark.h>

#include "spark/buchberger.hpp"
#include "spark/gb_violator.hpp"
#include "spark/universe.hpp"

using namespace spark;

namespace {

GeneratorSet example() { return make_generator_set(make_ring(3), {"x1^2 - x2", "x1^3 - x3"}); }

GeneratorSet twisted_cubic() {
  return make_generator_set(make_ring(4), {"x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"});
}

ToricMatrix twisted_cubic_matrix() { return ToricMatrix(2, 4, {3, 2, 1, 0, 0, 1, 2, 3}); }

void BM_Buchberger(benchmark::State& state) {
  const GeneratorSet f = state.range(0) == 0 ? example() : twisted_cubic();
  for (auto _ : state) benchmark::DoNotOptimize(reduced_groebner_basis(f));
}
BENCHMARK(BM_Buchberger)->Arg(0)->Arg(1);

void BM_ToricUniverse(benchmark::State& state) {
  const RingPtr r = make_ring(4);
  const auto d = static_cast<std::size_t>(state.range(0));
  std::size_t size = 0;
  for (auto _ : state) size = toric_universe(twisted_cubic_matrix(), d, r).size();
  state.counters["H"] = static_cast<double>(size);
}
BENCHMARK(BM_ToricUniverse)->DenseRange(2, 5);

void BM_SparkBasis(benchmark::State& state) {
  const auto space = oracle_universe(example(), static_cast<std::size_t>(state.range(0)), 1);
  std::uint64_t seed = 0;
  double queries = 0;
  for (auto _ : state) {
    const SparkBasisResult r = spark_basis(space, 3, ++seed);
    queries += static_cast<double>(r.stats.primitive_queries);
  }
  state.counters["H"] = static_cast<double>(space.size());
  state.counters["queries"] = benchmark::Counter(queries, benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_SparkBasis)->RangeMultiplier(4)->Range(100, 6400)->Unit(benchmark::kMicrosecond);

void BM_PrimitiveQuery(benchmark::State& state) {
  const auto space = oracle_universe(example(), 1000, 2);
  const Subset basis{0, 1, 2};
  ElementId h = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(space.in_violator_set(h, basis));
    h = (h + 1) % space.size();
  }
}
BENCHMARK(BM_PrimitiveQuery);

}  // namespace

BENCHMARK_MAIN();
