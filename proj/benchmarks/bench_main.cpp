#include <benchmark/benchmark.h>

#include "freecairn/cairn.hpp"
#include "freecairn/freegroup.hpp"
#include "freecairn/intervals.hpp"
#include "freecairn/repsplit.hpp"
#include "freecairn/spectral.hpp"

using namespace freecairn;

static void BM_Ball(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ball(r));
}
BENCHMARK(BM_Ball)->DenseRange(4, 10, 2);

static void BM_Recognize(benchmark::State& state) {
  const auto& sys = IntervalSystem::standard();
  const auto I = sys.base_interval(static_cast<int>(state.range(0)));
  const auto& elements = I.elements();
  for (auto _ : state) benchmark::DoNotOptimize(sys.recognize(elements));
}
BENCHMARK(BM_Recognize)->Arg(6)->Arg(10)->Arg(12);

static void BM_TopEigenvalue(benchmark::State& state) {
  const auto op = cayley_adjacency(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(top_eigenvalue(op));
}
BENCHMARK(BM_TopEigenvalue)->Arg(4)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_Decompose(benchmark::State& state) {
  const auto c = build_graded(IntervalSystem::standard(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(c));
}
BENCHMARK(BM_Decompose)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
