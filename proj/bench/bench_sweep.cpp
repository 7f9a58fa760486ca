#include <benchmark/benchmark.h>

#include "onsager/sweep.hpp"

namespace {

onsager::SweepOptions options_for(int index, int steps) {
  onsager::SweepOptions o;
  static constexpr struct {
    int d;
    double m;
    double lo;
    double hi;
  } kCases[] = {{2, 0.5, 4.0, 12.0}, {3, 0.25, 8.0, 20.0}, {5, 0.3, 14.0, 24.0}};
  o.d = kCases[index].d;
  o.m = kCases[index].m;
  o.kappa_min = kCases[index].lo;
  o.kappa_max = kCases[index].hi;
  o.steps = steps;
  return o;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto options = options_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(onsager::sweep_serial(options));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto options = options_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(onsager::sweep_parallel(options));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->ArgsProduct({{0, 1, 2}, {64}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->ArgsProduct({{0, 1, 2}, {64}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
