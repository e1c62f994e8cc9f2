// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <fgent/specfun.hpp>

namespace {

void bm_digamma(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) + 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(fgent::digamma(x));
}
BENCHMARK(bm_digamma)->Arg(1)->Arg(20)->Arg(1000);

void bm_trigamma(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) + 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(fgent::trigamma(x));
}
BENCHMARK(bm_trigamma)->Arg(1)->Arg(20)->Arg(1000);

void bm_log_gamma_ratio(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        fgent::log_gamma_ratio({k + 1.5, k + 2.5}, {k + 0.5, k + 3.5}));
}
BENCHMARK(bm_log_gamma_ratio)->Arg(2)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
