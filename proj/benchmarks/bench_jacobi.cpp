// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <fgent/jacobi.hpp>

namespace {

void bm_gauss_jacobi_rule(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(fgent::gauss_jacobi_rule(order, 1.5, 0.5));
}
BENCHMARK(bm_gauss_jacobi_rule)->Arg(40)->Arg(120)->Arg(300);

void bm_jacobi_eval(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(fgent::jacobi_eval(k, 2.0, 1.0, 0.37));
}
BENCHMARK(bm_jacobi_eval)->Arg(8)->Arg(40);

void bm_jacobi_eval_upto(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(fgent::jacobi_eval_upto(k, 2.0, 1.0, 0.37));
}
BENCHMARK(bm_jacobi_eval_upto)->Arg(8)->Arg(40);

}  // namespace
