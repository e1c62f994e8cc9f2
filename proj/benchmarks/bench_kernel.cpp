// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <fgent/ensemble.hpp>
#include <fgent/kernel.hpp>

namespace {

void bm_kernel_context(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto spec = fgent::EnsembleSpec::case_b(m, 3 * m, 2 * m);
  for (auto _ : state) benchmark::DoNotOptimize(fgent::make_kernel_context(spec));
}
BENCHMARK(bm_kernel_context)->Arg(2)->Arg(8)->Arg(32);

void bm_kernel_eval(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto spec = fgent::EnsembleSpec::case_b(m, 3 * m, 2 * m);
  const auto ctx = fgent::make_kernel_context(spec);
  for (auto _ : state) benchmark::DoNotOptimize(fgent::kernel_eval(ctx, 0.21, -0.4));
}
BENCHMARK(bm_kernel_eval)->Arg(2)->Arg(8)->Arg(32);

void bm_density_one_point(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto spec = fgent::EnsembleSpec::case_a(m, 2 * m);
  const auto ctx = fgent::make_kernel_context(spec);
  for (auto _ : state) benchmark::DoNotOptimize(fgent::density_one_point(ctx, 0.63));
}
BENCHMARK(bm_density_one_point)->Arg(2)->Arg(8)->Arg(32);

}  // namespace
