// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <fgent/ensemble.hpp>
#include <fgent/identities.hpp>
#include <fgent/oracles.hpp>

namespace {

void bm_variance_summation(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto spec = fgent::EnsembleSpec::case_b(m, 3 * m, 2 * m);
  for (auto _ : state) benchmark::DoNotOptimize(fgent::variance_summation(spec));
}
BENCHMARK(bm_variance_summation)->Arg(2)->Arg(6)->Arg(10);

void bm_variance_quadrature(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto spec = fgent::EnsembleSpec::case_a(m, 2 * m);
  const int order = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(fgent::variance_quadrature(spec, order));
}
BENCHMARK(bm_variance_quadrature)->Args({2, 120})->Args({6, 120})->Args({6, 300});

void bm_identity_sweep_single(benchmark::State& state) {
  const fgent::IdentityId one[] = {fgent::IdentityId::B7};
  for (auto _ : state)
    benchmark::DoNotOptimize(fgent::sweep(one, 25, 7, 1e-8, 1));
}
BENCHMARK(bm_identity_sweep_single);

}  // namespace
