// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <fgent/ensemble.hpp>
#include <fgent/sampler.hpp>

namespace {

void bm_matrix_caseB(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto spec = fgent::EnsembleSpec::case_b(m, 3 * m, 2 * m);
  for (auto _ : state)
    benchmark::DoNotOptimize(fgent::sample_matrix_caseB(spec, 64, 7));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(bm_matrix_caseB)->Arg(2)->Arg(4)->Arg(8);

void bm_mcmc_caseA(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto spec = fgent::EnsembleSpec::case_a(m, 2 * m);
  fgent::McmcTuning tuning;
  tuning.burn_in = 1000;
  for (auto _ : state)
    benchmark::DoNotOptimize(fgent::sample_mcmc(spec, 64, 7, tuning));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(bm_mcmc_caseA)->Arg(2)->Arg(4)->Arg(8);

void bm_estimate(benchmark::State& state) {
  const auto spec = fgent::EnsembleSpec::case_b(4, 12, 8);
  const auto batch = fgent::sample_matrix_caseB(spec, 4096, 11);
  for (auto _ : state) benchmark::DoNotOptimize(fgent::estimate(batch));
}
BENCHMARK(bm_estimate);

}  // namespace
