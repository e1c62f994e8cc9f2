// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <fgent/ensemble.hpp>
#include <fgent/moments.hpp>

namespace {

void bm_closed_form_caseA(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto spec = fgent::EnsembleSpec::case_a(m, 3 * m);
  for (auto _ : state) benchmark::DoNotOptimize(fgent::moments_closed_form(spec));
}
BENCHMARK(bm_closed_form_caseA)->Arg(2)->Arg(16)->Arg(64);

void bm_closed_form_caseB(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto spec = fgent::EnsembleSpec::case_b(m, 3 * m, 2 * m);
  for (auto _ : state) benchmark::DoNotOptimize(fgent::moments_closed_form(spec));
}
BENCHMARK(bm_closed_form_caseB)->Arg(2)->Arg(16)->Arg(64);

void bm_asymptotic_corrected(benchmark::State& state) {
  fgent::AsymptoticPoint point;
  point.f1 = 0.25;
  point.f2 = 0.5;
  point.order = fgent::AsymptoticOrder::corrected;
  point.total_dim = 64;
  for (auto _ : state)
    benchmark::DoNotOptimize(fgent::variance_asymptotic(point, fgent::EnsembleCase::B));
}
BENCHMARK(bm_asymptotic_corrected);

}  // namespace
