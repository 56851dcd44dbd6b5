// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "ghzcert/certificate_grid.hpp"
#include "ghzcert/protocol_sim.hpp"
#include "ghzcert/sweep.hpp"

namespace {

using namespace ghzcert;

const CertificateKernel& kernel() {
  static const CertificateKernel k(mermin_functional(), JordanBasis::xy());
  return k;
}

const std::vector<JordanPoint>& grid() {
  static const std::vector<JordanPoint> g = angle_grid(12, true);
  return g;
}

void BM_CertificatePoint(benchmark::State& state) {
  const JordanPoint p{{0.1, 0.4, 0.9, 1.3}};
  for (auto _ : state) benchmark::DoNotOptimize(kernel().min_eig(0.2, p));
}
BENCHMARK(BM_CertificatePoint);

void BM_GridMinSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(grid_min_serial(kernel(), grid(), 0.2));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid().size()));
}
BENCHMARK(BM_GridMinSerial)->Unit(benchmark::kMillisecond);

void BM_GridMinParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(grid_min_parallel(kernel(), grid(), 0.2));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid().size()));
}
BENCHMARK(BM_GridMinParallel)->Unit(benchmark::kMillisecond);

void simulate(benchmark::State& state, bool parallel) {
  const NonlocalGame g = to_game(mermin_functional());
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate_rounds(SourceModel{IidNoisy{0.05}}, g, g.functional.ideal_settings, n, 1, parallel));
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_SimulateSerial(benchmark::State& state) { simulate(state, false); }
void BM_SimulateParallel(benchmark::State& state) { simulate(state, true); }
BENCHMARK(BM_SimulateSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateParallel)->Arg(100000)->Unit(benchmark::kMillisecond);

void sweep_bench(benchmark::State& state, bool parallel) {
  SweepOptions o;
  o.panel = Panel::kRight;
  o.operators = {Operator::kMermin, Operator::kBaccari, Operator::kZhao};
  o.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(sweep(o));
}

void BM_SweepSerial(benchmark::State& state) { sweep_bench(state, false); }
void BM_SweepParallel(benchmark::State& state) { sweep_bench(state, true); }
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
