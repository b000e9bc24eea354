// Copyright 2026 The sparselab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "sparselab/experiments.hpp"
#include "sparselab/graph.hpp"
#include "sparselab/sampling.hpp"
#include "sparselab/spectra.hpp"
#include "sparselab/types_chains.hpp"

namespace {

using namespace sparselab;

ComplexMatrix shifted(int n) {
  const MatrixSample a = sample_matrix(n, 10.0 / n, 2.0, EntryDistribution::rademacher(), 7);
  return shift_and_scale(a, Complex(0.0, 1.0), ScaleMode::raw).values;
}

void BM_ColumnDistances(benchmark::State& state) {
  const Exec exec = state.range(1) ? Exec::parallel : Exec::serial;
  const ComplexMatrix b = shifted(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(column_distances(b, exec));
}
BENCHMARK(BM_ColumnDistances)->ArgsProduct({{64, 128}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ChainCensus(benchmark::State& state) {
  const Exec exec = state.range(1) ? Exec::parallel : Exec::serial;
  const int n = static_cast<int>(state.range(0));
  const MatrixSample a = sample_matrix(n, 10.0 / n, 2.0, EntryDistribution::rademacher(), 11);
  const ShiftedMatrix b = shift_and_scale(a, Complex(0.0, 1.0), ScaleMode::raw);
  const BipartiteDigraph g = build_graph(b, 2.0);
  const TypePartition p = classify_types(g, default_census_k(10.0, 2.0));
  for (auto _ : state) benchmark::DoNotOptimize(chain_census(g, p, 3, 10'000'000, exec));
}
BENCHMARK(BM_ChainCensus)->ArgsProduct({{500, 1000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SminSurvey(benchmark::State& state) {
  const Exec exec = state.range(0) ? Exec::parallel : Exec::serial;
  const ExperimentConfig cfg = parse_config("kind=smin_survey n=120 p=0.1 alpha=2 z=0+1i trials=8 master_seed=3");
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg, exec));
}
BENCHMARK(BM_SminSurvey)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BTSuccess(benchmark::State& state) {
  const Exec exec = state.range(0) ? Exec::parallel : Exec::serial;
  const ExperimentConfig cfg =
      parse_config("kind=bt_success n=500 bt_k=50 eta=0.5 rho=1 c_tilde=1 trials=200 master_seed=5");
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg, exec));
}
BENCHMARK(BM_BTSuccess)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
