// Copyright 2026 The freqpath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "freqpath/interference.hpp"
#include "freqpath/oracle.hpp"
#include "freqpath/special_fn.hpp"
#include "freqpath/virtual_lab.hpp"

namespace {

using namespace freqpath;

ExperimentConfig sixty_km(int quad_nodes) {
  ExperimentConfig cfg = reference_config();
  cfg.link.shared.length_km = 30.0;
  cfg.solver.quad_nodes = quad_nodes;
  return cfg;
}

void BM_BesselRow(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bessel_row(2.8, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BesselRow)->Arg(13)->Arg(40);

void BM_PatternScan(benchmark::State& state) {
  const ExperimentConfig cfg = sixty_km(static_cast<int>(state.range(0)));
  const std::vector<double> grid = default_phase_grid();
  for (auto _ : state) benchmark::DoNotOptimize(pattern_scan(cfg, grid));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_PatternScan)->Arg(33)->Arg(65);

void BM_OracleProbability(benchmark::State& state) {
  const ExperimentConfig cfg = sixty_km(33);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_probability(cfg, 0.7));
}
BENCHMARK(BM_OracleProbability);

void BM_FitCounts(benchmark::State& state) {
  ExperimentConfig cfg = sixty_km(33);
  cfg.link.dcm_gdd_ps2 = 1320.0;
  const Pattern counts = simulate_counts(pattern_scan(cfg, default_phase_grid()), {1e4, 0.0, 1.0, 1});
  const FitParams init{1.1e4, 3.0, 2.4, 0.05, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(fit_bessel_pattern(counts, init));
}
BENCHMARK(BM_FitCounts);

}  // namespace

BENCHMARK_MAIN();
