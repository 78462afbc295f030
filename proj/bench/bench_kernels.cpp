// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The dmsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference versus OpenMP BER kernel, and dense versus
// Kronecker-block GPI.

#include <benchmark/benchmark.h>

#include "dmsec/beamformers.hpp"
#include "dmsec/link_sim.hpp"

namespace {

using namespace dmsec;

Scenario reference_scenario(int n) {
  return Scenario(ArrayConfig(n, 0.5), deg_to_rad(45.0), deg_to_rad(70.0));
}

LinkConfig link_config(int symbols) {
  LinkConfig cfg;
  cfg.num_symbols = symbols;
  cfg.seed = 7;
  for (int deg = 0; deg <= 180; deg += 5) cfg.angle_grid.push_back(deg_to_rad(deg));
  return cfg;
}

void BM_BerSweepSerial(benchmark::State& state) {
  const Scenario sc = reference_scenario(8);
  const PowerProfile p = PowerProfile::from_snr_db(10.0, 0.9, 0.1);
  const BeamformerSolution sol = solve_nsp(sc, p);
  const LinkConfig cfg = link_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ber_sweep_serial(sol, sc, p, cfg));
}

void BM_BerSweepParallel(benchmark::State& state) {
  const Scenario sc = reference_scenario(8);
  const PowerProfile p = PowerProfile::from_snr_db(10.0, 0.9, 0.1);
  const BeamformerSolution sol = solve_nsp(sc, p);
  const LinkConfig cfg = link_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ber_sweep(sol, sc, p, cfg));
}

void run_an_step(benchmark::State& state, RatioProductProblem::Structure structure) {
  const int n = static_cast<int>(state.range(0));
  const Scenario sc = reference_scenario(n);
  const PowerProfile p = PowerProfile::from_snr_db(10.0, 0.9, 0.1);
  const auto [v, an] = random_solution(sc, 3);
  AisOptions opts;
  opts.structure = structure;
  opts.gpi_max_iter = 50;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_an_fixed_precoder(sc, p, v, an, opts));
  }
}

void BM_GpiDense(benchmark::State& state) {
  run_an_step(state, RatioProductProblem::Structure::dense);
}

void BM_GpiKronBlock(benchmark::State& state) {
  run_an_step(state, RatioProductProblem::Structure::kron_block);
}

}  // namespace

BENCHMARK(BM_BerSweepSerial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BerSweepParallel)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GpiDense)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GpiKronBlock)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
