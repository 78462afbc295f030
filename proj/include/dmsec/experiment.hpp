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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmsec/beamformers.hpp"
#include "dmsec/link_sim.hpp"

namespace dmsec {

/// Malformed or invalid experiment configuration. The message starts with
/// "<source>:<line>:" whenever the offending location is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Experiment parameters. Angles are in degrees and power-allocation
/// factors are given as squares, mirroring the usual parameter tables.
struct ExperimentConfig {
  int num_elements = 8;
  double spacing_over_wavelength = 0.5;
  double theta_d_deg = 45.0;
  double theta_e_deg = 70.0;
  double beta1_sq = 0.9;
  double beta2_sq = 0.1;
  double noise_var = 1.0;
  std::vector<double> snr_db{0.0, 5.0, 10.0, 15.0};

  double delta = 1e-4;
  int max_outer = 50;
  Initialization::Kind init = Initialization::Kind::leakage;
  int random_seeds = 20;
  double gpi_tol = 1e-8;
  int gpi_max_iter = 500;
  double converge_snr_db = 10.0;

  int num_symbols = 20000;
  double link_snr_db = 10.0;
  double angle_start_deg = 0.0;
  double angle_stop_deg = 180.0;
  double angle_step_deg = 1.0;

  std::optional<std::uint64_t> seed;

  Scenario scenario() const;
  PowerProfile power(double snr_db) const;
  AisOptions ais_options() const;
  /// Inclusive grid start, start + step, ..., <= stop (radians).
  std::vector<double> angle_grid() const;
  /// Seed in effect, 1 when unset.
  std::uint64_t effective_seed() const { return seed.value_or(1); }
};

/// Parse and validate a JSON config; `source` names it in error messages.
ExperimentConfig parse_config(const std::string& text, const std::string& source);
ExperimentConfig load_config(const std::string& path);

struct ExperimentRow {
  Method method;
  std::string sweep_var;
  double sweep_value;
  std::string metric;
  double value;
  std::uint64_t seed;
};

/// Orders rows by (method, sweep_var, metric, seed, sweep_value).
void sort_rows(std::vector<ExperimentRow>& rows);

/// Header `method,sweep_var,sweep_value,metric,value,seed`; doubles in
/// shortest round-trip form.
void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

/// JSON array of row objects, each carrying `timestamp` as metadata.
void write_json(std::ostream& out, const std::vector<ExperimentRow>& rows,
                const std::string& timestamp);

/// Shortest round-trip decimal representation.
std::string format_double(double value);

/// Solution snapshot for re-validation: complex vectors are interleaved
/// (re, im) pairs, matrices row-major.
struct SolutionRecord {
  Method method;
  double snr_db;
  BeamformerSolution solution;
};

struct SnrSweepResult {
  std::vector<ExperimentRow> rows;
  std::vector<SolutionRecord> solutions;
};

/// Secrecy rate of every method at every configured SNR. A failing solve
/// becomes a `solver_error` row and the sweep continues.
SnrSweepResult run_sr_vs_snr(const ExperimentConfig& cfg);

struct ConvergenceResult {
  std::vector<ExperimentRow> rows;
  ConvergenceTrace leakage;
  std::vector<ConvergenceTrace> random;
  std::vector<std::uint64_t> random_seeds;
};

/// Alternating-solver traces at converge_snr_db for the leakage initialization
/// and for random initializations seeded seed, seed + 1, ...
ConvergenceResult run_convergence(const ExperimentConfig& cfg);

struct BerSweepResult {
  std::vector<ExperimentRow> rows;
  std::vector<BerCurve> curves;  // max_sr, leakage, nsp
  std::vector<BeamformerSolution> solutions;
};

/// BER versus direction for all three methods at link_snr_db.
BerSweepResult run_ber_sweep(const ExperimentConfig& cfg);

/// JSON dump helpers.
std::string solution_to_json(const ExperimentConfig& cfg, const SolutionRecord& record);
std::string solutions_to_json(const ExperimentConfig& cfg,
                              const std::vector<SolutionRecord>& records);

/// Entry point of the `dmsec` command-line tool. Returns the process exit
/// status: 0 success, 2 configuration or usage error, 3 numerical failure.
int cli_main(int argc, char** argv);

}  // namespace dmsec
