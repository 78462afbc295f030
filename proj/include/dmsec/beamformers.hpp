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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dmsec/array_channel.hpp"
#include "dmsec/numeric_solvers.hpp"
#include "dmsec/secrecy_metrics.hpp"

namespace dmsec {

enum class Method { max_sr, leakage, nsp };

std::string_view to_string(Method method);
/// Throws std::invalid_argument on an unknown tag.
Method method_from_string(std::string_view tag);

struct BeamformerSolution {
  Precoder precoder;
  AnProjection an;
  double secrecy_rate;
  Method method;
  /// Set when the desired and eavesdropper channels coincide; no iteration
  /// was attempted and the secrecy rate is zero.
  bool degenerate = false;
};

struct Initialization {
  enum class Kind { leakage, random };
  Kind kind = Kind::leakage;
  std::uint64_t seed = 0;

  static Initialization leakage() { return {Kind::leakage, 0}; }
  static Initialization random(std::uint64_t seed) { return {Kind::random, seed}; }
};

/// Outer-loop history of the alternating solver. Entry 0 is the
/// initialization, so `sr_per_iteration.size()` is the iteration count i of
/// the final state.
struct ConvergenceTrace {
  enum class Termination { tolerance, max_iter };

  std::vector<double> sr_per_iteration;         // clamped, max{0, R_d - R_e}
  std::vector<double> unclamped_per_iteration;  // R_d - R_e
  std::vector<int> inner_gpi_iterations;        // one per AN update
  Initialization init;
  Termination terminated_by = Termination::max_iter;

  int iterations() const { return static_cast<int>(sr_per_iteration.size()); }
};

std::string_view to_string(ConvergenceTrace::Termination t);

struct AisOptions {
  double delta = 1e-4;  // bits/s/Hz, on the unclamped secrecy rate
  int max_outer = 50;
  double gpi_tol = 1e-8;
  int gpi_max_iter = 500;
  RatioProductProblem::Structure structure = RatioProductProblem::Structure::kron_block;
};

/// CSLNR-optimal precoder: top generalized eigenvector of
/// (H_d, H_e + sigma^2/(b1^2 Ps) I).
Precoder init_precoder_leakage(const Scenario& scenario, const PowerProfile& p);

/// ANLNR-optimal AN projection. The Kronecker operator has a degenerate top
/// eigenspace, so every column is set to the block-level top eigenvector u of
/// (H_e, H_d + sigma^2/(b2^2 Ps) I), scaled by 1/sqrt(N-1).
/// Throws std::invalid_argument when beta2 = 0.
AnProjection init_an_leakage(const Scenario& scenario, const PowerProfile& p);

/// Standard complex Gaussian precoder and AN matrix, normalized.
std::pair<Precoder, AnProjection> random_solution(const Scenario& scenario,
                                                  std::uint64_t seed);

/// GPI update of P_AN for fixed v_d, started from `an_init`. The secrecy
/// rate never drops below its value at `an_init`. If `report` is non-null it
/// receives the inner solver report.
AnProjection optimize_an_fixed_precoder(const Scenario& scenario, const PowerProfile& p,
                                        const Precoder& v, const AnProjection& an_init,
                                        const AisOptions& options = {},
                                        GpiReport* report = nullptr);

/// Globally optimal v_d for fixed P_AN: top generalized eigenvector of
/// (H_d + a_d I, H_e + a_e I).
Precoder optimize_precoder_fixed_an(const Scenario& scenario, const PowerProfile& p,
                                    const AnProjection& an);

/// Alternating maximization of the secrecy rate (AN step, then precoder
/// step) until the unclamped rate changes by less than options.delta.
std::pair<BeamformerSolution, ConvergenceTrace> solve_max_sr(
    const Scenario& scenario, const PowerProfile& p,
    Initialization init = Initialization::leakage(), const AisOptions& options = {});

/// Null-space projection baseline: matched-filter precoder, AN spanning the
/// orthogonal complement of h_d.
BeamformerSolution solve_nsp(const Scenario& scenario, const PowerProfile& p);

/// Leakage baseline: the (init_precoder_leakage, init_an_leakage) pair.
BeamformerSolution solve_leakage(const Scenario& scenario, const PowerProfile& p);

}  // namespace dmsec
