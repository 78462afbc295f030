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

#include "dmsec/beamformers.hpp"

#include <cmath>

#include "dmsec/rng.hpp"

namespace dmsec {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::max_sr: return "max_sr";
    case Method::leakage: return "leakage";
    case Method::nsp: return "nsp";
  }
  return "unknown";
}

Method method_from_string(std::string_view tag) {
  if (tag == "max_sr") return Method::max_sr;
  if (tag == "leakage") return Method::leakage;
  if (tag == "nsp") return Method::nsp;
  throw std::invalid_argument("unknown method '" + std::string(tag) + "'");
}

std::string_view to_string(ConvergenceTrace::Termination t) {
  return t == ConvergenceTrace::Termination::tolerance ? "tolerance" : "max_iter";
}

namespace {

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

// Orthonormal basis of the orthogonal complement of h (N x (N-1)).
CMatrix null_space_basis(const CVector& h) {
  const Eigen::Index n = h.size();
  const CMatrix column = h;
  Eigen::HouseholderQR<CMatrix> qr(column);
  const CMatrix q = qr.householderQ() * identity(static_cast<int>(n));
  return q.rightCols(n - 1);
}

bool channels_coincide(const Scenario& scenario) {
  const CVector h_d = steering_vector(scenario.array(), scenario.theta_d());
  const CVector h_e = steering_vector(scenario.array(), scenario.theta_e());
  return std::norm(h_d.dot(h_e)) >= 1.0 - 1e-12;
}

}  // namespace

Precoder init_precoder_leakage(const Scenario& scenario, const PowerProfile& p) {
  const int n = scenario.num_elements();
  const CMatrix gram_d = channel_gram(scenario.array(), scenario.theta_d());
  const CMatrix gram_e = channel_gram(scenario.array(), scenario.theta_e());
  const double shift = p.noise_var() / (p.beta1_sq() * p.total_power());
  return Precoder(largest_generalized_eigvec(gram_d, gram_e + shift * identity(n)));
}

AnProjection init_an_leakage(const Scenario& scenario, const PowerProfile& p) {
  if (!p.has_artificial_noise()) {
    throw std::invalid_argument("leakage AN initialization needs beta2 > 0");
  }
  const int n = scenario.num_elements();
  const CMatrix gram_d = channel_gram(scenario.array(), scenario.theta_d());
  const CMatrix gram_e = channel_gram(scenario.array(), scenario.theta_e());
  const double shift = p.noise_var() / (p.beta2_sq() * p.total_power());
  const CVector u = largest_generalized_eigvec(gram_e, gram_d + shift * identity(n));
  const CMatrix columns = u.replicate(1, n - 1) / std::sqrt(static_cast<double>(n - 1));
  return AnProjection(columns);
}

std::pair<Precoder, AnProjection> random_solution(const Scenario& scenario,
                                                  std::uint64_t seed) {
  const int n = scenario.num_elements();
  Rng rng(seed);
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
  CMatrix an(n, n - 1);
  for (int j = 0; j < n - 1; ++j) {
    for (int i = 0; i < n; ++i) an(i, j) = rng.complex_normal();
  }
  return {Precoder(std::move(v)), AnProjection(std::move(an))};
}

AnProjection optimize_an_fixed_precoder(const Scenario& scenario, const PowerProfile& p,
                                        const Precoder& v, const AnProjection& an_init,
                                        const AisOptions& options, GpiReport* report) {
  const int n = scenario.num_elements();
  if (an_init.rows() != n) {
    throw std::invalid_argument("AN projection does not match the array size");
  }
  AnCoefficients k = an_coefficients(scenario, v, p);
  auto problem = RatioProductProblem::kron_block(std::move(k.b_d), std::move(k.b_e),
                                                 std::move(k.c_e), std::move(k.c_d), n - 1);
  if (options.structure == RatioProductProblem::Structure::dense) {
    problem = problem.to_dense();
  }
  const CMatrix& p0 = an_init.matrix();
  const CVector w0 = Eigen::Map<const CVector>(p0.data(), p0.size());
  GpiReport rep = gpi_solve(problem, w0, options.gpi_tol, options.gpi_max_iter);
  const CMatrix an = Eigen::Map<const CMatrix>(rep.solution.data(), n, n - 1);
  if (report) *report = std::move(rep);
  return AnProjection(an);
}

Precoder optimize_precoder_fixed_an(const Scenario& scenario, const PowerProfile& p,
                                    const AnProjection& an) {
  const int n = scenario.num_elements();
  const PrecoderCoefficients k = precoder_coefficients(scenario, an, p);
  const CMatrix gram_d = channel_gram(scenario.array(), scenario.theta_d());
  const CMatrix gram_e = channel_gram(scenario.array(), scenario.theta_e());
  return Precoder(largest_generalized_eigvec(gram_d + k.a_d * identity(n),
                                             gram_e + k.a_e * identity(n)));
}

std::pair<BeamformerSolution, ConvergenceTrace> solve_max_sr(const Scenario& scenario,
                                                             const PowerProfile& p,
                                                             Initialization init,
                                                             const AisOptions& options) {
  if (!(options.delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (options.max_outer < 1) throw std::invalid_argument("max_outer must be >= 1");

  const bool with_an = p.has_artificial_noise();
  ConvergenceTrace trace;
  trace.init = init;

  auto start = [&]() -> std::pair<Precoder, AnProjection> {
    if (init.kind == Initialization::Kind::random) return random_solution(scenario, init.seed);
    const CVector h_d = steering_vector(scenario.array(), scenario.theta_d());
    AnProjection an = with_an ? init_an_leakage(scenario, p)
                              : AnProjection(null_space_basis(h_d));
    return {init_precoder_leakage(scenario, p), std::move(an)};
  }();
  Precoder v = std::move(start.first);
  AnProjection an = std::move(start.second);

  auto record = [&](double unclamped) {
    trace.unclamped_per_iteration.push_back(unclamped);
    trace.sr_per_iteration.push_back(std::max(0.0, unclamped));
  };

  double current = secrecy_rate_unclamped(scenario, v, an, p);
  record(current);

  if (channels_coincide(scenario)) {
    record(current);
    trace.terminated_by = ConvergenceTrace::Termination::tolerance;
    BeamformerSolution sol{v, an, 0.0, Method::max_sr, true};
    return {std::move(sol), std::move(trace)};
  }

  Precoder best_v = v;
  AnProjection best_an = an;
  double best = current;

  trace.terminated_by = ConvergenceTrace::Termination::max_iter;
  for (int i = 2; i <= options.max_outer; ++i) {
    if (with_an) {
      GpiReport rep;
      an = optimize_an_fixed_precoder(scenario, p, v, an, options, &rep);
      trace.inner_gpi_iterations.push_back(rep.iterations);
    } else {
      trace.inner_gpi_iterations.push_back(0);
    }
    v = optimize_precoder_fixed_an(scenario, p, an);

    const double previous = current;
    current = secrecy_rate_unclamped(scenario, v, an, p);
    record(current);
    if (current > best) {
      best = current;
      best_v = v;
      best_an = an;
    }
    if (std::abs(current - previous) < options.delta) {
      trace.terminated_by = ConvergenceTrace::Termination::tolerance;
      break;
    }
  }

  const double sr = secrecy_rate(scenario, best_v, best_an, p);
  BeamformerSolution sol{std::move(best_v), std::move(best_an), sr, Method::max_sr, false};
  return {std::move(sol), std::move(trace)};
}

BeamformerSolution solve_nsp(const Scenario& scenario, const PowerProfile& p) {
  CVector h_d = steering_vector(scenario.array(), scenario.theta_d());
  AnProjection an(null_space_basis(h_d));
  apply_phase_convention(h_d);
  Precoder v(std::move(h_d));
  const double sr = secrecy_rate(scenario, v, an, p);
  return {std::move(v), std::move(an), sr, Method::nsp, false};
}

BeamformerSolution solve_leakage(const Scenario& scenario, const PowerProfile& p) {
  Precoder v = init_precoder_leakage(scenario, p);
  AnProjection an = init_an_leakage(scenario, p);
  const double sr = secrecy_rate(scenario, v, an, p);
  return {std::move(v), std::move(an), sr, Method::leakage, channels_coincide(scenario)};
}

}  // namespace dmsec
