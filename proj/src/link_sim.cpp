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

#include "dmsec/link_sim.hpp"

#include <cmath>

namespace dmsec {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Dibit draw_bits(Rng& rng) {
  const std::uint8_t b0 = rng.bit();
  const std::uint8_t b1 = rng.bit();
  return {b0, b1};
}

int bit_errors(const Dibit& a, const Dibit& b) {
  return (a[0] != b[0]) + (a[1] != b[1]);
}

void check_config(const LinkConfig& cfg) {
  if (cfg.num_symbols < 1) throw std::invalid_argument("num_symbols must be positive");
}

}  // namespace

Complex qpsk_map(const Dibit& bits) {
  return {bits[0] ? -kInvSqrt2 : kInvSqrt2, bits[1] ? -kInvSqrt2 : kInvSqrt2};
}

Dibit qpsk_slice(Complex y) {
  return {static_cast<std::uint8_t>(y.real() < 0.0), static_cast<std::uint8_t>(y.imag() < 0.0)};
}

CVector transmit_symbol(const Dibit& bits, const Precoder& v, const AnProjection& an,
                        const PowerProfile& p, Rng& rng) {
  const double root_ps = std::sqrt(p.total_power());
  CVector s = (p.beta1() * root_ps * qpsk_map(bits)) * v.vector();
  if (p.has_artificial_noise()) {
    const int cols = static_cast<int>(an.matrix().cols());
    CVector z(cols);
    for (int k = 0; k < cols; ++k) z(k) = rng.complex_normal();
    s.noalias() += (an.alpha() * p.beta2() * root_ps) * (an.matrix() * z);
  }
  return s;
}

Dibit receive_and_detect(const CVector& s, const ArrayConfig& array, double theta,
                         const Precoder& v, const PowerProfile& p, Rng& rng) {
  const CVector h = steering_vector(array, theta);
  const Complex y = h.dot(s) + rng.complex_normal(p.noise_var());
  const Complex response = h.dot(v.vector());
  if (std::abs(response) < 1e-15) return qpsk_slice(y);
  return qpsk_slice(y / (p.beta1() * std::sqrt(p.total_power()) * response));
}

std::uint64_t angle_seed(std::uint64_t seed, std::size_t angle_index) {
  return derive_seed(seed, angle_index);
}

BerCurve ber_sweep_serial(const BeamformerSolution& solution, const Scenario& scenario,
                          const PowerProfile& p, const LinkConfig& cfg) {
  check_config(cfg);
  BerCurve curve{cfg.angle_grid, std::vector<double>(cfg.angle_grid.size()), solution.method};
  for (std::size_t k = 0; k < cfg.angle_grid.size(); ++k) {
    Rng rng(angle_seed(cfg.seed, k));
    long long errors = 0;
    for (int i = 0; i < cfg.num_symbols; ++i) {
      const Dibit bits = draw_bits(rng);
      const CVector s = transmit_symbol(bits, solution.precoder, solution.an, p, rng);
      const Dibit got = receive_and_detect(s, scenario.array(), cfg.angle_grid[k],
                                           solution.precoder, p, rng);
      errors += bit_errors(bits, got);
    }
    curve.ber[k] = static_cast<double>(errors) / (2.0 * cfg.num_symbols);
  }
  return curve;
}

BerCurve ber_sweep(const BeamformerSolution& solution, const Scenario& scenario,
                   const PowerProfile& p, const LinkConfig& cfg) {
  check_config(cfg);
  const auto count = static_cast<long long>(cfg.angle_grid.size());
  BerCurve curve{cfg.angle_grid, std::vector<double>(cfg.angle_grid.size()), solution.method};

  const double root_ps = std::sqrt(p.total_power());
  const double signal_gain = p.beta1() * root_ps;
  const double an_gain = solution.an.alpha() * p.beta2() * root_ps;
  const bool with_an = p.has_artificial_noise();
  const int an_cols = static_cast<int>(solution.an.matrix().cols());

#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < count; ++k) {
    const CVector h = steering_vector(scenario.array(), cfg.angle_grid[k]);
    const Complex response = h.dot(solution.precoder.vector());
    // Row h^H P_AN, so the received AN term is a length-(N-1) dot product.
    const CVector an_row = solution.an.matrix().adjoint() * h;
    const bool blind = std::abs(response) < 1e-15;
    const Complex gain = signal_gain * response;

    Rng rng(angle_seed(cfg.seed, static_cast<std::size_t>(k)));
    long long errors = 0;
    for (int i = 0; i < cfg.num_symbols; ++i) {
      const Dibit bits = draw_bits(rng);
      Complex y = gain * qpsk_map(bits);
      if (with_an) {
        Complex leak = 0.0;
        for (int c = 0; c < an_cols; ++c) leak += std::conj(an_row(c)) * rng.complex_normal();
        y += an_gain * leak;
      }
      y += rng.complex_normal(p.noise_var());
      const Dibit got = blind ? qpsk_slice(y) : qpsk_slice(y / gain);
      errors += bit_errors(bits, got);
    }
    curve.ber[k] = static_cast<double>(errors) / (2.0 * cfg.num_symbols);
  }
  return curve;
}

}  // namespace dmsec
