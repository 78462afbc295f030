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

#include <array>
#include <cstdint>
#include <vector>

#include "dmsec/beamformers.hpp"
#include "dmsec/rng.hpp"

namespace dmsec {

/// Two QPSK bits: [0] on the in-phase rail, [1] on quadrature.
using Dibit = std::array<std::uint8_t, 2>;

struct LinkConfig {
  int num_symbols = 20000;
  std::uint64_t seed = 1;
  double snr_db = 10.0;              // used by the harness to build the PowerProfile
  std::vector<double> angle_grid;    // radians
};

struct BerCurve {
  std::vector<double> angles;  // radians
  std::vector<double> ber;
  Method method;
};

/// Gray-mapped unit-energy QPSK: bit 0 -> +1/sqrt(2), bit 1 -> -1/sqrt(2) per rail.
Complex qpsk_map(const Dibit& bits);
Dibit qpsk_slice(Complex y);

/// s = b1 sqrt(Ps) v x + alpha b2 sqrt(Ps) P_AN z, z ~ CN(0, I_{N-1}).
/// Draws N-1 complex normals from `rng` (none when beta2 = 0).
CVector transmit_symbol(const Dibit& bits, const Precoder& v, const AnProjection& an,
                        const PowerProfile& p, Rng& rng);

/// y = h(theta)^H s + n, n ~ CN(0, sigma^2), detected coherently with the
/// known gain b1 sqrt(Ps) h^H v. When |h^H v| < 1e-15 the raw observation is
/// sliced instead, which yields uniformly random bits.
Dibit receive_and_detect(const CVector& s, const ArrayConfig& array, double theta,
                         const Precoder& v, const PowerProfile& p, Rng& rng);

/// Sub-seed of angle index k: derive_seed(cfg.seed, k).
std::uint64_t angle_seed(std::uint64_t seed, std::size_t angle_index);

/// Monte-Carlo BER at every grid angle, OpenMP-parallel over angles.
/// Per symbol it draws two bits, the AN vector and the receiver noise from
/// the angle's own stream, in that order, and projects onto h(theta) before
/// forming the received sample.
BerCurve ber_sweep(const BeamformerSolution& solution, const Scenario& scenario,
                   const PowerProfile& p, const LinkConfig& cfg);

/// Reference implementation: sequential, full transmit_symbol /
/// receive_and_detect chain per symbol. Same random streams as ber_sweep.
BerCurve ber_sweep_serial(const BeamformerSolution& solution, const Scenario& scenario,
                          const PowerProfile& p, const LinkConfig& cfg);

}  // namespace dmsec
