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

#include "doctest.h"

#include "dmsec/link_sim.hpp"
#include "oracles.hpp"

using namespace dmsec;

namespace {

const Scenario kReference(ArrayConfig(8, 0.5), deg_to_rad(45.0), deg_to_rad(70.0));

PowerProfile reference_power(double snr_db) { return PowerProfile::from_snr_db(snr_db, 0.9, 0.1); }

std::vector<double> grid_deg(double lo, double hi, double step) {
  std::vector<double> out;
  for (double a = lo; a <= hi + 1e-9; a += step) out.push_back(deg_to_rad(a));
  return out;
}

}  // namespace

TEST_CASE("qpsk mapping") {
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(qpsk_map({0, 0}) - Complex(r, r)) < 1e-15);
  CHECK(std::abs(qpsk_map({1, 1}) - Complex(-r, -r)) < 1e-15);
  CHECK(std::abs(qpsk_map({0, 1}) - Complex(r, -r)) < 1e-15);
  CHECK(std::abs(qpsk_map({1, 0}) - Complex(-r, r)) < 1e-15);
  for (std::uint8_t a = 0; a < 2; ++a)
    for (std::uint8_t b = 0; b < 2; ++b) {
      const Dibit d{a, b};
      CHECK(std::abs(qpsk_map(d)) == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(qpsk_slice(qpsk_map(d)) == d);
    }
}

TEST_CASE("transmit_symbol") {
  SUBCASE("average power equals P_s") {
    const PowerProfile p = reference_power(10.0);
    const BeamformerSolution s = solve_leakage(kReference, p);
    Rng rng(5);
    double acc = 0.0;
    const int count = 100000;
    for (int i = 0; i < count; ++i) {
      const Dibit bits{rng.bit(), rng.bit()};
      acc += transmit_symbol(bits, s.precoder, s.an, p, rng).squaredNorm();
    }
    CHECK(acc / count == doctest::Approx(p.total_power()).epsilon(0.02));
  }
  SUBCASE("no AN: deterministic, antipodal") {
    const PowerProfile p = PowerProfile::from_snr_db(10.0, 1.0, 0.0);
    const BeamformerSolution s = solve_nsp(kReference, p);
    Rng a(1), b(2);
    const CVector s00 = transmit_symbol({0, 0}, s.precoder, s.an, p, a);
    CHECK((s00 - transmit_symbol({0, 0}, s.precoder, s.an, p, b)).norm() == 0.0);
    CHECK((s00 + transmit_symbol({1, 1}, s.precoder, s.an, p, a)).norm() < 1e-14);
    CHECK(s00.squaredNorm() == doctest::Approx(p.total_power()).epsilon(1e-12));
  }
}

TEST_CASE("receive_and_detect") {
  SUBCASE("noise-free link is error-free") {
    const PowerProfile p(1e12, std::sqrt(0.9), std::sqrt(0.1), 1.0);
    const BeamformerSolution s = solve_nsp(kReference, p);
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
      const Dibit bits{rng.bit(), rng.bit()};
      const CVector x = transmit_symbol(bits, s.precoder, s.an, p, rng);
      CHECK(receive_and_detect(x, kReference.array(), kReference.theta_d(), s.precoder, p, rng) == bits);
    }
  }
  SUBCASE("null-space AN leaves a Gaussian channel at Bob") {
    const PowerProfile p = reference_power(5.0);
    const BeamformerSolution s = solve_nsp(kReference, p);
    const CVector h = steering_vector(kReference.array(), kReference.theta_d());
    const double snr = p.beta1_sq() * p.total_power() * std::norm(h.dot(s.precoder.vector())) /
                       p.noise_var();
    const double expect = oracle::qfunc(std::sqrt(snr));
    Rng rng(13);
    const int count = 100000;
    long long errors = 0;
    for (int i = 0; i < count; ++i) {
      const Dibit bits{rng.bit(), rng.bit()};
      const CVector x = transmit_symbol(bits, s.precoder, s.an, p, rng);
      const Dibit got = receive_and_detect(x, kReference.array(), kReference.theta_d(), s.precoder, p, rng);
      errors += (got[0] != bits[0]) + (got[1] != bits[1]);
    }
    const double ber = errors / (2.0 * count);
    const double sd = std::sqrt(expect * (1 - expect) / (2.0 * count));
    CHECK(std::abs(ber - expect) < 4.0 * sd);
  }
}

TEST_CASE("ber_sweep") {
  const PowerProfile p = reference_power(10.0);
  const BeamformerSolution s = solve_max_sr(kReference, p).first;
  LinkConfig cfg;
  cfg.num_symbols = 2000;
  cfg.seed = 17;
  cfg.angle_grid = grid_deg(0.0, 180.0, 10.0);

  SUBCASE("parallel matches the serial reference") {
    const BerCurve a = ber_sweep(s, kReference, p, cfg);
    const BerCurve b = ber_sweep_serial(s, kReference, p, cfg);
    CHECK(a.ber == b.ber);
    CHECK(a.angles == cfg.angle_grid);
    CHECK(a.method == Method::max_sr);
  }
  SUBCASE("deterministic and bounded") {
    const BerCurve a = ber_sweep(s, kReference, p, cfg);
    CHECK(a.ber == ber_sweep(s, kReference, p, cfg).ber);
    for (double b : a.ber) {
      CHECK(b >= 0.0);
      CHECK(b <= 1.0);
    }
  }
  SUBCASE("BER at the intended direction falls with SNR") {
    cfg.num_symbols = 20000;
    cfg.angle_grid = {kReference.theta_d()};
    double prev = 1.0;
    for (double snr : {-5.0, 0.0, 5.0}) {
      const PowerProfile q = reference_power(snr);
      const double b = ber_sweep(solve_nsp(kReference, q), kReference, q, cfg).ber[0];
      CHECK(b < prev);
      prev = b;
    }
  }
  SUBCASE("receiver in a null of the precoder guesses") {
    const Scenario sc(ArrayConfig(4, 0.5), deg_to_rad(60.0), deg_to_rad(90.0));
    const PowerProfile q = reference_power(10.0);
    BeamformerSolution blind = solve_nsp(sc, q);
    cfg.num_symbols = 20000;
    cfg.angle_grid = {sc.theta_e()};
    const double b = ber_sweep(blind, sc, q, cfg).ber[0];
    CHECK(b == doctest::Approx(0.5).epsilon(0.03));
    CHECK(ber_sweep_serial(blind, sc, q, cfg).ber[0] == b);
  }
  SUBCASE("rejects an empty run") {
    cfg.num_symbols = 0;
    CHECK_THROWS_AS(ber_sweep(s, kReference, p, cfg), std::invalid_argument);
  }
}

TEST_CASE("angle seeds differ") {
  CHECK(angle_seed(1, 0) != angle_seed(1, 1));
  CHECK(angle_seed(1, 0) != angle_seed(2, 0));
  CHECK(angle_seed(1, 3) == angle_seed(1, 3));
}
