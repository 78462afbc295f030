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

#include "dmsec/array_channel.hpp"
#include "oracles.hpp"

using namespace dmsec;

TEST_CASE("array config and scenario validation") {
  CHECK_THROWS_AS(ArrayConfig(1), std::invalid_argument);
  CHECK_THROWS_AS(ArrayConfig(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ArrayConfig(4, -0.5), std::invalid_argument);
  CHECK_NOTHROW(ArrayConfig(2, 0.5));

  const ArrayConfig a(8);
  CHECK(a.spacing_over_wavelength() == 0.5);
  CHECK_THROWS_AS(Scenario(a, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Scenario(a, 1.0, kPi), std::invalid_argument);
  CHECK_THROWS_AS(Scenario(a, -0.1, 1.0), std::invalid_argument);
  CHECK_NOTHROW(Scenario(a, 1e-6, kPi - 1e-6));
}

TEST_CASE("phase_shift") {
  SUBCASE("broadside has zero phase") {
    const ArrayConfig a(5, 0.7);
    for (int n = 1; n <= 5; ++n) CHECK(std::abs(phase_shift(n, a, kPi / 2)) < 1e-16);
  }
  SUBCASE("two elements at 60 degrees") {
    const ArrayConfig a(2, 0.5);
    CHECK(phase_shift(1, a, kPi / 3) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(phase_shift(2, a, kPi / 3) == doctest::Approx(-0.125).epsilon(1e-14));
  }
  SUBCASE("center element of an odd array") {
    const ArrayConfig a(7, 0.5);
    for (double t : {0.1, 0.9, 2.0, 3.0}) CHECK(phase_shift(4, a, t) == 0.0);
  }
  SUBCASE("index out of range") {
    const ArrayConfig a(4);
    CHECK_THROWS_AS(phase_shift(0, a, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(phase_shift(5, a, 1.0), std::invalid_argument);
  }
  SUBCASE("antisymmetric about the array center") {
    oracle::Sampler rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 + trial % 9;
      const ArrayConfig a(n, rng.uniform(0.1, 2.0));
      const double theta = rng.uniform(0.0, kPi);
      for (int k = 1; k <= n; ++k) {
        CHECK(std::abs(phase_shift(k, a, theta) + phase_shift(n + 1 - k, a, theta)) < 1e-15);
      }
    }
  }
}

TEST_CASE("steering_vector") {
  SUBCASE("broadside N=4") {
    const CVector h = steering_vector(ArrayConfig(4, 0.9), kPi / 2);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(h(i) - Complex(0.5, 0.0)) < 1e-15);
  }
  SUBCASE("two elements at 60 degrees") {
    const CVector h = steering_vector(ArrayConfig(2, 0.5), kPi / 3);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(h(0) - s * std::polar(1.0, kPi / 4)) < 1e-15);
    CHECK(std::abs(h(1) - s * std::polar(1.0, -kPi / 4)) < 1e-15);
  }
  SUBCASE("unit norm, equal moduli, matches the direct formula") {
    oracle::Sampler rng(5);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 2 + trial % 15;
      const double spacing = rng.uniform(0.05, 3.0);
      const double theta = rng.uniform(0.0, kPi);
      const CVector h = steering_vector(ArrayConfig(n, spacing), theta);
      CHECK(std::abs(h.norm() - 1.0) < 1e-12);
      for (int i = 0; i < n; ++i) CHECK(std::abs(std::abs(h(i)) - 1.0 / std::sqrt(n)) < 1e-12);
      CHECK((h - oracle::steering(n, spacing, theta)).norm() < 1e-12);
    }
  }
}

TEST_CASE("channel_gram") {
  SUBCASE("broadside N=2") {
    const CMatrix g = channel_gram(ArrayConfig(2), kPi / 2);
    CHECK((g - CMatrix::Constant(2, 2, Complex(0.5, 0.0))).norm() < 1e-15);
  }
  SUBCASE("trace one, Hermitian, h is its unit eigenvector") {
    oracle::Sampler rng(9);
    for (int trial = 0; trial < 100; ++trial) {
      const ArrayConfig a(2 + trial % 10, rng.uniform(0.1, 1.5));
      const double theta = rng.uniform(0.0, kPi);
      const CMatrix g = channel_gram(a, theta);
      const CVector h = steering_vector(a, theta);
      CHECK(std::abs(g.trace() - Complex(1.0, 0.0)) < 1e-12);
      CHECK((g - g.adjoint()).norm() == 0.0);
      CHECK((g * h - h).norm() < 1e-12);
    }
  }
}
