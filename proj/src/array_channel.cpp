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

#include "dmsec/array_channel.hpp"

#include <cmath>
#include <string>

namespace dmsec {

ArrayConfig::ArrayConfig(int num_elements, double spacing_over_wavelength)
    : num_elements_(num_elements), spacing_(spacing_over_wavelength) {
  if (num_elements < 2) {
    throw std::invalid_argument("array needs at least 2 elements, got " +
                                std::to_string(num_elements));
  }
  if (!(spacing_over_wavelength > 0.0) || !std::isfinite(spacing_over_wavelength)) {
    throw std::invalid_argument("element spacing must be positive");
  }
}

Scenario::Scenario(ArrayConfig array, double theta_d, double theta_e)
    : array_(array), theta_d_(theta_d), theta_e_(theta_e) {
  auto inside = [](double t) { return t > 0.0 && t < kPi; };
  if (!inside(theta_d) || !inside(theta_e)) {
    throw std::invalid_argument("directions must lie strictly inside (0, pi) rad");
  }
}

double phase_shift(int n, const ArrayConfig& array, double theta) {
  const int count = array.num_elements();
  if (n < 1 || n > count) {
    throw std::invalid_argument("element index " + std::to_string(n) +
                                " outside 1.." + std::to_string(count));
  }
  const double offset = n - 0.5 * (count + 1);
  return -offset * array.spacing_over_wavelength() * std::cos(theta);
}

CVector steering_vector(const ArrayConfig& array, double theta) {
  const int count = array.num_elements();
  const double scale = 1.0 / std::sqrt(static_cast<double>(count));
  CVector h(count);
  for (int n = 1; n <= count; ++n) {
    h(n - 1) = std::polar(scale, 2.0 * kPi * phase_shift(n, array, theta));
  }
  return h;
}

CMatrix channel_gram(const ArrayConfig& array, double theta) {
  const CVector h = steering_vector(array, theta);
  return h * h.adjoint();
}

}  // namespace dmsec
