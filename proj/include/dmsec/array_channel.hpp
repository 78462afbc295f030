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

#include "dmsec/types.hpp"

namespace dmsec {

/// Geometry of an N-element uniform linear array.
class ArrayConfig {
 public:
  /// Throws std::invalid_argument unless num_elements >= 2 and
  /// spacing_over_wavelength > 0.
  explicit ArrayConfig(int num_elements, double spacing_over_wavelength = 0.5);

  int num_elements() const { return num_elements_; }
  double spacing_over_wavelength() const { return spacing_; }

 private:
  int num_elements_;
  double spacing_;
};

/// Array plus the desired (Bob) and eavesdropper (Eve) directions, radians.
class Scenario {
 public:
  /// Both angles must lie strictly inside (0, pi).
  Scenario(ArrayConfig array, double theta_d, double theta_e);

  const ArrayConfig& array() const { return array_; }
  int num_elements() const { return array_.num_elements(); }
  double theta_d() const { return theta_d_; }
  double theta_e() const { return theta_e_; }

 private:
  ArrayConfig array_;
  double theta_d_;
  double theta_e_;
};

/// Phase (in cycles) of element n (1-based) toward theta:
///   -(n - (N + 1) / 2) * (d / lambda) * cos(theta)
double phase_shift(int n, const ArrayConfig& array, double theta);

/// Unit-norm steering vector h(theta); entry n is
/// exp(j 2 pi phase_shift(n)) / sqrt(N).
CVector steering_vector(const ArrayConfig& array, double theta);

/// h(theta) h(theta)^H.
CMatrix channel_gram(const ArrayConfig& array, double theta);

}  // namespace dmsec
