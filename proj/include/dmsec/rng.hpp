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
#include <optional>
#include <random>

#include "dmsec/types.hpp"

namespace dmsec {

/// SplitMix64 finalizer. Used to derive independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Sub-seed for stream `index` of a run seeded with `seed`:
///   splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15)
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Portable random source. The engine (mt19937_64) has a fully specified
/// output sequence; uniforms and Gaussians are derived from it here rather
/// than through <random> distributions, whose algorithms vary between
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal N(0, 1) via Box-Muller.
  double normal();
  /// Circularly-symmetric complex Gaussian CN(0, variance).
  Complex complex_normal(double variance = 1.0);
  /// One fair random bit.
  std::uint8_t bit();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace dmsec
