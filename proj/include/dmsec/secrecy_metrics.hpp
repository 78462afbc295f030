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

#include "dmsec/array_channel.hpp"
#include "dmsec/types.hpp"

namespace dmsec {

/// Transmit power P_s, power-allocation factors (beta1 for the confidential
/// stream, beta2 for artificial noise, beta1^2 + beta2^2 = 1) and the common
/// receiver noise variance sigma^2. SNR is P_s / sigma^2.
class PowerProfile {
 public:
  PowerProfile(double total_power, double beta1, double beta2, double noise_var);

  /// P_s = noise_var * 10^(snr_db / 10); beta factors given as squares.
  static PowerProfile from_snr_db(double snr_db, double beta1_sq, double beta2_sq,
                                  double noise_var = 1.0);

  double total_power() const { return total_power_; }
  double beta1() const { return beta1_; }
  double beta2() const { return beta2_; }
  double beta1_sq() const { return beta1_ * beta1_; }
  double beta2_sq() const { return beta2_ * beta2_; }
  double noise_var() const { return noise_var_; }
  double snr_db() const;
  bool has_artificial_noise() const { return beta2_ > 0.0; }

 private:
  double total_power_;
  double beta1_;
  double beta2_;
  double noise_var_;
};

/// Unit-norm confidential-message beamformer v_d.
class Precoder {
 public:
  /// Normalizes `v`; throws std::invalid_argument for a zero vector.
  explicit Precoder(CVector v);

  const CVector& vector() const { return v_; }
  int size() const { return static_cast<int>(v_.size()); }

 private:
  CVector v_;
};

/// AN projection matrix P_AN (N x (N-1)) with its normalizer
/// alpha = 1 / sqrt(tr(P_AN P_AN^H)), so that alpha^2 tr(P_AN P_AN^H) = 1.
class AnProjection {
 public:
  /// Throws std::invalid_argument for a zero matrix or a shape other than
  /// N x (N-1).
  explicit AnProjection(CMatrix matrix);

  const CMatrix& matrix() const { return p_; }
  double alpha() const { return alpha_; }
  int rows() const { return static_cast<int>(p_.rows()); }

 private:
  CMatrix p_;
  double alpha_;
};

/// h(theta)^H P_AN P_AN^H h(theta), without the alpha^2 factor.
double an_power_at(const CVector& h, const AnProjection& an);
double an_power_at(const ArrayConfig& array, double theta, const AnProjection& an);

/// Achievable rate toward theta, bits/s/Hz:
///   log2(1 + b1^2 Ps |h^H v|^2 / (sigma^2 + alpha^2 b2^2 Ps h^H P P^H h))
double rate_at(const ArrayConfig& array, double theta, const Precoder& v,
               const AnProjection& an, const PowerProfile& p);

/// R(theta_d) - R(theta_e), may be negative.
double secrecy_rate_unclamped(const Scenario& scenario, const Precoder& v,
                              const AnProjection& an, const PowerProfile& p);

/// max{0, R(theta_d) - R(theta_e)}.
double secrecy_rate(const Scenario& scenario, const Precoder& v,
                    const AnProjection& an, const PowerProfile& p);

/// Scalars of the precoder subproblem for a fixed AN projection:
///   a_d = alpha^2 b2^2 / b1^2 * h_d^H P P^H h_d + sigma^2 / (b1^2 Ps), a_e likewise,
///   b   = (sigma^2 + alpha^2 b2^2 Ps q_e) / (sigma^2 + alpha^2 b2^2 Ps q_d).
/// With these, R_d - R_e = log2(v^H(H_d + a_d I)v / v^H(H_e + a_e I)v * b).
struct PrecoderCoefficients {
  double a_d;
  double a_e;
  double b;
};

PrecoderCoefficients precoder_coefficients(const Scenario& scenario,
                                           const AnProjection& an,
                                           const PowerProfile& p);

/// Matrices of the AN subproblem for a fixed precoder:
///   B_d = b2^2/b1^2 H_d + (sigma^2/(b1^2 Ps) + |h_d^H v|^2) I, B_e likewise,
///   C_d = H_d + sigma^2/(b2^2 Ps) I, C_e likewise.
/// R_d - R_e = log2(tr(P^H B_d P) tr(P^H C_e P) / (tr(P^H B_e P) tr(P^H C_d P))).
struct AnCoefficients {
  CMatrix b_d;
  CMatrix b_e;
  CMatrix c_d;
  CMatrix c_e;
};

/// Requires beta2 > 0 (C_d, C_e are undefined without AN).
AnCoefficients an_coefficients(const Scenario& scenario, const Precoder& v,
                               const PowerProfile& p);

}  // namespace dmsec
