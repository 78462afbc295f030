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

#include "dmsec/secrecy_metrics.hpp"

#include <algorithm>
#include <cmath>

namespace dmsec {

PowerProfile::PowerProfile(double total_power, double beta1, double beta2,
                           double noise_var)
    : total_power_(total_power), beta1_(beta1), beta2_(beta2), noise_var_(noise_var) {
  if (!(total_power > 0.0) || !std::isfinite(total_power)) {
    throw std::invalid_argument("total power must be positive");
  }
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    throw std::invalid_argument("noise variance must be positive");
  }
  if (!(beta1 > 0.0 && beta1 <= 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw std::invalid_argument("power allocation factors out of range");
  }
  if (std::abs(beta1 * beta1 + beta2 * beta2 - 1.0) > 1e-12) {
    throw std::invalid_argument("beta1^2 + beta2^2 must equal 1");
  }
}

PowerProfile PowerProfile::from_snr_db(double snr_db, double beta1_sq, double beta2_sq,
                                       double noise_var) {
  if (beta1_sq < 0.0 || beta2_sq < 0.0) {
    throw std::invalid_argument("power allocation factors must be nonnegative");
  }
  return PowerProfile(noise_var * std::pow(10.0, snr_db / 10.0), std::sqrt(beta1_sq),
                      std::sqrt(beta2_sq), noise_var);
}

double PowerProfile::snr_db() const {
  return 10.0 * std::log10(total_power_ / noise_var_);
}

Precoder::Precoder(CVector v) : v_(std::move(v)) {
  const double norm = v_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("precoder must be a nonzero finite vector");
  }
  v_ /= norm;
}

AnProjection::AnProjection(CMatrix matrix) : p_(std::move(matrix)) {
  if (p_.rows() < 2 || p_.cols() != p_.rows() - 1) {
    throw std::invalid_argument("AN projection must be N x (N-1)");
  }
  const double fro = p_.norm();
  if (!(fro > 0.0) || !std::isfinite(fro)) {
    throw std::invalid_argument("AN projection must be a nonzero finite matrix");
  }
  alpha_ = 1.0 / fro;
}

double an_power_at(const CVector& h, const AnProjection& an) {
  if (h.size() != an.rows()) {
    throw std::invalid_argument("steering vector and AN projection sizes differ");
  }
  return (an.matrix().adjoint() * h).squaredNorm();
}

double an_power_at(const ArrayConfig& array, double theta, const AnProjection& an) {
  return an_power_at(steering_vector(array, theta), an);
}

namespace {

double rate_for(const CVector& h, const Precoder& v, const AnProjection& an,
                const PowerProfile& p) {
  if (h.size() != v.size()) {
    throw std::invalid_argument("steering vector and precoder sizes differ");
  }
  const double ps = p.total_power();
  const double signal = p.beta1_sq() * ps * std::norm(h.dot(v.vector()));
  double interference = p.noise_var();
  if (p.has_artificial_noise()) {
    interference += an.alpha() * an.alpha() * p.beta2_sq() * ps * an_power_at(h, an);
  }
  return std::log2(1.0 + signal / interference);
}

}  // namespace

double rate_at(const ArrayConfig& array, double theta, const Precoder& v,
               const AnProjection& an, const PowerProfile& p) {
  return rate_for(steering_vector(array, theta), v, an, p);
}

double secrecy_rate_unclamped(const Scenario& scenario, const Precoder& v,
                              const AnProjection& an, const PowerProfile& p) {
  return rate_at(scenario.array(), scenario.theta_d(), v, an, p) -
         rate_at(scenario.array(), scenario.theta_e(), v, an, p);
}

double secrecy_rate(const Scenario& scenario, const Precoder& v, const AnProjection& an,
                    const PowerProfile& p) {
  return std::max(0.0, secrecy_rate_unclamped(scenario, v, an, p));
}

PrecoderCoefficients precoder_coefficients(const Scenario& scenario,
                                           const AnProjection& an,
                                           const PowerProfile& p) {
  const double ps = p.total_power();
  const double noise_term = p.noise_var() / (p.beta1_sq() * ps);
  double an_scale = 0.0;
  double q_d = 0.0;
  double q_e = 0.0;
  if (p.has_artificial_noise()) {
    an_scale = an.alpha() * an.alpha() * p.beta2_sq();
    q_d = an_power_at(scenario.array(), scenario.theta_d(), an);
    q_e = an_power_at(scenario.array(), scenario.theta_e(), an);
  }
  PrecoderCoefficients out;
  out.a_d = an_scale / p.beta1_sq() * q_d + noise_term;
  out.a_e = an_scale / p.beta1_sq() * q_e + noise_term;
  // Same ratio as (q_e + sigma^2/(alpha^2 b2^2 Ps)) / (q_d + ...), but finite at b2 = 0.
  out.b = (p.noise_var() + an_scale * ps * q_e) / (p.noise_var() + an_scale * ps * q_d);
  return out;
}

AnCoefficients an_coefficients(const Scenario& scenario, const Precoder& v,
                               const PowerProfile& p) {
  if (!p.has_artificial_noise()) {
    throw std::invalid_argument("AN coefficients need beta2 > 0");
  }
  const int n = scenario.num_elements();
  if (v.size() != n) {
    throw std::invalid_argument("precoder size does not match the array");
  }
  const CVector h_d = steering_vector(scenario.array(), scenario.theta_d());
  const CVector h_e = steering_vector(scenario.array(), scenario.theta_e());
  const CMatrix gram_d = h_d * h_d.adjoint();
  const CMatrix gram_e = h_e * h_e.adjoint();
  const CMatrix eye = CMatrix::Identity(n, n);
  const double ps = p.total_power();
  const double ratio = p.beta2_sq() / p.beta1_sq();
  const double noise_b = p.noise_var() / (p.beta1_sq() * ps);
  const double noise_c = p.noise_var() / (p.beta2_sq() * ps);

  AnCoefficients out;
  out.b_d = ratio * gram_d + (noise_b + std::norm(h_d.dot(v.vector()))) * eye;
  out.b_e = ratio * gram_e + (noise_b + std::norm(h_e.dot(v.vector()))) * eye;
  out.c_d = gram_d + noise_c * eye;
  out.c_e = gram_e + noise_c * eye;
  return out;
}

}  // namespace dmsec
