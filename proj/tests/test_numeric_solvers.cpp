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
#include "dmsec/numeric_solvers.hpp"
#include "oracles.hpp"

using namespace dmsec;

namespace {

double rq(const CMatrix& k, const CMatrix& m, const CVector& v) {
  return oracle::quad(k, v) / oracle::quad(m, v);
}

}  // namespace

TEST_CASE("phase convention") {
  CVector v(3);
  v << Complex(0.1, 0.2), Complex(0.0, -0.9), Complex(0.3, 0.0);
  apply_phase_convention(v);
  CHECK(v(1).imag() == 0.0);
  CHECK(v(1).real() > 0.0);

  // Equal moduli: the lowest index becomes the real pivot.
  CVector w = steering_vector(ArrayConfig(6), 0.9);
  apply_phase_convention(w);
  CHECK(w(0).imag() == 0.0);
  CHECK(w(0).real() > 0.0);
}

TEST_CASE("largest_generalized_eigvec") {
  SUBCASE("diagonal numerator") {
    CMatrix k = CMatrix::Zero(2, 2);
    k(0, 0) = 2.0;
    k(1, 1) = 1.0;
    const CVector v = largest_generalized_eigvec(k, CMatrix::Identity(2, 2));
    CHECK(std::abs(v(0) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(v(1)) < 1e-14);
  }
  SUBCASE("rank-one numerator returns h with the phase convention") {
    CVector h = steering_vector(ArrayConfig(5), 1.2);
    const CVector v = largest_generalized_eigvec(h * h.adjoint(), CMatrix::Identity(5, 5));
    apply_phase_convention(h);
    CHECK((v - h).norm() < 1e-12);
  }
  SUBCASE("2x2 closed form") {
    oracle::Sampler rng(41);
    for (int t = 0; t < 50; ++t) {
      const CMatrix k = rng.hermitian(2);
      const CMatrix m = rng.psd(2, 0.1);
      const auto [lambda, expect] = oracle::generalized_2x2(k, m);
      const CVector v = largest_generalized_eigvec(k, m);
      CHECK(std::abs(v.norm() - 1.0) < 1e-12);
      CHECK(oracle::alignment(v, expect) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(rq(k, m, v) == doctest::Approx(lambda).epsilon(1e-9));
    }
  }
  SUBCASE("agrees with a general eigensolver on M^-1 K") {
    oracle::Sampler rng(43);
    for (int n = 3; n <= 8; ++n) {
      const CMatrix k = rng.psd(n, 0.0);
      const CMatrix m = rng.psd(n, 0.5);
      const CVector v = largest_generalized_eigvec(k, m);
      CHECK(oracle::alignment(v, oracle::top_eigvec_of_product(k, m)) ==
            doctest::Approx(1.0).epsilon(1e-8));
    }
  }
  SUBCASE("dominates random unit vectors") {
    oracle::Sampler rng(47);
    for (int n = 2; n <= 4; ++n) {
      const CMatrix k = rng.hermitian(n);
      const CMatrix m = rng.psd(n, 0.2);
      const double best = rq(k, m, largest_generalized_eigvec(k, m));
      for (int s = 0; s < 10000; ++s) CHECK(rq(k, m, rng.unit(n)) <= best + 1e-12);
    }
  }
  SUBCASE("singular or indefinite denominator") {
    const CMatrix k = CMatrix::Identity(3, 3);
    CMatrix m = CMatrix::Identity(3, 3);
    m(2, 2) = 1e-14;
    CHECK_THROWS_AS(largest_generalized_eigvec(k, m), NumericalError);
    m(2, 2) = -1.0;
    CHECK_THROWS_AS(largest_generalized_eigvec(k, m), NumericalError);
    CHECK_THROWS_AS(largest_generalized_eigvec(k, CMatrix::Identity(2, 2)), std::invalid_argument);
  }
}

TEST_CASE("kron_block_apply") {
  oracle::Sampler rng(53);
  SUBCASE("identity block") {
    const CVector w = rng.unit(12);
    CHECK((kron_block_apply(CMatrix::Identity(4, 4), 3, w) - w).norm() == 0.0);
  }
  SUBCASE("single repetition is a plain product") {
    const CMatrix b = rng.matrix(5, 5);
    const CVector w = rng.unit(5);
    CHECK((kron_block_apply(b, 1, w) - b * w).norm() < 1e-14);
  }
  SUBCASE("matches the dense Kronecker product") {
    for (int t = 0; t < 10; ++t) {
      const CMatrix b = rng.matrix(3, 3);
      const CVector w = rng.unit(6);
      CHECK((kron_block_apply(b, 2, w) - oracle::kron_eye(2, b) * w).norm() < 1e-13);
      CHECK((kron_identity(2, b) - oracle::kron_eye(2, b)).norm() == 0.0);
    }
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(kron_block_apply(CMatrix::Identity(3, 3), 2, CVector::Ones(5)),
                    std::invalid_argument);
  }
}

TEST_CASE("gpi_solve") {
  oracle::Sampler rng(59);

  SUBCASE("A = C, B = D = I is power iteration") {
    const int n = 5;
    const CMatrix a = rng.psd(n, 0.0);
    const CMatrix eye = CMatrix::Identity(n, n);
    const auto problem = RatioProductProblem::dense(a, eye, a, eye);
    const GpiReport r = gpi_solve(problem, rng.unit(n), 1e-10, 5000);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
    const double top = es.eigenvalues()(n - 1);
    CHECK(r.converged);
    CHECK(r.objective == doctest::Approx(top * top).epsilon(1e-9));
    CHECK(oracle::alignment(r.solution, es.eigenvectors().col(n - 1)) ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("constant objective: w0 is a fixed point") {
    const CMatrix a = rng.psd(4, 0.3);
    const auto problem = RatioProductProblem::dense(a, a, a, a);
    CVector w0 = rng.unit(4);
    const GpiReport r = gpi_solve(problem, w0);
    CHECK(r.converged);
    CHECK(r.iterations == 1);
    CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-12));
    apply_phase_convention(w0);
    CHECK((r.solution - w0).norm() < 1e-12);
  }
  SUBCASE("N=2 against dense sphere sampling") {
    // General quartic ratios can have several local maxima, so start in the
    // basin of the best sample and require GPI not to lose it.
    for (int t = 0; t < 5; ++t) {
      const CMatrix a = rng.psd(2, 0.0), b = rng.psd(2, 0.05);
      const CMatrix c = rng.psd(2, 0.0), d = rng.psd(2, 0.05);
      const auto problem = RatioProductProblem::dense(a, b, c, d);
      double best = 0.0;
      CVector arg;
      for (int s = 0; s < 100000; ++s) {
        const CVector w = rng.unit(2);
        const double f = oracle::ratio_product(a, b, c, d, w);
        if (f > best) {
          best = f;
          arg = w;
        }
      }
      const GpiReport r = gpi_solve(problem, arg);
      CHECK(r.objective >= best * (1.0 - 1e-12));
      CHECK(r.objective <= best * 1.01);
    }
  }
  SUBCASE("report invariants, monotone guard and stationarity") {
    for (int t = 0; t < 30; ++t) {
      const int n = 2 + t % 5;
      const CMatrix a = rng.psd(n, 0.01), b = rng.psd(n, 0.1);
      const CMatrix c = rng.psd(n, 0.01), d = rng.psd(n, 0.1);
      const auto problem = RatioProductProblem::dense(a, b, c, d);
      const CVector w0 = rng.unit(n);
      const double tol = 1e-9;
      const GpiReport r = gpi_solve(problem, w0, tol, 5000);
      CHECK(std::abs(r.solution.norm() - 1.0) < 1e-12);
      CHECK(std::abs(r.objective - oracle::ratio_product(a, b, c, d, r.solution)) <
            1e-10 * std::max(1.0, r.objective));
      CHECK(r.objective >= oracle::ratio_product(a, b, c, d, w0) - 1e-10);
      if (r.converged) {
        const CVector& w = r.solution;
        const CVector lhs = (a / oracle::quad(a, w) + c / oracle::quad(c, w)) * w;
        const CVector rhs = (b / oracle::quad(b, w) + d / oracle::quad(d, w)) * w;
        const double mu = lhs.norm() / rhs.norm();
        CHECK((lhs - mu * rhs).norm() < 10 * tol * std::max(1.0, lhs.norm()));
      }
    }
  }
  SUBCASE("Kronecker structure agrees with the dense form") {
    for (int n = 3; n <= 5; ++n) {
      const CMatrix a = rng.psd(n, 0.01), b = rng.psd(n, 0.1);
      const CMatrix c = rng.psd(n, 0.01), d = rng.psd(n, 0.1);
      const auto kron = RatioProductProblem::kron_block(a, b, c, d, n - 1);
      const auto dense = RatioProductProblem::dense(
          oracle::kron_eye(n - 1, a), oracle::kron_eye(n - 1, b), oracle::kron_eye(n - 1, c),
          oracle::kron_eye(n - 1, d));
      const CVector w0 = rng.unit(n * (n - 1));
      CHECK(kron.objective(w0) == doctest::Approx(dense.objective(w0)).epsilon(1e-12));
      const GpiReport rk = gpi_solve(kron, w0);
      const GpiReport rd = gpi_solve(dense, w0);
      CHECK(std::abs(rk.objective - rd.objective) < 1e-8);
    }
  }
  SUBCASE("invalid problems") {
    const CMatrix eye = CMatrix::Identity(3, 3);
    CMatrix indefinite = eye;
    indefinite(0, 0) = -1.0;
    CHECK_THROWS_AS(RatioProductProblem::dense(eye, indefinite, eye, eye), NumericalError);
    CHECK_THROWS_AS(RatioProductProblem::dense(eye, eye, eye, CMatrix::Zero(3, 3)),
                    NumericalError);
    CMatrix skew = eye;
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(RatioProductProblem::dense(skew, eye, eye, eye), std::invalid_argument);
    const auto ok = RatioProductProblem::dense(eye, eye, eye, eye);
    CHECK_THROWS_AS(gpi_solve(ok, CVector::Ones(4)), std::invalid_argument);
    // Numerator form vanishes at w0.
    CMatrix rank1 = CMatrix::Zero(3, 3);
    rank1(0, 0) = 1.0;
    CVector w0 = CVector::Zero(3);
    w0(1) = 1.0;
    CHECK_THROWS_AS(gpi_solve(RatioProductProblem::dense(rank1, eye, eye, eye), w0),
                    NumericalError);
  }
}
