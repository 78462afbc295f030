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

#include "dmsec/numeric_solvers.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace dmsec {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(what) + " must be a nonempty square matrix");
  }
}

void require_hermitian(const CMatrix& m, const char* what) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument(std::string(what) + " is not Hermitian");
  }
}

// Smallest and largest eigenvalue of a Hermitian matrix.
std::pair<double, double> spectrum_bounds(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigenvalue solve did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

void require_positive_definite(const CMatrix& m, const char* what) {
  const auto [lo, hi] = spectrum_bounds(m);
  if (!(lo > 0.0)) {
    std::ostringstream msg;
    msg << what << " is not positive definite (smallest eigenvalue " << lo << ")";
    throw NumericalError(msg.str());
  }
  (void)hi;
}

CVector normalized(const CVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw NumericalError("iterate collapsed to zero or overflowed");
  }
  return v / norm;
}

// Rotate `next` so that <prev, next> is real and nonnegative.
void align_phase(const CVector& prev, CVector& next) {
  const Complex inner = prev.dot(next);
  const double mag = std::abs(inner);
  if (mag > 0.0) next *= std::conj(inner) / mag;
}

}  // namespace

void apply_phase_convention(CVector& v) {
  if (v.size() == 0) return;
  const double max_mod = v.cwiseAbs().maxCoeff();
  if (max_mod == 0.0) return;
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= max_mod * (1.0 - 1e-12)) {
      pivot = i;
      break;
    }
  }
  const Complex p = v(pivot);
  v *= std::conj(p) / std::abs(p);
  v(pivot) = Complex(std::abs(v(pivot)), 0.0);
}

CVector largest_generalized_eigvec(const CMatrix& K, const CMatrix& M) {
  require_square(K, "numerator matrix");
  require_square(M, "denominator matrix");
  if (K.rows() != M.rows()) {
    throw std::invalid_argument("generalized eigenproblem matrices differ in size");
  }
  require_hermitian(K, "numerator matrix");
  require_hermitian(M, "denominator matrix");

  const auto [lo, hi] = spectrum_bounds(M);
  if (!(lo > 0.0)) {
    std::ostringstream msg;
    msg << "denominator matrix is not positive definite (smallest eigenvalue " << lo
        << ")";
    throw NumericalError(msg.str());
  }
  if (hi / lo > 1e12) {
    std::ostringstream msg;
    msg << "denominator matrix is numerically singular (condition number " << hi / lo
        << " > 1e12)";
    throw NumericalError(msg.str());
  }

  Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> solver(
      K, M, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("generalized eigenvalue solve did not converge");
  }
  CVector v = normalized(solver.eigenvectors().col(K.rows() - 1));
  apply_phase_convention(v);
  return v;
}

CVector kron_block_apply(const CMatrix& block, int repeat, const CVector& w) {
  require_square(block, "Kronecker block");
  if (repeat < 1) throw std::invalid_argument("Kronecker repeat count must be >= 1");
  const Eigen::Index n = block.rows();
  if (w.size() != n * repeat) {
    throw std::invalid_argument("vector length does not match block size * repeat");
  }
  CVector out(w.size());
  Eigen::Map<const CMatrix> cols(w.data(), n, repeat);
  Eigen::Map<CMatrix> out_cols(out.data(), n, repeat);
  out_cols.noalias() = block * cols;
  return out;
}

CMatrix kron_identity(int repeat, const CMatrix& block) {
  if (repeat < 1) throw std::invalid_argument("Kronecker repeat count must be >= 1");
  const Eigen::Index n = block.rows();
  CMatrix out = CMatrix::Zero(n * repeat, block.cols() * repeat);
  for (int k = 0; k < repeat; ++k) {
    out.block(k * n, k * block.cols(), n, block.cols()) = block;
  }
  return out;
}

RatioProductProblem::RatioProductProblem(CMatrix num1, CMatrix den1, CMatrix num2,
                                         CMatrix den2, Structure structure, int repeat)
    : num1_(std::move(num1)),
      den1_(std::move(den1)),
      num2_(std::move(num2)),
      den2_(std::move(den2)),
      structure_(structure),
      repeat_(repeat) {
  if (repeat_ < 1) throw std::invalid_argument("Kronecker repeat count must be >= 1");
  for (const CMatrix* m : {&num1_, &den1_, &num2_, &den2_}) {
    require_square(*m, "ratio-product operator");
    if (m->rows() != num1_.rows()) {
      throw std::invalid_argument("ratio-product operators differ in size");
    }
    require_hermitian(*m, "ratio-product operator");
  }
  require_positive_definite(den1_, "first denominator");
  require_positive_definite(den2_, "second denominator");
}

RatioProductProblem RatioProductProblem::dense(CMatrix num1, CMatrix den1, CMatrix num2,
                                               CMatrix den2) {
  return RatioProductProblem(std::move(num1), std::move(den1), std::move(num2),
                             std::move(den2), Structure::dense, 1);
}

RatioProductProblem RatioProductProblem::kron_block(CMatrix num1, CMatrix den1,
                                                    CMatrix num2, CMatrix den2,
                                                    int repeat) {
  return RatioProductProblem(std::move(num1), std::move(den1), std::move(num2),
                             std::move(den2), Structure::kron_block, repeat);
}

RatioProductProblem RatioProductProblem::to_dense() const {
  if (structure_ == Structure::dense) return *this;
  return dense(kron_identity(repeat_, num1_), kron_identity(repeat_, den1_),
               kron_identity(repeat_, num2_), kron_identity(repeat_, den2_));
}

CVector RatioProductProblem::apply(const CMatrix& op, const CVector& w) const {
  if (structure_ == Structure::kron_block) return kron_block_apply(op, repeat_, w);
  if (w.size() != op.cols()) throw std::invalid_argument("vector length mismatch");
  return op * w;
}

double RatioProductProblem::quadratic(const CMatrix& op, const CVector& w) const {
  return w.dot(apply(op, w)).real();
}

double RatioProductProblem::objective(const CVector& w) const {
  return quadratic(num1_, w) / quadratic(den1_, w) * quadratic(num2_, w) /
         quadratic(den2_, w);
}

namespace {

// One raw fixed-point step from unit `w`.
CVector gpi_step(const RatioProductProblem& problem, const CVector& w) {
  const double a = problem.quadratic(problem.num1(), w);
  const double b = problem.quadratic(problem.den1(), w);
  const double c = problem.quadratic(problem.num2(), w);
  const double d = problem.quadratic(problem.den2(), w);
  if (!(b > 0.0) || !(d > 0.0)) {
    throw NumericalError("denominator quadratic form is not positive");
  }
  if (!(a > 0.0) || !(c > 0.0)) {
    throw NumericalError("numerator quadratic form vanished at the iterate");
  }
  const CMatrix den_op = problem.den1() / b + problem.den2() / d;
  const CMatrix num_op = problem.num1() / a + problem.num2() / c;
  Eigen::LLT<CMatrix> llt(den_op);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("denominator combination is not positive definite");
  }
  const CVector rhs = problem.apply(num_op, w);
  if (problem.structure() == RatioProductProblem::Structure::dense) {
    return llt.solve(rhs);
  }
  // (I kron X)^-1 = I kron X^-1: one small factorization, solved per block.
  const Eigen::Index n = problem.block_size();
  CVector out(rhs.size());
  Eigen::Map<const CMatrix> rhs_cols(rhs.data(), n, problem.repeat());
  Eigen::Map<CMatrix> out_cols(out.data(), n, problem.repeat());
  out_cols = llt.solve(rhs_cols);
  return out;
}

}  // namespace

GpiReport gpi_solve(const RatioProductProblem& problem, const CVector& w0, double tol,
                    int max_iter) {
  if (w0.size() != problem.dimension()) {
    throw std::invalid_argument("initial vector length does not match the problem");
  }
  if (!(tol > 0.0) || max_iter < 1) {
    throw std::invalid_argument("tolerance must be positive and max_iter >= 1");
  }
  constexpr int kMaxHalvings = 10;

  CVector w = normalized(w0);
  double f = problem.objective(w);
  GpiReport report{w, f, 0, false, 0.0};

  for (int it = 1; it <= max_iter; ++it) {
    report.iterations = it;
    CVector next = normalized(gpi_step(problem, w));
    align_phase(w, next);
    const CVector step = next - w;
    double residual = step.norm();
    double f_next = problem.objective(next);

    if (residual < tol) {
      if (f_next >= f) {
        w = next;
        f = f_next;
      }
      report.residual = residual;
      report.converged = true;
      break;
    }

    if (!(f_next >= f)) {
      bool accepted = false;
      double t = 1.0;
      for (int k = 0; k < kMaxHalvings; ++k) {
        t *= 0.5;
        CVector trial = normalized(w + t * step);
        const double f_trial = problem.objective(trial);
        if (f_trial >= f) {
          next = std::move(trial);
          f_next = f_trial;
          residual = (next - w).norm();
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        report.residual = residual;
        report.converged = false;
        break;
      }
    }

    w = std::move(next);
    f = f_next;
    report.residual = residual;
  }

  apply_phase_convention(w);
  report.solution = w;
  report.objective = problem.objective(w);
  return report;
}

}  // namespace dmsec
