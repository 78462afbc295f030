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

/// Rotates `v` in place so that its largest-modulus entry is real and
/// nonnegative. Entries within a relative 1e-12 of the maximum modulus count
/// as ties; the lowest index wins.
void apply_phase_convention(CVector& v);

/// Unit vector maximizing v^H K v / v^H M v for Hermitian K and Hermitian
/// positive definite M, solved on the definite pair (K, M) directly.
/// Throws NumericalError if M is not positive definite or its condition
/// number exceeds 1e12.
CVector largest_generalized_eigvec(const CMatrix& K, const CMatrix& M);

/// (I_repeat kron block) * w, evaluated block by block.
CVector kron_block_apply(const CMatrix& block, int repeat, const CVector& w);

/// Materialized I_repeat kron block.
CMatrix kron_identity(int repeat, const CMatrix& block);

/// Maximize (w^H A w / w^H B w) * (w^H C w / w^H D w) over unit w.
///
/// Either the four matrices are stored densely, or each operator is
/// I_repeat kron X and only the blocks X are kept.
class RatioProductProblem {
 public:
  enum class Structure { dense, kron_block };

  static RatioProductProblem dense(CMatrix num1, CMatrix den1, CMatrix num2,
                                   CMatrix den2);
  static RatioProductProblem kron_block(CMatrix num1, CMatrix den1, CMatrix num2,
                                        CMatrix den2, int repeat);

  Structure structure() const { return structure_; }
  int repeat() const { return repeat_; }
  int block_size() const { return static_cast<int>(num1_.rows()); }
  /// Length of w.
  int dimension() const { return block_size() * repeat_; }

  const CMatrix& num1() const { return num1_; }
  const CMatrix& den1() const { return den1_; }
  const CMatrix& num2() const { return num2_; }
  const CMatrix& den2() const { return den2_; }

  /// Operator (dense) or block (kron) applied to w.
  CVector apply(const CMatrix& op, const CVector& w) const;
  /// Real part of w^H op w, with op expanded per the structure.
  double quadratic(const CMatrix& op, const CVector& w) const;
  /// Ratio product at w.
  double objective(const CVector& w) const;

  /// Same problem with every operator materialized densely.
  RatioProductProblem to_dense() const;

 private:
  RatioProductProblem(CMatrix num1, CMatrix den1, CMatrix num2, CMatrix den2,
                      Structure structure, int repeat);

  CMatrix num1_, den1_, num2_, den2_;
  Structure structure_;
  int repeat_;
};

struct GpiReport {
  CVector solution;   // unit norm, phase convention applied
  double objective;   // ratio product at `solution`
  int iterations;
  bool converged;
  double residual;    // last ||w_next - w|| after phase alignment
};

/// Generalized power iteration for the ratio product. Each step is
///   w+ = normalize([B/b + D/d]^-1 [A/a + C/c] w),  a = w^H A w, ...
/// which is the fixed point of the stationarity condition of the log
/// objective. A step that lowers the objective is halved toward the current
/// iterate up to 10 times; if none of the halvings helps, iteration stops
/// with converged = false. Throws NumericalError when a denominator
/// combination is singular or a numerator form vanishes.
GpiReport gpi_solve(const RatioProductProblem& problem, const CVector& w0,
                    double tol = 1e-8, int max_iter = 500);

}  // namespace dmsec
