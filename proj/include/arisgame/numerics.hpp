// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The arisgame Authors
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
// ------------------------------------------------------------------------

#ifndef ARISGAME_NUMERICS_HPP
#define ARISGAME_NUMERICS_HPP

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace arisgame {

using cdouble = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ConstVecRef = Eigen::Ref<const RealVector>;
using MatRef = Eigen::Ref<RealMatrix>;

class InfeasibleStart : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// True if every entry is finite (no NaN / Inf in either component).
bool all_finite(const ComplexMatrix& m);

namespace numerics {

// A smooth real function of a real vector. Constraint functions are read as
// g(x) <= 0; objectives are maximized.
class SmoothFunction {
 public:
  virtual ~SmoothFunction() = default;

  virtual double value(ConstVecRef x) const = 0;

  // grad is resized by the callee.
  virtual void gradient(ConstVecRef x, RealVector& grad) const = 0;

  // Accumulates weight * Hessian(x) into hess (dimension x dimension).
  // Returning false means no analytic Hessian; the solver then differences
  // the gradient.
  virtual bool add_hessian(ConstVecRef x, double weight, MatRef hess) const;
};

using FunctionPtr = std::shared_ptr<const SmoothFunction>;

using ValueFn = std::function<double(const RealVector&)>;
using GradientFn = std::function<RealVector(const RealVector&)>;
using HessianFn = std::function<RealMatrix(const RealVector&)>;

// Wraps closures as a SmoothFunction; an empty hessian falls back to finite
// differences inside the solver.
FunctionPtr make_function(ValueFn value, GradientFn gradient, HessianFn hessian = {});

// Affine function c^T x + offset.
FunctionPtr make_affine(RealVector coeffs, double offset);

// Concave objective over a convex set {x : g_i(x) <= 0, lower <= x <= upper}.
// Variables with lower == upper are held fixed.
struct ConvexProgram {
  FunctionPtr objective;
  std::vector<FunctionPtr> constraints;
  RealVector lower;
  RealVector upper;

  Eigen::Index dimension() const { return lower.size(); }
};

struct SolverConfig {
  double tol_obj = 1e-6;   // relative objective tolerance
  double tol_feas = 1e-8;  // absolute constraint violation tolerance
  int max_iters = 200;     // Newton iterations, phase I included
  double ridge = 1e-10;    // relative to trace(A)/dim in regularized solves
  bool check_gradients = false;

  void validate() const;
};

enum class SolveStatus { Converged, NoProgress };

struct SolveResult {
  RealVector x;
  double objective = 0.0;
  SolveStatus status = SolveStatus::NoProgress;
  int iterations = 0;
  // Stationarity residual of the Lagrangian, relative to max(1, |grad f|_inf).
  double kkt_residual = 0.0;
  // Barrier duality-gap bound m / t at the returned point.
  double duality_gap = 0.0;
  double max_violation = 0.0;
  // Barrier multiplier estimates, one per constraint.
  RealVector multipliers;
  // Set when the constraint set had no strict interior and the solve ran on
  // constraints relaxed by tol_feas.
  bool relaxed = false;
};

// Log-barrier interior method with Newton centering and backtracking line
// search. Tracks the best feasible iterate, so the returned objective never
// decreases when max_iters grows. Throws InfeasibleStart when start violates
// a constraint or bound by more than tol_feas.
SolveResult maximize_concave(const ConvexProgram& prog, const RealVector& start,
                             const SolverConfig& cfg);

// Solves (A + ridge I) x = b for Hermitian positive semidefinite A.
// Throws SingularMatrix when the shifted matrix is numerically singular.
ComplexVector regularized_solve(const ComplexMatrix& a, const ComplexVector& b, double ridge);

struct GradientCheck {
  double max_relative_error = 0.0;
  Eigen::Index worst_index = -1;
};

// Central finite-difference comparison of the analytic gradient.
GradientCheck check_gradient(const SmoothFunction& f, ConstVecRef x, double step = 1e-6);

// [Re z; Im z]
RealVector realify(const ComplexVector& z);
ComplexVector complexify(const RealVector& x);

}  // namespace numerics
}  // namespace arisgame

#endif  // ARISGAME_NUMERICS_HPP
