// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "saco/coding/solver.h"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "saco/core/error.h"

namespace saco::coding {
namespace {

double KktResidual(const Eigen::VectorXd& a, const Eigen::VectorXd& grad,
                   const Eigen::VectorXd& l1_weights, double lambda1) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double t = lambda1 * l1_weights[i];
    const double v = a[i] != 0.0 ? std::abs(grad[i] + t * (a[i] > 0 ? 1.0 : -1.0))
                                 : std::max(0.0, std::abs(grad[i]) - t);
    worst = std::max(worst, v);
  }
  return worst;
}

void CheckInputs(const Eigen::VectorXd& x, const Eigen::MatrixXd& d, const Eigen::VectorXd& w,
                 double lambda1, double lambda2) {
  Require(x.size() == d.rows(), ErrorCode::kInvalidInput,
          "patch dimension " + std::to_string(x.size()) + " does not match dictionary rows " +
              std::to_string(d.rows()));
  Require(w.size() == d.cols(), ErrorCode::kInvalidInput,
          "weight vector length does not match dictionary size");
  Require(std::isfinite(lambda1) && lambda1 >= 0.0 && std::isfinite(lambda2) && lambda2 >= 0.0,
          ErrorCode::kInvalidConfig, "lambda1 and lambda2 must be non-negative");
  Require((w.array() >= 0.0).all() && w.allFinite(), ErrorCode::kInvalidInput,
          "weights must be finite and non-negative");
}

}  // namespace

Eigen::VectorXd Shrink(const Eigen::VectorXd& u, const Eigen::VectorXd& thresholds) {
  Eigen::VectorXd a(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double mag = std::abs(u[i]) - thresholds[i];
    a[i] = mag > 0.0 ? std::copysign(mag, u[i]) : 0.0;
  }
  return a;
}

double SparseObjective(const Eigen::VectorXd& x, const Eigen::MatrixXd& dictionary,
                       const Eigen::VectorXd& a, const Eigen::VectorXd& l1_weights,
                       double lambda1, const Eigen::VectorXd& ridge_weights, double lambda2) {
  const double fit = (x - dictionary * a).squaredNorm();
  const double ridge = lambda2 == 0.0 ? 0.0 : lambda2 * ridge_weights.cwiseProduct(a).squaredNorm();
  return fit + ridge + lambda1 * l1_weights.cwiseProduct(a).cwiseAbs().sum();
}

IterativeSolver::IterativeSolver(const Eigen::MatrixXd& dictionary)
    : d_(dictionary), gram_(dictionary.transpose() * dictionary) {
  Require(d_.cols() >= 1, ErrorCode::kInvalidInput, "dictionary has no atoms");
  gram_norm_ = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram_, Eigen::EigenvaluesOnly)
                   .eigenvalues()
                   .maxCoeff();
}

SolveResult IterativeSolver::Solve(const Eigen::VectorXd& x, const Eigen::VectorXd& l1_weights,
                                   double lambda1, const Eigen::VectorXd& ridge_weights,
                                   double lambda2, const SolverOptions& options) const {
  CheckInputs(x, d_, l1_weights, lambda1, lambda2);
  Require(ridge_weights.size() == d_.cols(), ErrorCode::kInvalidInput,
          "ridge weight length does not match dictionary size");
  Require(options.max_iter >= 1 && options.tol > 0.0, ErrorCode::kInvalidConfig,
          "solver needs max_iter >= 1 and tol > 0");
  const Eigen::VectorXd ridge = lambda2 * ridge_weights.cwiseAbs2();
  const double lipschitz = gram_norm_ + (lambda2 == 0.0 ? 0.0 : ridge.maxCoeff());
  SolveResult result;
  const Eigen::Index m = d_.cols();
  result.coeffs = Eigen::VectorXd::Zero(m);
  if (lipschitz <= 0.0) {  // all-zero dictionary: the zero code is optimal
    result.converged = true;
    return result;
  }
  // Gradient of the smooth part is 2 (G a - D^T x + ridge .* a); the factor 2
  // cancels against the Lipschitz constant 2 L, halving the threshold.
  const Eigen::VectorXd dtx = d_.transpose() * x;
  const Eigen::VectorXd thresholds = (0.5 * lambda1 / lipschitz) * l1_weights;
  Eigen::VectorXd& a = result.coeffs;
  for (int it = 1; it <= options.max_iter; ++it) {
    const Eigen::VectorXd half_grad = gram_ * a - dtx + ridge.cwiseProduct(a);
    const Eigen::VectorXd next = Shrink(a - half_grad / lipschitz, thresholds);
    const double change = (next - a).cwiseAbs().maxCoeff();
    a = next;
    result.iterations = it;
    if (options.record_objective) {
      result.objective.push_back(
          SparseObjective(x, d_, a, l1_weights, lambda1, ridge_weights, lambda2));
    }
    if (change < options.tol) {
      result.converged = true;
      break;
    }
  }
  const Eigen::VectorXd grad = 2.0 * (gram_ * a - dtx + ridge.cwiseProduct(a));
  result.kkt_residual = KktResidual(a, grad, l1_weights, lambda1);
  return result;
}

SolveResult SolveWeightedL1(const Eigen::VectorXd& x, const Eigen::MatrixXd& dictionary,
                            const Eigen::VectorXd& w, double lambda1,
                            const SolverOptions& options) {
  const Eigen::VectorXd none = Eigen::VectorXd::Zero(dictionary.cols());
  return IterativeSolver(dictionary).Solve(x, w, lambda1, none, 0.0, options);
}

SolveResult SolveWeightedL2L1(const Eigen::VectorXd& x, const Eigen::MatrixXd& dictionary,
                              const Eigen::VectorXd& w, double lambda1, double lambda2,
                              const SolverOptions& options) {
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(dictionary.cols());
  return IterativeSolver(dictionary).Solve(x, ones, lambda1, w, lambda2, options);
}

}  // namespace saco::coding
