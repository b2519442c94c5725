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

#ifndef SACO_CODING_SOLVER_H_
#define SACO_CODING_SOLVER_H_

#include <vector>

#include <Eigen/Dense>

namespace saco::coding {

struct SolverOptions {
  double tol = 1e-6;
  int max_iter = 1000;
  // Keep the objective value after every iteration.
  bool record_objective = false;
};

struct SolveResult {
  Eigen::VectorXd coeffs;
  bool converged = false;
  int iterations = 0;
  // Largest violation of the subgradient optimality conditions.
  double kkt_residual = 0.0;
  std::vector<double> objective;
};

// Proximal gradient solver for
//   min_a ||x - D a||^2 + lambda2 ||diag(r) a||^2 + lambda1 ||diag(w) a||_1
// with a constant step 1 / (sigma_max(D^T D) + lambda2 max r_i^2). The Gram
// matrix and its largest eigenvalue are computed once per dictionary.
class IterativeSolver {
 public:
  explicit IterativeSolver(const Eigen::MatrixXd& dictionary);

  SolveResult Solve(const Eigen::VectorXd& x, const Eigen::VectorXd& l1_weights, double lambda1,
                    const Eigen::VectorXd& ridge_weights, double lambda2,
                    const SolverOptions& options) const;

  const Eigen::MatrixXd& dictionary() const { return d_; }
  double gram_norm() const { return gram_norm_; }

 private:
  Eigen::MatrixXd d_;
  Eigen::MatrixXd gram_;
  double gram_norm_;
};

// min ||x - D a||^2 + lambda1 ||diag(w) a||_1
SolveResult SolveWeightedL1(const Eigen::VectorXd& x, const Eigen::MatrixXd& dictionary,
                            const Eigen::VectorXd& w, double lambda1,
                            const SolverOptions& options = {});

// min ||x - D a||^2 + lambda2 ||diag(w) a||^2 + lambda1 ||a||_1
SolveResult SolveWeightedL2L1(const Eigen::VectorXd& x, const Eigen::MatrixXd& dictionary,
                              const Eigen::VectorXd& w, double lambda1, double lambda2,
                              const SolverOptions& options = {});

double SparseObjective(const Eigen::VectorXd& x, const Eigen::MatrixXd& dictionary,
                       const Eigen::VectorXd& a, const Eigen::VectorXd& l1_weights,
                       double lambda1, const Eigen::VectorXd& ridge_weights, double lambda2);

// sgn(u_i) max(0, |u_i| - t_i)
Eigen::VectorXd Shrink(const Eigen::VectorXd& u, const Eigen::VectorXd& thresholds);

}  // namespace saco::coding

#endif  // SACO_CODING_SOLVER_H_
