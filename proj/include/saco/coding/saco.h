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

#ifndef SACO_CODING_SACO_H_
#define SACO_CODING_SACO_H_

#include <functional>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "saco/core/types.h"

namespace saco::coding {

// Above this condition number of D^T D the coder logs a warning.
inline constexpr double kConditionWarning = 1e8;

// Closed-form shrink coders over a fixed under-complete dictionary (p >= m).
//
// Construction factors the Gram matrix D^T D once and stores the
// pseudo-inverse Omega = (D^T D)^{-1} D^T row-major, so every coefficient of
// u = Omega x is a plain dot product with a contiguous row.
class Coder {
 public:
  // Throws kInvalidInput when p < m and kLinearSolve (naming the condition
  // estimate) when D^T D is numerically singular.
  Coder(const Eigen::MatrixXd& dictionary, double lambda1, double lambda2 = 0.0);

  int size() const { return static_cast<int>(d_.cols()); }
  int dim() const { return static_cast<int>(d_.rows()); }
  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }
  const Eigen::MatrixXd& dictionary() const { return d_; }
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>& omega() const {
    return omega_;
  }
  double condition_number() const { return condition_; }
  // Smallest singular value of Omega as a map on R^p; zero when p > m.
  double omega_min_singular_value() const { return omega_sigma_min_; }

  // u = Omega x.
  Eigen::VectorXd LeastSquares(std::span<const double> x) const;

  // SACO-I: a_i = sgn(u_i) max(0, |u_i| - lambda1 w_i), u = Omega x.
  Eigen::VectorXd Saco1(std::span<const double> x, const Eigen::VectorXd& w) const;
  Eigen::VectorXd Saco1(const Eigen::VectorXd& x, const Eigen::VectorXd& w) const {
    return Saco1(std::span<const double>(x.data(), x.size()), w);
  }

  // SACO-II: u = (D^T D + lambda2 diag(w)^2)^{-1} D^T x, then a uniform
  // lambda1 shrink. Throws kLinearSolve when the system is singular.
  Eigen::VectorXd Saco2(const Eigen::VectorXd& x, const Eigen::VectorXd& w) const;

 private:
  void CheckQuery(std::size_t x_size, Eigen::Index w_size) const;

  Eigen::MatrixXd d_;
  Eigen::MatrixXd gram_;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> omega_;
  double lambda1_;
  double lambda2_;
  double condition_ = 1.0;
  double omega_sigma_min_ = 0.0;
};

// Standalone SACO-II for a one-off dictionary.
Eigen::VectorXd Saco2(const Eigen::VectorXd& x, const Eigen::MatrixXd& dictionary,
                      const Eigen::VectorXd& w, double lambda1, double lambda2);

struct BoundValues {
  double lhs;  // ||Omega (x - D a)||
  double rhs;  // sigma_min(Omega) ||x - D a||
};
BoundValues BoundCheck(const Eigen::VectorXd& x, const Eigen::VectorXd& a, const Coder& coder);

// Spatial weight vector for a grid location given by its normalized center.
using WeightField = std::function<Eigen::VectorXd(const Coord&)>;

// SACO-I applied to every cell of a feature map: each atom's row of Omega is
// correlated with the whole map, then a spatially varying shrink is applied.
// The result has one channel per atom.
FeatureMap DenseSaco1(const FeatureMap& features, const Coder& coder, const WeightField& weights);

}  // namespace saco::coding

#endif  // SACO_CODING_SACO_H_
