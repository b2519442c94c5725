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

#include "saco/coding/saco.h"

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "saco/core/error.h"
#include "saco/core/parallel.h"

namespace saco::coding {
namespace {

// Beyond this the Gram matrix is treated as singular.
constexpr double kSingularCondition = 1e14;

// Shared by the per-patch and dense paths so both produce identical bits.
inline double Dot(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

inline double ShrinkScalar(double u, double threshold) {
  const double mag = std::abs(u) - threshold;
  return mag > 0.0 ? std::copysign(mag, u) : 0.0;
}

std::string FormatCondition(double c) {
  std::ostringstream out;
  out << c;
  return out.str();
}

Eigen::VectorXd SolveRidge(const Eigen::MatrixXd& gram, const Eigen::MatrixXd& d,
                           const Eigen::VectorXd& x, const Eigen::VectorXd& w, double lambda2) {
  Eigen::MatrixXd system = gram;
  system.diagonal() += lambda2 * w.cwiseAbs2();
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
  // Pivot spread catches exactly singular systems the norm estimate misses.
  const Eigen::VectorXd pivots = ldlt.vectorD().cwiseAbs();
  const double spread = pivots.maxCoeff() > 0.0 ? pivots.minCoeff() / pivots.maxCoeff() : 0.0;
  const double rcond = ldlt.info() == Eigen::Success ? std::min(ldlt.rcond(), spread) : 0.0;
  Require(rcond > 1.0 / kSingularCondition, ErrorCode::kLinearSolve,
          "SACO-II system is singular (condition estimate " +
              FormatCondition(rcond > 0 ? 1.0 / rcond : std::numeric_limits<double>::infinity()) +
              ")");
  return ldlt.solve(d.transpose() * x);
}

}  // namespace

Coder::Coder(const Eigen::MatrixXd& dictionary, double lambda1, double lambda2)
    : d_(dictionary), lambda1_(lambda1), lambda2_(lambda2) {
  Require(d_.cols() >= 1, ErrorCode::kInvalidInput, "dictionary has no atoms");
  Require(d_.rows() >= d_.cols(), ErrorCode::kInvalidInput,
          "dictionary is over-complete: feature dimension " + std::to_string(d_.rows()) +
              " < " + std::to_string(d_.cols()) + " atoms");
  Require(d_.allFinite(), ErrorCode::kInvalidInput, "dictionary atoms must be finite");
  Require(std::isfinite(lambda1) && lambda1 >= 0.0 && std::isfinite(lambda2) && lambda2 >= 0.0,
          ErrorCode::kInvalidConfig, "lambda1 and lambda2 must be non-negative");
  gram_ = d_.transpose() * d_;
  const Eigen::VectorXd eig =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram_, Eigen::EigenvaluesOnly).eigenvalues();
  const double lo = eig.minCoeff();
  const double hi = eig.maxCoeff();
  condition_ = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  Require(condition_ <= kSingularCondition, ErrorCode::kLinearSolve,
          "D^T D is singular (condition estimate " + FormatCondition(condition_) + ")");
  if (condition_ > kConditionWarning) {
    std::clog << "warning: ill-conditioned dictionary, cond(D^T D) = " << condition_ << "\n";
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram_);
  Require(ldlt.info() == Eigen::Success, ErrorCode::kLinearSolve,
          "factorization of D^T D failed (condition estimate " + FormatCondition(condition_) +
              ")");
  omega_ = ldlt.solve(d_.transpose());
  // Singular values of Omega are 1/sigma_i(D); as a map on R^p it also has a
  // (p - m)-dimensional null space.
  omega_sigma_min_ = d_.rows() > d_.cols() ? 0.0 : 1.0 / std::sqrt(hi);
}

void Coder::CheckQuery(std::size_t x_size, Eigen::Index w_size) const {
  Require(x_size == static_cast<std::size_t>(d_.rows()), ErrorCode::kInvalidInput,
          "patch dimension " + std::to_string(x_size) + " does not match dictionary rows " +
              std::to_string(d_.rows()));
  Require(w_size == d_.cols(), ErrorCode::kInvalidInput,
          "weight vector length does not match dictionary size");
}

Eigen::VectorXd Coder::LeastSquares(std::span<const double> x) const {
  Require(x.size() == static_cast<std::size_t>(d_.rows()), ErrorCode::kInvalidInput,
          "patch dimension does not match dictionary rows");
  Eigen::VectorXd u(d_.cols());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    u[i] = Dot(omega_.row(i).data(), x.data(), dim());
  }
  return u;
}

Eigen::VectorXd Coder::Saco1(std::span<const double> x, const Eigen::VectorXd& w) const {
  CheckQuery(x.size(), w.size());
  Eigen::VectorXd a = LeastSquares(x);
  for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = ShrinkScalar(a[i], lambda1_ * w[i]);
  return a;
}

Eigen::VectorXd Coder::Saco2(const Eigen::VectorXd& x, const Eigen::VectorXd& w) const {
  CheckQuery(static_cast<std::size_t>(x.size()), w.size());
  // Without the ridge the system is the least-squares one already factored.
  Eigen::VectorXd u = lambda2_ == 0.0
                          ? LeastSquares(std::span<const double>(x.data(), x.size()))
                          : SolveRidge(gram_, d_, x, w, lambda2_);
  for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = ShrinkScalar(u[i], lambda1_);
  return u;
}

Eigen::VectorXd Saco2(const Eigen::VectorXd& x, const Eigen::MatrixXd& dictionary,
                      const Eigen::VectorXd& w, double lambda1, double lambda2) {
  Require(dictionary.rows() >= dictionary.cols(), ErrorCode::kInvalidInput,
          "dictionary is over-complete");
  Require(x.size() == dictionary.rows() && w.size() == dictionary.cols(),
          ErrorCode::kInvalidInput, "SACO-II dimension mismatch");
  Eigen::VectorXd u =
      SolveRidge(dictionary.transpose() * dictionary, dictionary, x, w, lambda2);
  for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = ShrinkScalar(u[i], lambda1);
  return u;
}

BoundValues BoundCheck(const Eigen::VectorXd& x, const Eigen::VectorXd& a, const Coder& coder) {
  Require(x.size() == coder.dim() && a.size() == coder.size(), ErrorCode::kInvalidInput,
          "bound check dimension mismatch");
  const Eigen::VectorXd r = x - coder.dictionary() * a;
  return {(coder.omega() * r).norm(), coder.omega_min_singular_value() * r.norm()};
}

FeatureMap DenseSaco1(const FeatureMap& features, const Coder& coder,
                      const WeightField& weights) {
  Require(features.channels() == coder.dim(), ErrorCode::kInvalidInput,
          "feature map has " + std::to_string(features.channels()) +
              " channels, dictionary expects " + std::to_string(coder.dim()));
  const int h = features.height();
  const int w = features.width();
  const int m = coder.size();
  const int p = coder.dim();
  FeatureMap codes(h, w, m);
  // Correlate each Omega row with the map.
  ParallelFor(static_cast<std::size_t>(m), [&](std::size_t atom) {
    const double* row = coder.omega().row(static_cast<Eigen::Index>(atom)).data();
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) codes.cell(r, c)[atom] = Dot(row, features.cell(r, c).data(), p);
    }
  });
  // Spatially varying shrink.
  ParallelFor(static_cast<std::size_t>(h) * w, [&](std::size_t cell) {
    const int r = static_cast<int>(cell) / w;
    const int c = static_cast<int>(cell) % w;
    const Eigen::VectorXd wv = weights(features.CellCoord(r, c));
    Require(wv.size() == m, ErrorCode::kInvalidInput, "weight field returned wrong length");
    auto out = codes.cell(r, c);
    for (int i = 0; i < m; ++i) out[i] = ShrinkScalar(out[i], coder.lambda1() * wv[i]);
  });
  return codes;
}

}  // namespace saco::coding
