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

#ifndef SACO_CLASSIFY_SRC_H_
#define SACO_CLASSIFY_SRC_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "saco/coding/solver.h"

namespace saco::classify {

struct SrcResult {
  int label = 0;
  // ||x - D_c a_c|| per class, a_c keeping only class-c coefficients.
  Eigen::VectorXd residuals;
  Eigen::VectorXd code;
};

// Sparse-representation classifier over a labeled dictionary. Codes use the
// unweighted l1 solver; the class with the smallest partial reconstruction
// residual wins (lowest index on ties).
class SrcClassifier {
 public:
  // Throws kInvalidInput when a class in [0, num_classes) owns no atom.
  SrcClassifier(const Eigen::MatrixXd& dictionary, std::vector<int> atom_labels, int num_classes,
                double lambda1, const coding::SolverOptions& options = {});

  SrcResult Classify(const Eigen::VectorXd& x) const;
  int num_classes() const { return num_classes_; }

 private:
  coding::IterativeSolver solver_;
  std::vector<int> atom_labels_;
  int num_classes_;
  double lambda1_;
  coding::SolverOptions options_;
};

SrcResult SrcClassify(const Eigen::VectorXd& x, const Eigen::MatrixXd& dictionary,
                      std::span<const int> atom_labels, int num_classes, double lambda1);

}  // namespace saco::classify

#endif  // SACO_CLASSIFY_SRC_H_
