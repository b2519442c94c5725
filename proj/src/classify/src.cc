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

#include "saco/classify/src.h"

#include "saco/core/error.h"

namespace saco::classify {

SrcClassifier::SrcClassifier(const Eigen::MatrixXd& dictionary, std::vector<int> atom_labels,
                             int num_classes, double lambda1, const coding::SolverOptions& options)
    : solver_(dictionary),
      atom_labels_(std::move(atom_labels)),
      num_classes_(num_classes),
      lambda1_(lambda1),
      options_(options) {
  Require(static_cast<Eigen::Index>(atom_labels_.size()) == dictionary.cols(),
          ErrorCode::kInvalidInput, "one label per dictionary atom required");
  Require(num_classes >= 1, ErrorCode::kInvalidInput, "SRC needs at least one class");
  std::vector<int> owned(num_classes, 0);
  for (int label : atom_labels_) {
    Require(label >= 0 && label < num_classes, ErrorCode::kInvalidInput,
            "atom label out of range");
    ++owned[label];
  }
  for (int c = 0; c < num_classes; ++c) {
    Require(owned[c] > 0, ErrorCode::kInvalidInput,
            "class " + std::to_string(c) + " owns no dictionary atom");
  }
}

SrcResult SrcClassifier::Classify(const Eigen::VectorXd& x) const {
  const Eigen::Index m = solver_.dictionary().cols();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
  const Eigen::VectorXd none = Eigen::VectorXd::Zero(m);
  SrcResult out;
  out.code = solver_.Solve(x, ones, lambda1_, none, 0.0, options_).coeffs;
  out.residuals.resize(num_classes_);
  for (int c = 0; c < num_classes_; ++c) {
    Eigen::VectorXd partial = Eigen::VectorXd::Zero(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (atom_labels_[i] == c) partial[i] = out.code[i];
    }
    out.residuals[c] = (x - solver_.dictionary() * partial).norm();
  }
  for (int c = 1; c < num_classes_; ++c) {
    if (out.residuals[c] < out.residuals[out.label]) out.label = c;
  }
  return out;
}

SrcResult SrcClassify(const Eigen::VectorXd& x, const Eigen::MatrixXd& dictionary,
                      std::span<const int> atom_labels, int num_classes, double lambda1) {
  return SrcClassifier(dictionary, std::vector<int>(atom_labels.begin(), atom_labels.end()),
                       num_classes, lambda1)
      .Classify(x);
}

}  // namespace saco::classify
