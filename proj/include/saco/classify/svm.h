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

#ifndef SACO_CLASSIFY_SVM_H_
#define SACO_CLASSIFY_SVM_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace saco::classify {

// Arithmetic mean of the codes. Throws kInvalidInput for an empty list or
// codes of differing length.
Eigen::VectorXd PoolCodes(std::span<const Eigen::VectorXd> codes);

// Per-dimension affine map f -> (f - mean) / scale fitted on training
// features. Dimensions with zero spread keep scale 1.
struct FeatureScaler {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;

  static FeatureScaler Fit(const Eigen::MatrixXd& features);
  static FeatureScaler Identity(int dim);
  Eigen::MatrixXd Apply(const Eigen::MatrixXd& features) const;  // rows are features
  Eigen::VectorXd Apply(const Eigen::VectorXd& feature) const;
};

std::string FormatFeatureScaler(const FeatureScaler& scaler);
FeatureScaler ParseFeatureScaler(const std::string& text);

struct SvmOptions {
  double c_reg = 1.0;
  int epochs = 300;
  std::uint64_t seed = 0;
};

// One-vs-rest linear SVM. Class c scores w_c . f + b_c.
struct LinearSvmModel {
  Eigen::MatrixXd weights;  // classes x dim
  Eigen::VectorXd biases;
  double c_reg = 1.0;
  std::uint64_t seed = 0;

  int num_classes() const { return static_cast<int>(weights.rows()); }
  int dim() const { return static_cast<int>(weights.cols()); }
};

// For every class c minimizes
//   (C_reg / 2) ||w||^2 + (1/n) sum_i max(0, 1 - y_i (w . f_i + b))
// with y_i = +1 for class c and -1 otherwise, by full-batch subgradient
// descent with step 1 / (C_reg t), t = 1..epochs. The bias is not
// regularized. The iterate with the lowest objective is kept. Labels must be
// in [0, C) with C = max label + 1 and at least two classes present.
LinearSvmModel TrainSvm(const Eigen::MatrixXd& features, std::span<const int> labels,
                        const SvmOptions& options = {});

// Objective value of one class's (w, b), as minimized above.
double SvmObjective(const Eigen::MatrixXd& features, std::span<const int> labels, int positive,
                    const Eigen::VectorXd& w, double b, double c_reg);

struct Prediction {
  int label = 0;
  Eigen::VectorXd scores;
};

// Argmax score, lowest class index on ties.
Prediction PredictSvm(const LinearSvmModel& model, const Eigen::VectorXd& feature);
std::vector<Prediction> PredictSvmBatch(const LinearSvmModel& model, const Eigen::MatrixXd& features);

// Plain-text serialization (key-value header plus one line per class).
std::string FormatSvmModel(const LinearSvmModel& model);
LinearSvmModel ParseSvmModel(const std::string& text);

}  // namespace saco::classify

#endif  // SACO_CLASSIFY_SVM_H_
