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

#include "saco/classify/svm.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "saco/core/csv.h"
#include "saco/core/error.h"

namespace saco::classify {

Eigen::VectorXd PoolCodes(std::span<const Eigen::VectorXd> codes) {
  Require(!codes.empty(), ErrorCode::kInvalidInput, "cannot pool an empty list of codes");
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(codes.front().size());
  for (const Eigen::VectorXd& c : codes) {
    Require(c.size() == sum.size(), ErrorCode::kInvalidInput, "codes differ in length");
    sum += c;
  }
  return sum / static_cast<double>(codes.size());
}

FeatureScaler FeatureScaler::Fit(const Eigen::MatrixXd& features) {
  Require(features.rows() >= 1, ErrorCode::kInvalidInput, "cannot fit a scaler on no features");
  FeatureScaler s;
  s.mean = features.colwise().mean().transpose();
  s.scale = ((features.rowwise() - s.mean.transpose()).colwise().squaredNorm() /
             static_cast<double>(features.rows()))
                .cwiseSqrt()
                .transpose();
  for (Eigen::Index k = 0; k < s.scale.size(); ++k) {
    if (!(s.scale[k] > 0.0)) s.scale[k] = 1.0;
  }
  return s;
}

FeatureScaler FeatureScaler::Identity(int dim) {
  return {Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim)};
}

Eigen::MatrixXd FeatureScaler::Apply(const Eigen::MatrixXd& features) const {
  Require(features.cols() == mean.size(), ErrorCode::kInvalidInput,
          "feature dimension does not match the scaler");
  return (features.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array();
}

Eigen::VectorXd FeatureScaler::Apply(const Eigen::VectorXd& feature) const {
  Require(feature.size() == mean.size(), ErrorCode::kInvalidInput,
          "feature dimension does not match the scaler");
  return (feature - mean).cwiseQuotient(scale);
}

std::string FormatFeatureScaler(const FeatureScaler& scaler) {
  std::ostringstream out;
  out << "dim " << scaler.mean.size() << "\nmean";
  for (Eigen::Index k = 0; k < scaler.mean.size(); ++k) out << ' ' << FormatDouble(scaler.mean[k]);
  out << "\nscale";
  for (Eigen::Index k = 0; k < scaler.scale.size(); ++k) out << ' ' << FormatDouble(scaler.scale[k]);
  out << '\n';
  return out.str();
}

FeatureScaler ParseFeatureScaler(const std::string& text) {
  std::istringstream in(text);
  std::string key;
  int dim = -1;
  in >> key >> dim;
  Require(key == "dim" && dim >= 0, ErrorCode::kFormat, "scaler: bad header");
  FeatureScaler s{Eigen::VectorXd(dim), Eigen::VectorXd(dim)};
  for (Eigen::VectorXd* v : {&s.mean, &s.scale}) {
    in >> key;
    for (int k = 0; k < dim; ++k) in >> (*v)[k];
  }
  Require(static_cast<bool>(in), ErrorCode::kFormat, "scaler: truncated values");
  return s;
}

double SvmObjective(const Eigen::MatrixXd& features, std::span<const int> labels, int positive,
                    const Eigen::VectorXd& w, double b, double c_reg) {
  const Eigen::VectorXd margins = features * w;
  double hinge = 0.0;
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    const double y = labels[i] == positive ? 1.0 : -1.0;
    hinge += std::max(0.0, 1.0 - y * (margins[i] + b));
  }
  return 0.5 * c_reg * w.squaredNorm() + hinge / static_cast<double>(features.rows());
}

LinearSvmModel TrainSvm(const Eigen::MatrixXd& features, std::span<const int> labels,
                        const SvmOptions& options) {
  const Eigen::Index n = features.rows();
  Require(n >= 1 && static_cast<std::size_t>(n) == labels.size(), ErrorCode::kInvalidInput,
          "SVM training needs one label per feature row");
  Require(features.allFinite(), ErrorCode::kInvalidInput, "SVM features must be finite");
  Require(std::isfinite(options.c_reg) && options.c_reg > 0.0, ErrorCode::kInvalidConfig,
          "SVM C_reg must be positive");
  Require(options.epochs >= 1, ErrorCode::kInvalidConfig, "SVM epochs must be >= 1");
  int classes = 0;
  for (int y : labels) {
    Require(y >= 0, ErrorCode::kInvalidInput, "SVM labels must be non-negative");
    classes = std::max(classes, y + 1);
  }
  int present = 0;
  for (int c = 0; c < classes; ++c) {
    present += std::find(labels.begin(), labels.end(), c) != labels.end();
  }
  Require(present >= 2, ErrorCode::kInvalidInput, "SVM training needs at least two classes");

  LinearSvmModel model;
  model.c_reg = options.c_reg;
  model.seed = options.seed;
  model.weights = Eigen::MatrixXd::Zero(classes, features.cols());
  model.biases = Eigen::VectorXd::Zero(classes);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int c = 0; c < classes; ++c) {
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = labels[i] == c ? 1.0 : -1.0;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(features.cols());
    double b = 0.0;
    Eigen::VectorXd best_w = w;
    double best_b = b;
    double best = SvmObjective(features, labels, c, w, b, options.c_reg);
    for (int t = 1; t <= options.epochs; ++t) {
      const Eigen::VectorXd margins = features * w;
      Eigen::VectorXd grad_w = options.c_reg * w;
      double grad_b = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (y[i] * (margins[i] + b) < 1.0) {
          grad_w.noalias() -= (y[i] * inv_n) * features.row(i).transpose();
          grad_b -= y[i] * inv_n;
        }
      }
      const double step = 1.0 / (options.c_reg * t);
      w -= step * grad_w;
      b -= step * grad_b;
      const double obj = SvmObjective(features, labels, c, w, b, options.c_reg);
      if (obj < best) {
        best = obj;
        best_w = w;
        best_b = b;
      }
    }
    model.weights.row(c) = best_w.transpose();
    model.biases[c] = best_b;
  }
  return model;
}

Prediction PredictSvm(const LinearSvmModel& model, const Eigen::VectorXd& feature) {
  Require(feature.size() == model.dim(), ErrorCode::kInvalidInput,
          "feature dimension " + std::to_string(feature.size()) + " does not match SVM dimension " +
              std::to_string(model.dim()));
  Prediction p;
  p.scores = model.weights * feature + model.biases;
  for (int c = 1; c < model.num_classes(); ++c) {
    if (p.scores[c] > p.scores[p.label]) p.label = c;
  }
  return p;
}

std::vector<Prediction> PredictSvmBatch(const LinearSvmModel& model,
                                        const Eigen::MatrixXd& features) {
  std::vector<Prediction> out;
  out.reserve(features.rows());
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    out.push_back(PredictSvm(model, features.row(i).transpose()));
  }
  return out;
}

std::string FormatSvmModel(const LinearSvmModel& model) {
  std::ostringstream out;
  out << "classes " << model.num_classes() << "\n"
      << "dim " << model.dim() << "\n"
      << "c_reg " << FormatDouble(model.c_reg) << "\n"
      << "seed " << model.seed << "\n";
  for (int c = 0; c < model.num_classes(); ++c) {
    out << FormatDouble(model.biases[c]);
    for (int k = 0; k < model.dim(); ++k) out << ' ' << FormatDouble(model.weights(c, k));
    out << '\n';
  }
  return out.str();
}

LinearSvmModel ParseSvmModel(const std::string& text) {
  std::istringstream in(text);
  auto expect = [&](const char* key) {
    std::string k;
    in >> k;
    Require(k == key, ErrorCode::kFormat, std::string("SVM model: expected '") + key + "'");
  };
  LinearSvmModel model;
  int classes = 0;
  int dim = 0;
  expect("classes");
  in >> classes;
  expect("dim");
  in >> dim;
  expect("c_reg");
  in >> model.c_reg;
  expect("seed");
  in >> model.seed;
  Require(static_cast<bool>(in) && classes >= 1 && dim >= 0, ErrorCode::kFormat,
          "SVM model: bad header");
  model.weights.resize(classes, dim);
  model.biases.resize(classes);
  for (int c = 0; c < classes; ++c) {
    in >> model.biases[c];
    for (int k = 0; k < dim; ++k) in >> model.weights(c, k);
  }
  Require(static_cast<bool>(in), ErrorCode::kFormat, "SVM model: truncated weights");
  return model;
}

}  // namespace saco::classify
