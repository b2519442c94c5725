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

#ifndef SACO_CLASSIFY_PIPELINE_H_
#define SACO_CLASSIFY_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "saco/align/viewpoint.h"
#include "saco/classify/svm.h"
#include "saco/coding/dictionary.h"
#include "saco/coding/saco.h"
#include "saco/coding/solver.h"
#include "saco/core/config.h"
#include "saco/core/types.h"
#include "saco/submodular/objective.h"

namespace saco::classify {

enum class CoderKind { kSaco1, kSaco2, kIterative, kSrc };
enum class DictionarySelection { kLazyGreedy, kRandom };

struct PipelineConfig {
  // Viewpoint alignment (needs pixels on every image).
  bool align = false;
  int viewpoints = align::kDefaultViewpoints;
  double theta_step = align::kDefaultThetaStep;

  // Dictionary selection.
  int candidates_per_image = 50;
  int dictionary_size = 48;
  DictionarySelection selection = DictionarySelection::kLazyGreedy;
  int k_nn = 50;
  double spatial_sigma = 0.25;
  submodular::ObjectiveWeights weights;

  // Coding.
  int patches_per_image = 50;
  CoderKind coder = CoderKind::kSaco2;
  double lambda1 = 0.1;
  double lambda2 = 1.0;
  bool spatial = true;
  coding::SpatialWeightConfig spatial_weights;

  // Classifier.
  bool standardize = false;  // z-score pooled features before the SVM
  double c_reg = 1.0;
  int svm_epochs = 300;

  std::uint64_t seed = 0;

  // Unknown keys are rejected; missing keys keep their defaults.
  static PipelineConfig FromConfig(const KeyValueConfig& config);
  KeyValueConfig ToConfig() const;
};

std::string CoderName(CoderKind kind);
CoderKind ParseCoder(const std::string& name);

struct TrainedPipeline {
  PipelineConfig config;
  int num_classes = 0;
  coding::Dictionary dictionary;
  FeatureScaler scaler;  // unused by the SRC coder
  LinearSvmModel svm;    // unused by the SRC coder
  std::optional<align::ViewpointModel> viewpoints;
  double train_accuracy = 0.0;
};

struct PredictionReport {
  std::vector<int> image_ids;
  std::vector<int> true_labels;
  std::vector<int> predicted;
  Eigen::MatrixXd scores;      // images x classes
  Eigen::MatrixXi confusion;   // true x predicted
  double accuracy = 0.0;
};

// Stage errors are rethrown with the stage name prefixed.
TrainedPipeline TrainPipeline(std::span<const FeatureImage> train, const PipelineConfig& config);
PredictionReport PredictPipeline(const TrainedPipeline& model, std::span<const FeatureImage> test);
PredictionReport RunPipeline(std::span<const FeatureImage> train,
                             std::span<const FeatureImage> test, const PipelineConfig& config);

// Codes single patches with the configured coder (not SRC) and spatial
// weights, exactly as the pipeline does before pooling.
class PatchCoder {
 public:
  PatchCoder(const coding::Dictionary& dictionary, const PipelineConfig& config);

  Eigen::VectorXd Code(const Patch& patch) const;
  // Per-atom weights at `coord` (all ones with spatial weighting off).
  Eigen::VectorXd Weights(const Coord& coord) const;

 private:
  const coding::Dictionary& dictionary_;
  PipelineConfig config_;
  std::optional<coding::Coder> coder_;
  std::optional<coding::IterativeSolver> solver_;
};

// Candidate pool of the selection stage: `candidates_per_image` random cells
// per image; repeated and all-zero feature vectors are dropped.
std::vector<Patch> SampleTrainingCandidates(std::span<const FeatureImage> images,
                                            const PipelineConfig& config);

// Pooled codes of every image (one row each), as fed to the SVM.
Eigen::MatrixXd EncodeImages(const TrainedPipeline& model, std::span<const FeatureImage> images,
                             std::uint64_t tag);

// Predictions CSV `image_id,true_label,pred_label,score_0..score_{C-1}`.
std::string FormatPredictions(const PredictionReport& report);
// Plain-text confusion matrix and accuracy.
std::string FormatReport(const PredictionReport& report);

// Model directory: config, dictionary tensor + metadata, SVM weights and
// optional viewpoint medoids.
void SavePipeline(const std::filesystem::path& dir, const TrainedPipeline& model);
TrainedPipeline LoadPipeline(const std::filesystem::path& dir);

}  // namespace saco::classify

#endif  // SACO_CLASSIFY_PIPELINE_H_
