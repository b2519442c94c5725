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

#include "saco/classify/pipeline.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "saco/align/rotation.h"
#include "saco/classify/src.h"
#include "saco/coding/saco.h"
#include "saco/coding/solver.h"
#include "saco/core/affinity.h"
#include "saco/core/csv.h"
#include "saco/core/error.h"
#include "saco/core/parallel.h"
#include "saco/core/sampling.h"
#include "saco/core/tensor_io.h"
#include "saco/submodular/greedy.h"

namespace saco::classify {
namespace {

// Seed tags for the independent random streams.
constexpr std::uint64_t kCandidateTag = 1;
constexpr std::uint64_t kRandomDictionaryTag = 2;
constexpr std::uint64_t kTrainEncodeTag = 3;
constexpr std::uint64_t kTestEncodeTag = 4;
constexpr std::uint64_t kViewpointTag = 5;

template <typename F>
auto Stage(const std::string& name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const FormatError& e) {
    throw FormatError(name + ": " + e.reason(), e.offset());
  } catch (const Error& e) {
    throw Error(e.code(), name + ": " + e.detail());
  }
}

int CountLabels(std::span<const FeatureImage> images) {
  int classes = 0;
  for (const FeatureImage& im : images) {
    Require(im.label >= 0, ErrorCode::kInvalidInput, "image labels must be non-negative");
    classes = std::max(classes, im.label + 1);
  }
  return classes;
}

std::vector<FeatureImage> AlignImages(const align::ViewpointModel& model,
                                      std::span<const FeatureImage> images) {
  std::vector<FeatureImage> out(images.begin(), images.end());
  ParallelFor(out.size(), [&](std::size_t i) {
    Require(out[i].pixels.has_value(), ErrorCode::kInvalidInput,
            "image " + std::to_string(out[i].image_id) + " has no pixels to align");
    const align::Alignment a = align::AlignToMedoid(*out[i].pixels, model);
    out[i].features = align::RotateFeatureMap(out[i].features, a.theta);
    out[i].viewpoint = a.cluster;
  });
  return out;
}

// Sampling is with replacement, and rotated maps have all-zero corner cells.
// Either would put a repeated or zero column into the dictionary and make
// D^T D singular, so such candidates are dropped.
std::vector<Patch> DropUnusableCandidates(std::vector<Patch> patches) {
  std::set<std::vector<double>> seen;
  std::vector<Patch> out;
  for (Patch& p : patches) {
    if (p.features.isZero(0.0)) continue;
    if (seen.insert({p.features.data(), p.features.data() + p.features.size()}).second) {
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<int> SelectExemplars(std::span<const Patch> candidates, const PipelineConfig& config) {
  const int m = static_cast<int>(candidates.size());
  if (config.selection == DictionarySelection::kRandom) {
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(DeriveSeed(config.seed, kRandomDictionaryTag));
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(std::min(m, config.dictionary_size));
    return order;
  }
  const auto problem = submodular::SelectionProblem::FromPatches(
      candidates, BuildFeatureAffinity(candidates, config.k_nn),
      BuildSpatialAffinity(candidates, config.k_nn, config.spatial_sigma));
  return submodular::LazyGreedy(problem, config.weights, config.dictionary_size).selected;
}

struct CodeContext {
  const TrainedPipeline& model;
  std::optional<PatchCoder> coder;
  std::optional<SrcClassifier> src;

  explicit CodeContext(const TrainedPipeline& m) : model(m) {
    if (m.config.coder == CoderKind::kSrc) {
      src.emplace(m.dictionary.atoms, m.dictionary.labels, m.num_classes, m.config.lambda1);
    } else {
      coder.emplace(m.dictionary, m.config);
    }
  }

  // Pooled code (SVM coders) or negated summed class residuals (SRC).
  Eigen::VectorXd Encode(std::span<const Patch> patches) const {
    if (src) {
      Eigen::VectorXd total = Eigen::VectorXd::Zero(model.num_classes);
      for (const Patch& p : patches) total += src->Classify(p.features).residuals;
      return -total;
    }
    std::vector<Eigen::VectorXd> codes;
    codes.reserve(patches.size());
    for (const Patch& p : patches) codes.push_back(coder->Code(p));
    return PoolCodes(codes);
  }
};

Eigen::MatrixXd EncodeAligned(const TrainedPipeline& model, std::span<const FeatureImage> images,
                              std::uint64_t tag) {
  const CodeContext ctx(model);
  const int width = model.config.coder == CoderKind::kSrc ? model.num_classes
                                                          : model.dictionary.size();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(images.size()), width);
  const std::uint64_t base = DeriveSeed(model.config.seed, tag);
  ParallelFor(images.size(), [&](std::size_t i) {
    const std::vector<Patch> patches =
        SampleCandidates(images.subspan(i, 1), model.config.patches_per_image,
                         DeriveSeed(base, static_cast<std::uint64_t>(images[i].image_id)));
    out.row(static_cast<Eigen::Index>(i)) = ctx.Encode(patches).transpose();
  });
  return out;
}

std::vector<FeatureImage> MaybeAlign(const TrainedPipeline& model,
                                     std::span<const FeatureImage> images) {
  if (!model.viewpoints) return {images.begin(), images.end()};
  return AlignImages(*model.viewpoints, images);
}

int ArgMax(const Eigen::VectorXd& v) {
  int best = 0;
  for (int c = 1; c < v.size(); ++c) {
    if (v[c] > v[best]) best = c;
  }
  return best;
}

}  // namespace

std::string CoderName(CoderKind kind) {
  switch (kind) {
    case CoderKind::kSaco1:
      return "saco1";
    case CoderKind::kSaco2:
      return "saco2";
    case CoderKind::kIterative:
      return "ista";
    case CoderKind::kSrc:
      return "src";
  }
  return "saco2";
}

CoderKind ParseCoder(const std::string& name) {
  if (name == "saco1") return CoderKind::kSaco1;
  if (name == "saco2") return CoderKind::kSaco2;
  if (name == "ista") return CoderKind::kIterative;
  if (name == "src") return CoderKind::kSrc;
  Fail(ErrorCode::kInvalidConfig, "unknown coder '" + name + "' (saco1, saco2, ista, src)");
}

PipelineConfig PipelineConfig::FromConfig(const KeyValueConfig& config) {
  static const std::set<std::string> kKnown = {
      "align",          "viewpoints",     "theta_step",     "candidates_per_image",
      "dictionary_size", "selection",     "k_nn",           "spatial_sigma",
      "lambda_s",       "lambda_d",       "lambda_b",       "lambda_c",
      "patches_per_image", "coder",       "lambda1",        "lambda2",
      "spatial",        "weight_kernel",  "weight_epsilon", "weight_scale",
      "standardize",    "c_reg",          "svm_epochs",     "seed"};
  for (const auto& [key, value] : config.values()) {
    Require(kKnown.count(key) > 0, ErrorCode::kInvalidConfig, "unknown config key '" + key + "'");
  }
  PipelineConfig c;
  c.align = config.GetBool("align", c.align);
  c.viewpoints = config.GetInt("viewpoints", c.viewpoints);
  c.theta_step = config.GetDouble("theta_step", c.theta_step);
  c.candidates_per_image = config.GetInt("candidates_per_image", c.candidates_per_image);
  c.dictionary_size = config.GetInt("dictionary_size", c.dictionary_size);
  const std::string selection = config.GetString("selection", "lazy");
  Require(selection == "lazy" || selection == "random", ErrorCode::kInvalidConfig,
          "selection must be 'lazy' or 'random'");
  c.selection = selection == "lazy" ? DictionarySelection::kLazyGreedy : DictionarySelection::kRandom;
  c.k_nn = config.GetInt("k_nn", c.k_nn);
  c.spatial_sigma = config.GetDouble("spatial_sigma", c.spatial_sigma);
  c.weights.lambda_s = config.GetDouble("lambda_s", c.weights.lambda_s);
  c.weights.lambda_d = config.GetDouble("lambda_d", c.weights.lambda_d);
  c.weights.lambda_b = config.GetDouble("lambda_b", c.weights.lambda_b);
  c.weights.lambda_c = config.GetDouble("lambda_c", c.weights.lambda_c);
  c.patches_per_image = config.GetInt("patches_per_image", c.patches_per_image);
  c.coder = ParseCoder(config.GetString("coder", CoderName(c.coder)));
  c.lambda1 = config.GetDouble("lambda1", c.lambda1);
  c.lambda2 = config.GetDouble("lambda2", c.lambda2);
  c.spatial = config.GetBool("spatial", c.spatial);
  c.spatial_weights.kernel = coding::SpatialWeightConfig::ParseKernel(config.GetString(
      "weight_kernel", coding::SpatialWeightConfig::KernelName(c.spatial_weights.kernel)));
  c.spatial_weights.epsilon = config.GetDouble("weight_epsilon", c.spatial_weights.epsilon);
  c.spatial_weights.scale = config.GetDouble("weight_scale", c.spatial_weights.scale);
  c.standardize = config.GetBool("standardize", c.standardize);
  c.c_reg = config.GetDouble("c_reg", c.c_reg);
  c.svm_epochs = config.GetInt("svm_epochs", c.svm_epochs);
  c.seed = static_cast<std::uint64_t>(std::stoull(config.GetString("seed", std::to_string(c.seed))));
  return c;
}

KeyValueConfig PipelineConfig::ToConfig() const {
  KeyValueConfig c;
  c.Set("align", align ? "true" : "false");
  c.Set("viewpoints", std::to_string(viewpoints));
  c.Set("theta_step", FormatDouble(theta_step));
  c.Set("candidates_per_image", std::to_string(candidates_per_image));
  c.Set("dictionary_size", std::to_string(dictionary_size));
  c.Set("selection", selection == DictionarySelection::kLazyGreedy ? "lazy" : "random");
  c.Set("k_nn", std::to_string(k_nn));
  c.Set("spatial_sigma", FormatDouble(spatial_sigma));
  c.Set("lambda_s", FormatDouble(weights.lambda_s));
  c.Set("lambda_d", FormatDouble(weights.lambda_d));
  c.Set("lambda_b", FormatDouble(weights.lambda_b));
  c.Set("lambda_c", FormatDouble(weights.lambda_c));
  c.Set("patches_per_image", std::to_string(patches_per_image));
  c.Set("coder", CoderName(coder));
  c.Set("lambda1", FormatDouble(lambda1));
  c.Set("lambda2", FormatDouble(lambda2));
  c.Set("spatial", spatial ? "true" : "false");
  c.Set("weight_kernel", coding::SpatialWeightConfig::KernelName(spatial_weights.kernel));
  c.Set("weight_epsilon", FormatDouble(spatial_weights.epsilon));
  c.Set("weight_scale", FormatDouble(spatial_weights.scale));
  c.Set("standardize", standardize ? "true" : "false");
  c.Set("c_reg", FormatDouble(c_reg));
  c.Set("svm_epochs", std::to_string(svm_epochs));
  c.Set("seed", std::to_string(seed));
  return c;
}

PatchCoder::PatchCoder(const coding::Dictionary& dictionary, const PipelineConfig& config)
    : dictionary_(dictionary), config_(config) {
  switch (config.coder) {
    case CoderKind::kSaco1:
      coder_.emplace(dictionary.atoms, config.lambda1);
      break;
    case CoderKind::kSaco2:
      coder_.emplace(dictionary.atoms, config.lambda1, config.lambda2);
      break;
    case CoderKind::kIterative:
      solver_.emplace(dictionary.atoms);
      break;
    case CoderKind::kSrc:
      Fail(ErrorCode::kInvalidConfig, "the src coder classifies patches and has no patch code");
  }
}

Eigen::VectorXd PatchCoder::Weights(const Coord& coord) const {
  if (!config_.spatial) return Eigen::VectorXd::Ones(dictionary_.size());
  return coding::SpatialWeights(coord, dictionary_.coords, config_.spatial_weights);
}

Eigen::VectorXd PatchCoder::Code(const Patch& patch) const {
  const Eigen::VectorXd w = Weights(patch.coord);
  switch (config_.coder) {
    case CoderKind::kSaco1:
      return coder_->Saco1(patch.features, w);
    case CoderKind::kSaco2:
      return coder_->Saco2(patch.features, w);
    default:
      return solver_->Solve(patch.features, w, config_.lambda1, Eigen::VectorXd::Zero(w.size()), 0.0, {})
          .coeffs;
  }
}

std::vector<Patch> SampleTrainingCandidates(std::span<const FeatureImage> images,
                                            const PipelineConfig& config) {
  return DropUnusableCandidates(SampleCandidates(images, config.candidates_per_image,
                                            DeriveSeed(config.seed, kCandidateTag)));
}

Eigen::MatrixXd EncodeImages(const TrainedPipeline& model, std::span<const FeatureImage> images,
                             std::uint64_t tag) {
  const std::vector<FeatureImage> aligned = Stage("align", [&] { return MaybeAlign(model, images); });
  return Stage("code", [&] { return EncodeAligned(model, aligned, tag); });
}

TrainedPipeline TrainPipeline(std::span<const FeatureImage> train, const PipelineConfig& config) {
  Require(!train.empty(), ErrorCode::kInvalidInput, "no training images");
  TrainedPipeline model;
  model.config = config;
  model.num_classes = CountLabels(train);
  Require(model.num_classes >= 2, ErrorCode::kInvalidInput, "training needs at least two classes");
  Stage("config", [&] {
    config.weights.Validate();
    config.spatial_weights.Validate();
    Require(config.patches_per_image >= 1 && config.dictionary_size >= 1,
            ErrorCode::kInvalidConfig, "patches_per_image and dictionary_size must be >= 1");
    return 0;
  });

  std::vector<FeatureImage> images(train.begin(), train.end());
  if (config.align) {
    Stage("align", [&] {
      std::vector<Grid> pixels;
      std::vector<int> ids;
      for (const FeatureImage& im : train) {
        Require(im.pixels.has_value(), ErrorCode::kInvalidInput,
                "image " + std::to_string(im.image_id) + " has no pixels to align");
        pixels.push_back(*im.pixels);
        ids.push_back(im.image_id);
      }
      const auto grid = align::ThetaGrid(config.theta_step);
      model.viewpoints = align::ClusterViewpoints(pixels, ids, config.viewpoints, grid,
                                                  DeriveSeed(config.seed, kViewpointTag))
                             .model;
      images = AlignImages(*model.viewpoints, train);
      return 0;
    });
  }

  const std::vector<Patch> candidates =
      Stage("sample", [&] { return SampleTrainingCandidates(images, config); });
  const std::vector<int> selected = Stage("select", [&] { return SelectExemplars(candidates, config); });
  model.dictionary = Stage("dictionary", [&] {
    return coding::Dictionary::FromSelection(candidates, selected);
  });

  const Eigen::MatrixXd features =
      Stage("code", [&] { return EncodeAligned(model, images, kTrainEncodeTag); });
  std::vector<int> labels;
  for (const FeatureImage& im : images) labels.push_back(im.label);
  int correct = 0;
  if (config.coder == CoderKind::kSrc) {
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
      correct += ArgMax(features.row(i).transpose()) == labels[i];
    }
  } else {
    model.scaler = config.standardize ? FeatureScaler::Fit(features)
                                      : FeatureScaler::Identity(static_cast<int>(features.cols()));
    const Eigen::MatrixXd scaled = model.scaler.Apply(features);
    model.svm = Stage("svm", [&] {
      return TrainSvm(scaled, labels, {config.c_reg, config.svm_epochs, config.seed});
    });
    const auto predictions = PredictSvmBatch(model.svm, scaled);
    for (std::size_t i = 0; i < predictions.size(); ++i) correct += predictions[i].label == labels[i];
  }
  model.train_accuracy = static_cast<double>(correct) / static_cast<double>(labels.size());
  return model;
}

PredictionReport PredictPipeline(const TrainedPipeline& model, std::span<const FeatureImage> test) {
  Require(!test.empty(), ErrorCode::kInvalidInput, "no test images");
  const Eigen::MatrixXd features = EncodeImages(model, test, kTestEncodeTag);
  PredictionReport report;
  report.confusion = Eigen::MatrixXi::Zero(model.num_classes, model.num_classes);
  report.scores.resize(features.rows(), model.num_classes);
  int correct = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const Eigen::VectorXd f = features.row(static_cast<Eigen::Index>(i)).transpose();
    Eigen::VectorXd scores;
    if (model.config.coder == CoderKind::kSrc) {
      scores = f;
    } else {
      scores = Stage("predict", [&] { return PredictSvm(model.svm, model.scaler.Apply(f)).scores; });
    }
    const int pred = ArgMax(scores);
    const int truth = test[i].label;
    report.image_ids.push_back(test[i].image_id);
    report.true_labels.push_back(truth);
    report.predicted.push_back(pred);
    report.scores.row(static_cast<Eigen::Index>(i)) = scores.transpose();
    if (truth >= 0 && truth < model.num_classes) ++report.confusion(truth, pred);
    correct += pred == truth;
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
  return report;
}

PredictionReport RunPipeline(std::span<const FeatureImage> train,
                             std::span<const FeatureImage> test, const PipelineConfig& config) {
  return PredictPipeline(TrainPipeline(train, config), test);
}

std::string FormatPredictions(const PredictionReport& report) {
  std::ostringstream out;
  out << "image_id,true_label,pred_label";
  for (Eigen::Index c = 0; c < report.scores.cols(); ++c) out << ",score_" << c;
  out << '\n';
  for (std::size_t i = 0; i < report.image_ids.size(); ++i) {
    out << report.image_ids[i] << ',' << report.true_labels[i] << ',' << report.predicted[i];
    for (Eigen::Index c = 0; c < report.scores.cols(); ++c) {
      out << ',' << FormatDouble(report.scores(static_cast<Eigen::Index>(i), c));
    }
    out << '\n';
  }
  return out.str();
}

std::string FormatReport(const PredictionReport& report) {
  std::ostringstream out;
  out << "confusion (rows: true, columns: predicted)\n";
  for (Eigen::Index r = 0; r < report.confusion.rows(); ++r) {
    for (Eigen::Index c = 0; c < report.confusion.cols(); ++c) {
      out << (c ? " " : "") << report.confusion(r, c);
    }
    out << '\n';
  }
  out << "accuracy " << FormatDouble(report.accuracy) << '\n';
  return out.str();
}

void SavePipeline(const std::filesystem::path& dir, const TrainedPipeline& model) {
  std::filesystem::create_directories(dir);
  WriteTextFile(dir / "config.txt", model.config.ToConfig().Format());
  WriteTextFile(dir / "model.txt", "num_classes = " + std::to_string(model.num_classes) +
                                       "\ntrain_accuracy = " + FormatDouble(model.train_accuracy) +
                                       "\n");
  WriteTensor(dir / "dictionary.skt", MatrixToTensor(model.dictionary.atoms));
  std::ostringstream atoms;
  atoms << "patch_id,label,x,y\n";
  for (int k = 0; k < model.dictionary.size(); ++k) {
    atoms << model.dictionary.patch_ids[k] << ',' << model.dictionary.labels[k] << ','
          << FormatDouble(model.dictionary.coords[k].x) << ','
          << FormatDouble(model.dictionary.coords[k].y) << '\n';
  }
  WriteTextFile(dir / "dictionary.csv", atoms.str());
  if (model.config.coder != CoderKind::kSrc) {
    WriteTextFile(dir / "svm.txt", FormatSvmModel(model.svm));
    WriteTextFile(dir / "scaler.txt", FormatFeatureScaler(model.scaler));
  }
  if (model.viewpoints) {
    std::vector<FeatureMap> thumbs;
    for (const Grid& g : model.viewpoints->medoid_thumbnails) {
      FeatureMap m(g.height(), g.width(), 1);
      std::copy(g.data().begin(), g.data().end(), m.data().begin());
      thumbs.push_back(std::move(m));
    }
    WriteTensor(dir / "viewpoints.skt", FeatureMapsToTensor(thumbs));
    std::ostringstream ids;
    ids << "cluster,medoid_id\n";
    for (std::size_t c = 0; c < model.viewpoints->medoid_ids.size(); ++c) {
      ids << c << ',' << model.viewpoints->medoid_ids[c] << '\n';
    }
    WriteTextFile(dir / "viewpoints.csv", ids.str());
  }
}

TrainedPipeline LoadPipeline(const std::filesystem::path& dir) {
  TrainedPipeline model;
  model.config = PipelineConfig::FromConfig(KeyValueConfig::Read(dir / "config.txt"));
  const KeyValueConfig meta = KeyValueConfig::Read(dir / "model.txt");
  model.num_classes = meta.GetInt("num_classes", 0);
  model.train_accuracy = meta.GetDouble("train_accuracy", 0.0);
  model.dictionary.atoms = TensorToMatrix(ReadTensor(dir / "dictionary.skt"));
  const CsvTable atoms = CsvTable::Read(dir / "dictionary.csv");
  for (std::size_t r = 0; r < atoms.num_rows(); ++r) {
    model.dictionary.patch_ids.push_back(atoms.IntField(r, atoms.Column("patch_id")));
    model.dictionary.labels.push_back(atoms.IntField(r, atoms.Column("label")));
    model.dictionary.coords.push_back(
        {atoms.DoubleField(r, atoms.Column("x")), atoms.DoubleField(r, atoms.Column("y"))});
  }
  model.dictionary.Validate();
  if (model.config.coder != CoderKind::kSrc) {
    model.svm = ParseSvmModel(ReadTextFile(dir / "svm.txt"));
    model.scaler = ParseFeatureScaler(ReadTextFile(dir / "scaler.txt"));
  }
  if (std::filesystem::exists(dir / "viewpoints.skt")) {
    align::ViewpointModel vp;
    vp.theta_grid = align::ThetaGrid(model.config.theta_step);
    for (const FeatureMap& m : TensorToFeatureMaps(ReadTensor(dir / "viewpoints.skt"))) {
      Grid g(m.height(), m.width());
      std::copy(m.data().begin(), m.data().end(), g.data().begin());
      vp.medoid_thumbnails.push_back(std::move(g));
    }
    const CsvTable ids = CsvTable::Read(dir / "viewpoints.csv");
    for (std::size_t r = 0; r < ids.num_rows(); ++r) {
      vp.medoid_ids.push_back(ids.IntField(r, ids.Column("medoid_id")));
    }
    model.viewpoints = std::move(vp);
  }
  return model;
}

}  // namespace saco::classify
