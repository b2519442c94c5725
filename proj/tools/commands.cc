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

#include "commands.h"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "dataset.h"
#include "layout_plot.h"
#include "saco/classify/pipeline.h"
#include "saco/coding/dictionary.h"
#include "saco/core/affinity.h"
#include "saco/core/config.h"
#include "saco/core/csv.h"
#include "saco/core/error.h"
#include "saco/core/parallel.h"
#include "saco/core/tensor_io.h"
#include "saco/submodular/greedy.h"
#include "saco/synthetic/generators.h"

namespace saco::cli {
namespace {

namespace fs = std::filesystem;
using classify::PipelineConfig;

struct Common {
  std::string config;
  std::vector<std::string> sets;
  int threads = 0;
  std::optional<std::uint64_t> seed;
};

void AddCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "Flat `key = value` config file");
  cmd->add_option("--set", c.sets, "Config override key=value (repeatable)");
  cmd->add_option("--threads", c.threads, "Worker thread cap (0 = hardware concurrency)");
  cmd->add_option("--seed", c.seed, "Global seed (fallback: config, then SACO_SEED, then 0)");
}

// File, then --set overrides, then --seed; SACO_SEED only when nothing set
// the seed.
KeyValueConfig Resolve(const Common& c) {
  KeyValueConfig config;
  if (!c.config.empty()) config = KeyValueConfig::Read(c.config);
  for (const std::string& s : c.sets) config.Override(s);
  if (c.seed) {
    config.Set("seed", std::to_string(*c.seed));
  } else if (!config.Has("seed")) {
    const char* env = std::getenv("SACO_SEED");
    config.Set("seed", env != nullptr && *env != '\0' ? env : "0");
  }
  SetThreadCount(c.threads);
  return config;
}

std::uint64_t SeedOf(const KeyValueConfig& config) {
  const std::string text = config.GetString("seed", "0");
  try {
    std::size_t used = 0;
    const std::uint64_t seed = std::stoull(text, &used);
    if (used == text.size()) return seed;
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kInvalidConfig, "seed must be a non-negative integer, got '" + text + "'");
}

void CheckKeys(const KeyValueConfig& config, const std::set<std::string>& known,
               const std::string& what) {
  for (const auto& [key, value] : config.values()) {
    Require(known.count(key) > 0, ErrorCode::kInvalidConfig,
            "unknown config key '" + key + "' for " + what);
  }
}

std::string Header(const std::string& command, const KeyValueConfig& resolved) {
  return "# saco " + command + "\n" + resolved.Format("# ");
}

void Emit(std::ostream& out, const fs::path& path, const std::string& text) {
  WriteTextFile(path, text);
  out << text;
}

std::vector<Patch> ReadPatches(const fs::path& metadata, const fs::path& features) {
  return ParsePatches(CsvTable::Read(metadata), TensorToMatrix(ReadTensor(features)));
}

// Metadata only; features are left empty.
std::vector<Patch> ReadPatchLayout(const fs::path& metadata) {
  const CsvTable table = CsvTable::Read(metadata);
  std::vector<Patch> patches(table.num_rows());
  const std::size_t id = table.Column("id"), image = table.Column("image_id"),
                    label = table.Column("label"), x = table.Column("x"), y = table.Column("y");
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    patches[r].id = table.IntField(r, id);
    patches[r].image_id = table.IntField(r, image);
    patches[r].label = table.IntField(r, label);
    patches[r].coord = {table.DoubleField(r, x), table.DoubleField(r, y)};
  }
  return patches;
}

void WritePatches(const fs::path& dir, std::span<const Patch> patches) {
  fs::create_directories(dir);
  Eigen::MatrixXd features(static_cast<Eigen::Index>(patches.size()),
                           patches.empty() ? 0 : patches.front().features.size());
  for (std::size_t i = 0; i < patches.size(); ++i) {
    features.row(static_cast<Eigen::Index>(i)) = patches[i].features.transpose();
  }
  WriteTextFile(dir / "patches.csv", FormatPatchMetadata(patches));
  WriteTensor(dir / "features.skt", MatrixToTensor(features));
}

// Indices of `ids` within `patches`.
std::vector<int> IndicesOf(std::span<const Patch> patches, std::span<const int> ids) {
  std::map<int, int> index;
  for (std::size_t i = 0; i < patches.size(); ++i) index.emplace(patches[i].id, static_cast<int>(i));
  std::vector<int> out;
  for (int id : ids) {
    const auto it = index.find(id);
    Require(it != index.end(), ErrorCode::kInvalidInput,
            "selected patch id " + std::to_string(id) + " is not in the patch file");
    out.push_back(it->second);
  }
  return out;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  Common common;
  std::string kind;
  std::string out;
};

std::string TextureHistogram(int classes, int grid, bool& identical) {
  std::ostringstream text;
  text << "texture histogram per class (cells per texture id, -1 = background)\n";
  std::vector<std::map<int, int>> hist(classes);
  for (int c = 0; c < classes; ++c) {
    for (int t : synthetic::SpatialTextureLayout(c, grid)) ++hist[c][t];
    text << "class " << c << ":";
    for (const auto& [t, n] : hist[c]) text << ' ' << t << '=' << n;
    text << '\n';
  }
  identical = true;
  for (int c = 1; c < classes; ++c) identical &= hist[c] == hist[0];
  text << "marginals identical across classes: " << (identical ? "yes" : "no") << '\n';
  return text.str();
}

int RunGen(const GenArgs& args, std::ostream& out) {
  KeyValueConfig config = Resolve(args.common);
  const fs::path dir = args.out;
  fs::create_directories(dir);
  const std::uint64_t seed = SeedOf(config);
  std::string summary;
  if (args.kind == "blobs2d") {
    CheckKeys(config, {"classes", "per_class", "spread", "seed"}, "gen blobs2d");
    synthetic::Blobs2dOptions o;
    o.classes = config.GetInt("classes", o.classes);
    o.per_class = config.GetInt("per_class", o.per_class);
    o.spread = config.GetDouble("spread", o.spread);
    o.seed = seed;
    config.Set("classes", std::to_string(o.classes));
    config.Set("per_class", std::to_string(o.per_class));
    config.Set("spread", FormatDouble(o.spread));
    const std::vector<Patch> patches = synthetic::Blobs2d(o);
    WritePatches(dir, patches);
    summary = "wrote " + std::to_string(patches.size()) + " patches\n";
  } else if (args.kind == "spatial-texture") {
    CheckKeys(config,
              {"classes", "train_per_class", "test_per_class", "grid", "dim", "noise", "background",
               "seed"},
              "gen spatial-texture");
    synthetic::SpatialTextureOptions o;
    o.classes = config.GetInt("classes", o.classes);
    o.train_per_class = config.GetInt("train_per_class", o.train_per_class);
    o.test_per_class = config.GetInt("test_per_class", o.test_per_class);
    o.grid = config.GetInt("grid", o.grid);
    o.dim = config.GetInt("dim", o.dim);
    o.noise = config.GetDouble("noise", o.noise);
    o.background = config.GetDouble("background", o.background);
    o.seed = seed;
    config.Set("classes", std::to_string(o.classes));
    config.Set("train_per_class", std::to_string(o.train_per_class));
    config.Set("test_per_class", std::to_string(o.test_per_class));
    config.Set("grid", std::to_string(o.grid));
    config.Set("dim", std::to_string(o.dim));
    config.Set("noise", FormatDouble(o.noise));
    config.Set("background", FormatDouble(o.background));
    const synthetic::Dataset data = synthetic::SpatialTexture(o);
    WriteDataset(dir, data.train, data.test);
    bool identical = false;
    summary = "wrote " + std::to_string(data.train.size()) + " train and " +
              std::to_string(data.test.size()) + " test images\n" +
              TextureHistogram(o.classes, o.grid, identical);
    Require(identical, ErrorCode::kInvalidConfig,
            "spatial-texture self-check failed: texture marginals differ across classes (use an "
            "even grid)");
  } else if (args.kind == "viewpoints") {
    CheckKeys(config, {"per_view", "size", "block", "noise", "test_every", "seed"},
              "gen viewpoints");
    synthetic::ViewpointsOptions o;
    o.per_view = config.GetInt("per_view", o.per_view);
    o.size = config.GetInt("size", o.size);
    o.block = config.GetInt("block", o.block);
    o.noise = config.GetDouble("noise", o.noise);
    o.seed = seed;
    const int test_every = config.GetInt("test_every", 2);
    Require(test_every >= 0, ErrorCode::kInvalidConfig, "test_every must be >= 0");
    config.Set("per_view", std::to_string(o.per_view));
    config.Set("size", std::to_string(o.size));
    config.Set("block", std::to_string(o.block));
    config.Set("noise", FormatDouble(o.noise));
    config.Set("test_every", std::to_string(test_every));
    const synthetic::ViewpointsData data = synthetic::Viewpoints(o);
    std::vector<FeatureImage> train, test;
    std::ostringstream rotations;
    rotations << "image_id,rotation\n";
    for (std::size_t i = 0; i < data.images.size(); ++i) {
      const bool is_test = test_every > 0 && i % test_every == static_cast<std::size_t>(test_every - 1);
      (is_test ? test : train).push_back(data.images[i]);
      rotations << data.images[i].image_id << ',' << FormatDouble(data.rotation[i]) << '\n';
    }
    WriteDataset(dir, train, test);
    WriteTextFile(dir / "rotations.csv", rotations.str());
    summary = "wrote " + std::to_string(train.size()) + " train and " +
              std::to_string(test.size()) + " test images\n";
  } else {
    Fail(ErrorCode::kInvalidConfig,
         "unknown generator '" + args.kind + "' (blobs2d, spatial-texture, viewpoints)");
  }
  Emit(out, dir / "report.txt", Header("gen " + args.kind, config) + summary);
  return 0;
}

// ---------------------------------------------------------------- select

struct SelectArgs {
  Common common;
  std::string data, patches, features, candidates_out, out;
  bool naive = false;
};

PipelineConfig ResolvePipeline(const Common& common, KeyValueConfig& echoed) {
  const KeyValueConfig config = Resolve(common);
  PipelineConfig pipeline = PipelineConfig::FromConfig(config);
  pipeline.seed = SeedOf(config);
  echoed = pipeline.ToConfig();
  return pipeline;
}

std::vector<Patch> LoadCandidates(const std::string& data, const std::string& patches,
                                  const std::string& features, const PipelineConfig& config) {
  if (!data.empty()) {
    Require(patches.empty() && features.empty(), ErrorCode::kInvalidInput,
            "give either --data or --patches/--features, not both");
    return classify::SampleTrainingCandidates(ReadDataset(data).train, config);
  }
  Require(!patches.empty() && !features.empty(), ErrorCode::kInvalidInput,
          "candidates need --data, or both --patches and --features");
  return ReadPatches(patches, features);
}

int RunSelect(const SelectArgs& args, std::ostream& out) {
  KeyValueConfig echoed;
  const PipelineConfig config = ResolvePipeline(args.common, echoed);
  const std::vector<Patch> candidates =
      LoadCandidates(args.data, args.patches, args.features, config);
  if (!args.candidates_out.empty()) WritePatches(args.candidates_out, candidates);
  const auto problem = submodular::SelectionProblem::FromPatches(
      candidates, BuildFeatureAffinity(candidates, config.k_nn),
      BuildSpatialAffinity(candidates, config.k_nn, config.spatial_sigma));
  submodular::SelectionResult result =
      args.naive ? submodular::NaiveGreedy(problem, config.weights, config.dictionary_size)
                 : submodular::LazyGreedy(problem, config.weights, config.dictionary_size);
  for (int& s : result.selected) s = candidates[s].id;
  const std::string header = Header(args.naive ? "select (naive)" : "select", echoed);
  WriteTextFile(args.out, header + submodular::FormatSelection(result));
  out << header << "selected " << result.selected.size() << " of " << candidates.size()
      << " candidates\nobjective " << FormatDouble(result.value) << "\ngain evaluations "
      << result.evaluations << "\nstopped on negative gain: "
      << (result.stopped_on_negative_gain ? "yes" : "no") << '\n';
  return 0;
}

// ---------------------------------------------------------------- code

struct CodeArgs {
  Common common;
  std::string patches, features, selection, query_patches, query_features, out;
};

int RunCode(const CodeArgs& args, std::ostream& out) {
  KeyValueConfig echoed;
  const PipelineConfig config = ResolvePipeline(args.common, echoed);
  const std::vector<Patch> pool = ReadPatches(args.patches, args.features);
  const submodular::SelectionResult selection =
      submodular::ParseSelection(ReadTextFile(args.selection), args.selection);
  const coding::Dictionary dictionary =
      coding::Dictionary::FromSelection(pool, IndicesOf(pool, selection.selected));
  Require(args.query_patches.empty() == args.query_features.empty(), ErrorCode::kInvalidInput,
          "--query-patches and --query-features go together");
  const std::vector<Patch> queries =
      args.query_patches.empty() ? pool : ReadPatches(args.query_patches, args.query_features);
  const classify::PatchCoder coder(dictionary, config);

  Eigen::MatrixXd codes(static_cast<Eigen::Index>(queries.size()), dictionary.size());
  ParallelFor(queries.size(), [&](std::size_t i) {
    codes.row(static_cast<Eigen::Index>(i)) = coder.Code(queries[i]).transpose();
  });
  double nonzeros = 0.0, residual = 0.0;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const Eigen::VectorXd a = codes.row(static_cast<Eigen::Index>(i)).transpose();
    nonzeros += static_cast<double>((a.array() != 0.0).count());
    const double norm = queries[i].features.norm();
    if (norm > 0.0) residual += (queries[i].features - dictionary.atoms * a).norm() / norm;
  }
  const double n = static_cast<double>(std::max<std::size_t>(queries.size(), 1));
  WriteTensor(args.out, MatrixToTensor(codes));
  out << Header("code", echoed) << "coded " << queries.size() << " patches with "
      << dictionary.size() << " atoms\nmean nonzeros " << FormatDouble(nonzeros / n)
      << "\nmean relative residual " << FormatDouble(residual / n) << '\n';
  return 0;
}

// ---------------------------------------------------------------- train / predict / pipeline

struct ModelArgs {
  Common common;
  std::string data, model, out;
};

std::string TrainSummary(const classify::TrainedPipeline& model, std::size_t images) {
  std::ostringstream s;
  s << "train images " << images << "\ndictionary atoms " << model.dictionary.size()
    << "\ntrain accuracy " << FormatDouble(model.train_accuracy) << '\n';
  return s.str();
}

int RunTrain(const ModelArgs& args, std::ostream& out) {
  KeyValueConfig echoed;
  const PipelineConfig config = ResolvePipeline(args.common, echoed);
  const DatasetFiles data = ReadDataset(args.data);
  const classify::TrainedPipeline model = classify::TrainPipeline(data.train, config);
  classify::SavePipeline(args.model, model);
  Emit(out, fs::path(args.model) / "report.txt",
       Header("train", echoed) + TrainSummary(model, data.train.size()));
  return 0;
}

void WritePredictions(const fs::path& dir, const std::string& header,
                      const classify::PredictionReport& report, const std::string& extra,
                      std::ostream& out) {
  fs::create_directories(dir);
  WriteTextFile(dir / "predictions.csv", header + classify::FormatPredictions(report));
  Emit(out, dir / "report.txt", header + extra + classify::FormatReport(report));
}

int RunPredict(const ModelArgs& args, std::ostream& out) {
  SetThreadCount(args.common.threads);
  const classify::TrainedPipeline model = classify::LoadPipeline(args.model);
  const DatasetFiles data = ReadDataset(args.data);
  const classify::PredictionReport report = classify::PredictPipeline(model, data.test);
  WritePredictions(args.out, Header("predict", model.config.ToConfig()), report, "", out);
  return 0;
}

int RunPipelineCommand(const ModelArgs& args, std::ostream& out) {
  KeyValueConfig echoed;
  const PipelineConfig config = ResolvePipeline(args.common, echoed);
  const DatasetFiles data = ReadDataset(args.data);
  const classify::TrainedPipeline model = classify::TrainPipeline(data.train, config);
  classify::SavePipeline(fs::path(args.out) / "model", model);
  const classify::PredictionReport report = classify::PredictPipeline(model, data.test);
  WritePredictions(args.out, Header("pipeline", echoed), report,
                   TrainSummary(model, data.train.size()), out);
  return 0;
}

// ---------------------------------------------------------------- bench-greedy

struct BenchArgs {
  Common common;
  int m = 300;
  int k = 20;
  int dim = 16;
  int classes = 4;
  bool lazy_only = false;
};

int RunBench(const BenchArgs& args, std::ostream& out) {
  KeyValueConfig echoed;
  const PipelineConfig config = ResolvePipeline(args.common, echoed);
  echoed.Set("bench.m", std::to_string(args.m));
  echoed.Set("bench.k", std::to_string(args.k));
  echoed.Set("bench.dim", std::to_string(args.dim));
  echoed.Set("bench.classes", std::to_string(args.classes));
  const std::vector<Patch> patches = synthetic::RandomCandidates(
      {.count = args.m, .dim = args.dim, .classes = args.classes, .seed = config.seed});
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const auto problem = submodular::SelectionProblem::FromPatches(
      patches, BuildFeatureAffinity(patches, config.k_nn),
      BuildSpatialAffinity(patches, config.k_nn, config.spatial_sigma));
  const double graph_s = std::chrono::duration<double>(Clock::now() - t0).count();

  auto timed = [&](auto&& run) {
    const auto start = Clock::now();
    submodular::SelectionResult r = run();
    return std::pair{std::move(r), std::chrono::duration<double>(Clock::now() - start).count()};
  };
  const auto [lazy, lazy_s] =
      timed([&] { return submodular::LazyGreedy(problem, config.weights, args.k); });

  out << Header("bench-greedy", echoed);
  char line[160];
  std::snprintf(line, sizeof(line), "graphs built in %.3f s\n%-6s %12s %14s %16s %9s\n", graph_s,
                "algo", "seconds", "evaluations", "value", "selected");
  out << line;
  auto row = [&](const char* name, const submodular::SelectionResult& r, double s) {
    std::snprintf(line, sizeof(line), "%-6s %12.4f %14lld %16.6f %9zu\n", name, s,
                  static_cast<long long>(r.evaluations), r.value, r.selected.size());
    out << line;
  };
  row("lazy", lazy, lazy_s);
  if (args.lazy_only) return 0;
  const auto [naive, naive_s] =
      timed([&] { return submodular::NaiveGreedy(problem, config.weights, args.k); });
  row("naive", naive, naive_s);
  const bool same = lazy.selected == naive.selected;
  std::snprintf(line, sizeof(line), "evaluation ratio lazy/naive %.4f\nselections identical: %s\n",
                static_cast<double>(lazy.evaluations) / static_cast<double>(naive.evaluations),
                same ? "yes" : "no");
  out << line;
  Require(same, ErrorCode::kInvalidInput, "lazy and naive greedy selected different exemplars");
  return 0;
}

// ---------------------------------------------------------------- plot-layout

struct PlotArgs {
  std::string patches, selection, out;
};

int RunPlot(const PlotArgs& args, std::ostream& out) {
  const std::vector<Patch> patches = ReadPatchLayout(args.patches);
  std::vector<int> selected;
  if (!args.selection.empty()) {
    selected = submodular::ParseSelection(ReadTextFile(args.selection), args.selection).selected;
    IndicesOf(patches, selected);  // every selected id must be plotted
  }
  WriteTextFile(args.out, LayoutSvg(patches, selected));
  out << "wrote " << args.out << " (" << patches.size() << " patches, " << selected.size()
      << " exemplars)\n";
  return 0;
}

}  // namespace

int RunCli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatially-aware exemplar selection and shrink coding"};
  app.name("saco");
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic dataset");
  gen_cmd->add_option("kind", gen.kind, "blobs2d | spatial-texture | viewpoints")->required();
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();
  AddCommon(gen_cmd, gen.common);

  SelectArgs select;
  auto* select_cmd = app.add_subcommand("select", "Greedy exemplar selection");
  select_cmd->add_option("--data", select.data, "Dataset directory (samples training candidates)");
  select_cmd->add_option("--patches", select.patches, "Candidate metadata CSV");
  select_cmd->add_option("--features", select.features, "Candidate feature tensor (N x p)");
  select_cmd->add_option("--candidates-out", select.candidates_out,
                         "Directory to write the sampled candidates to");
  select_cmd->add_option("--out", select.out, "Selection CSV")->required();
  select_cmd->add_flag("--naive", select.naive, "Use naive instead of lazy greedy");
  AddCommon(select_cmd, select.common);

  CodeArgs code;
  auto* code_cmd = app.add_subcommand("code", "Code patches over selected exemplars");
  code_cmd->add_option("--patches", code.patches, "Candidate metadata CSV")->required();
  code_cmd->add_option("--features", code.features, "Candidate feature tensor")->required();
  code_cmd->add_option("--selection", code.selection, "Selection CSV")->required();
  code_cmd->add_option("--query-patches", code.query_patches, "Patches to code (default: all)");
  code_cmd->add_option("--query-features", code.query_features, "Features of the query patches");
  code_cmd->add_option("--out", code.out, "Code tensor (N x K)")->required();
  AddCommon(code_cmd, code.common);

  ModelArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a pipeline on the train split");
  train_cmd->add_option("--data", train.data, "Dataset directory")->required();
  train_cmd->add_option("--model", train.model, "Model directory to write")->required();
  AddCommon(train_cmd, train.common);

  ModelArgs predict;
  auto* predict_cmd = app.add_subcommand("predict", "Classify the test split with a saved model");
  predict_cmd->add_option("--data", predict.data, "Dataset directory")->required();
  predict_cmd->add_option("--model", predict.model, "Model directory")->required();
  predict_cmd->add_option("--out", predict.out, "Output directory")->required();
  predict_cmd->add_option("--threads", predict.common.threads, "Worker thread cap");

  ModelArgs pipeline;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "Train on the train split, test on test");
  pipeline_cmd->add_option("--data", pipeline.data, "Dataset directory")->required();
  pipeline_cmd->add_option("--out", pipeline.out, "Output directory")->required();
  AddCommon(pipeline_cmd, pipeline.common);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench-greedy", "Compare naive and lazy greedy");
  bench_cmd->add_option("--m", bench.m, "Candidate count");
  bench_cmd->add_option("--k", bench.k, "Exemplars to select");
  bench_cmd->add_option("--dim", bench.dim, "Feature dimension");
  bench_cmd->add_option("--classes", bench.classes, "Class count");
  bench_cmd->add_flag("--lazy-only", bench.lazy_only, "Skip the naive run");
  AddCommon(bench_cmd, bench.common);

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot-layout", "SVG scatter of patches and exemplars");
  plot_cmd->add_option("--patches", plot.patches, "Patch metadata CSV")->required();
  plot_cmd->add_option("--selection", plot.selection, "Selection CSV (optional)");
  plot_cmd->add_option("--out", plot.out, "SVG file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen_cmd) return RunGen(gen, out);
    if (*select_cmd) return RunSelect(select, out);
    if (*code_cmd) return RunCode(code, out);
    if (*train_cmd) return RunTrain(train, out);
    if (*predict_cmd) return RunPredict(predict, out);
    if (*pipeline_cmd) return RunPipelineCommand(pipeline, out);
    if (*bench_cmd) return RunBench(bench, out);
    if (*plot_cmd) return RunPlot(plot, out);
  } catch (const std::exception& e) {
    err << "saco: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace saco::cli
