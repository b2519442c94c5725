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

#include "saco/core/affinity.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "saco/core/error.h"
#include "saco/core/parallel.h"

namespace saco {

AffinityGraph AffinityGraph::FromEntries(int size, std::span<const Entry> entries,
                                         double self_similarity) {
  Require(size >= 0, ErrorCode::kInvalidInput, "graph size must be non-negative");
  Require(std::isfinite(self_similarity) && self_similarity >= 0.0,
          ErrorCode::kInvalidInput, "self similarity must be finite and non-negative");

  std::vector<Entry> both;
  both.reserve(entries.size() * 2);
  for (const Entry& e : entries) {
    Require(e.row >= 0 && e.row < size && e.col >= 0 && e.col < size,
            ErrorCode::kInvalidInput, "graph entry index out of range");
    Require(std::isfinite(e.value) && e.value >= 0.0, ErrorCode::kInvalidInput,
            "graph entries must be finite and non-negative");
    if (e.row == e.col || e.value == 0.0) continue;
    both.push_back(e);
    both.push_back({e.col, e.row, e.value});
  }
  std::sort(both.begin(), both.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  AffinityGraph graph;
  graph.self_similarity_ = self_similarity;
  graph.row_start_.assign(static_cast<std::size_t>(size) + 1, 0);
  graph.neighbors_.reserve(both.size());
  for (std::size_t k = 0; k < both.size();) {
    const Entry& first = both[k];
    double value = first.value;
    std::size_t next = k + 1;
    while (next < both.size() && both[next].row == first.row &&
           both[next].col == first.col) {
      value = std::max(value, both[next].value);
      ++next;
    }
    graph.neighbors_.push_back({first.col, value});
    ++graph.row_start_[first.row + 1];
    k = next;
  }
  for (int i = 0; i < size; ++i) graph.row_start_[i + 1] += graph.row_start_[i];
  return graph;
}

AffinityGraph AffinityGraph::FromDense(const Eigen::MatrixXd& dense,
                                       double self_similarity) {
  Require(dense.rows() == dense.cols(), ErrorCode::kInvalidInput,
          "dense affinity matrix must be square");
  std::vector<Entry> entries;
  for (int i = 0; i < dense.rows(); ++i) {
    for (int j = 0; j < dense.cols(); ++j) {
      if (i != j && dense(i, j) != 0.0) entries.push_back({i, j, dense(i, j)});
    }
  }
  return FromEntries(static_cast<int>(dense.rows()), entries, self_similarity);
}

double AffinityGraph::value(int i, int j) const {
  if (i == j) return 0.0;
  const auto row = neighbors(i);
  const auto it = std::lower_bound(row.begin(), row.end(), j,
                                   [](const Neighbor& n, int col) { return n.index < col; });
  return (it != row.end() && it->index == j) ? it->value : 0.0;
}

Eigen::MatrixXd AffinityGraph::ToDense() const {
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(size(), size());
  for (int i = 0; i < size(); ++i) {
    for (const Neighbor& n : neighbors(i)) dense(i, n.index) = n.value;
  }
  return dense;
}

double MedianPairwiseDistance(const Eigen::MatrixXd& points, std::uint64_t seed) {
  const Eigen::Index n = points.rows();
  Require(n >= 2, ErrorCode::kInvalidInput, "need at least 2 points for a bandwidth");
  std::vector<double> distances;
  const double total_pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  if (total_pairs <= kMedianSigmaPairs) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        distances.push_back((points.row(i) - points.row(j)).norm());
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    distances.reserve(kMedianSigmaPairs);
    while (distances.size() < static_cast<std::size_t>(kMedianSigmaPairs)) {
      const Eigen::Index i = pick(rng);
      const Eigen::Index j = pick(rng);
      if (i == j) continue;
      distances.push_back((points.row(i) - points.row(j)).norm());
    }
  }
  const std::size_t mid = distances.size() / 2;
  std::nth_element(distances.begin(), distances.begin() + mid, distances.end());
  double median = distances[mid];
  if (distances.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(distances.begin(), distances.begin() + mid));
  }
  return median;
}

AffinityGraph BuildKnnGaussianGraph(const Eigen::MatrixXd& points, int k_nn, double sigma) {
  const int n = static_cast<int>(points.rows());
  Require(n >= 2, ErrorCode::kInvalidInput, "affinity graph needs at least 2 points");
  Require(k_nn >= 1, ErrorCode::kInvalidConfig, "k_nn must be >= 1");
  Require(std::isfinite(sigma), ErrorCode::kInvalidConfig, "bandwidth must be finite");
  Require(sigma > 0.0, ErrorCode::kDegenerateInput,
          "kernel bandwidth is zero (all points identical?)");
  const int k = std::min(k_nn, n - 1);
  const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);

  // Row-major copy so each point is contiguous.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = points;
  std::vector<std::vector<AffinityGraph::Entry>> per_row(n);
  ParallelFor(static_cast<std::size_t>(n), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    std::vector<std::pair<double, int>> candidates;
    candidates.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      candidates.emplace_back((rows.row(i) - rows.row(j)).squaredNorm(), j);
    }
    std::nth_element(candidates.begin(), candidates.begin() + (k - 1), candidates.end());
    auto& out = per_row[i];
    out.reserve(k);
    for (int t = 0; t < k; ++t) {
      const auto [d2, j] = candidates[t];
      out.push_back({i, j, std::exp(-d2 * inv_two_sigma_sq)});
    }
  });

  std::vector<AffinityGraph::Entry> entries;
  entries.reserve(static_cast<std::size_t>(n) * k);
  for (auto& row : per_row) entries.insert(entries.end(), row.begin(), row.end());
  return AffinityGraph::FromEntries(n, entries, 1.0);
}

namespace {

Eigen::MatrixXd FeatureMatrix(std::span<const Patch> patches) {
  Require(patches.size() >= 2, ErrorCode::kInvalidInput,
          "affinity graph needs at least 2 patches");
  const Eigen::Index dim = patches.front().features.size();
  Eigen::MatrixXd points(static_cast<Eigen::Index>(patches.size()), dim);
  for (std::size_t i = 0; i < patches.size(); ++i) {
    Require(patches[i].features.size() == dim, ErrorCode::kInvalidInput,
            "patch " + std::to_string(patches[i].id) + " has feature dimension " +
                std::to_string(patches[i].features.size()) + ", expected " +
                std::to_string(dim));
    points.row(static_cast<Eigen::Index>(i)) = patches[i].features.transpose();
  }
  return points;
}

}  // namespace

AffinityGraph BuildFeatureAffinity(std::span<const Patch> patches, int k_nn,
                                   SigmaMode sigma_mode) {
  const Eigen::MatrixXd points = FeatureMatrix(patches);
  const double sigma = sigma_mode.kind == SigmaMode::Kind::kMedian
                           ? MedianPairwiseDistance(points)
                           : sigma_mode.value;
  if (sigma_mode.kind == SigmaMode::Kind::kFixed) {
    Require(sigma > 0.0, ErrorCode::kInvalidConfig, "fixed sigma must be positive");
  }
  return BuildKnnGaussianGraph(points, k_nn, sigma);
}

AffinityGraph BuildSpatialAffinity(std::span<const Patch> patches, int k_nn, double sigma) {
  Require(patches.size() >= 2, ErrorCode::kInvalidInput,
          "affinity graph needs at least 2 patches");
  Require(sigma > 0.0, ErrorCode::kInvalidConfig, "spatial sigma must be positive");
  Eigen::MatrixXd points(static_cast<Eigen::Index>(patches.size()), 2);
  for (std::size_t i = 0; i < patches.size(); ++i) {
    points(static_cast<Eigen::Index>(i), 0) = patches[i].coord.x;
    points(static_cast<Eigen::Index>(i), 1) = patches[i].coord.y;
  }
  return BuildKnnGaussianGraph(points, k_nn, sigma);
}

}  // namespace saco
