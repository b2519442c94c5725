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

#ifndef SACO_CORE_AFFINITY_H_
#define SACO_CORE_AFFINITY_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "saco/core/types.h"

namespace saco {

// Sparse symmetric non-negative similarity matrix with an implicit zero
// diagonal, stored as sorted adjacency rows.
//
// The facility-location terms need a value for "similarity of a patch to
// itself"; that is not stored in the matrix and is reported separately by
// self_similarity() (1.0 for graphs built with the Gaussian kernel, i.e. the
// kernel value at zero distance).
class AffinityGraph {
 public:
  struct Neighbor {
    int index;
    double value;
  };
  struct Entry {
    int row;
    int col;
    double value;
  };

  AffinityGraph() = default;

  // Builds a graph from (possibly one-sided) entries. Each unordered pair is
  // symmetrized by taking the max of the values given for (i,j) and (j,i).
  // Diagonal entries and zero values are dropped.
  static AffinityGraph FromEntries(int size, std::span<const Entry> entries,
                                   double self_similarity = 1.0);

  // Dense matrix view; off-diagonal zeros are treated as absent edges.
  static AffinityGraph FromDense(const Eigen::MatrixXd& dense,
                                 double self_similarity = 1.0);

  int size() const { return static_cast<int>(row_start_.empty() ? 0 : row_start_.size() - 1); }
  double self_similarity() const { return self_similarity_; }

  std::span<const Neighbor> neighbors(int i) const {
    return {neighbors_.data() + row_start_[i],
            static_cast<std::size_t>(row_start_[i + 1] - row_start_[i])};
  }

  // Stored value for i != j (0 when absent); 0 on the diagonal.
  double value(int i, int j) const;

  // Number of undirected edges.
  std::size_t num_edges() const { return neighbors_.size() / 2; }

  Eigen::MatrixXd ToDense() const;

 private:
  double self_similarity_ = 1.0;
  std::vector<std::int64_t> row_start_;
  std::vector<Neighbor> neighbors_;
};

struct SigmaMode {
  enum class Kind { kMedian, kFixed };
  Kind kind = Kind::kMedian;
  double value = 0.0;

  static SigmaMode Median() { return {Kind::kMedian, 0.0}; }
  static SigmaMode Fixed(double sigma) { return {Kind::kFixed, sigma}; }
};

// Pairs sampled for the median bandwidth heuristic.
inline constexpr int kMedianSigmaPairs = 1000;
inline constexpr int kDefaultKnn = 50;
inline constexpr double kDefaultSpatialSigma = 0.25;

// Median Euclidean distance over kMedianSigmaPairs seeded pairs of rows (all
// pairs when there are fewer).
double MedianPairwiseDistance(const Eigen::MatrixXd& points, std::uint64_t seed = 0);

// kNN Gaussian graph over the rows of `points`:
// exp(-|p_i - p_j|^2 / (2 sigma^2)) for j among the k_nn nearest rows of i
// (Euclidean, lowest index on ties), symmetrized by max.
AffinityGraph BuildKnnGaussianGraph(const Eigen::MatrixXd& points, int k_nn, double sigma);

// Feature-space graph S.
AffinityGraph BuildFeatureAffinity(std::span<const Patch> patches, int k_nn,
                                   SigmaMode sigma_mode = SigmaMode::Median());

// Coordinate-space graph L.
AffinityGraph BuildSpatialAffinity(std::span<const Patch> patches, int k_nn,
                                   double sigma = kDefaultSpatialSigma);

}  // namespace saco

#endif  // SACO_CORE_AFFINITY_H_
