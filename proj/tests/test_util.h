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

#ifndef SACO_TESTS_TEST_UTIL_H_
#define SACO_TESTS_TEST_UTIL_H_

// Shared generators and brute-force oracles for the test suites. Nothing here
// calls into the incremental selection code it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "saco/core/affinity.h"
#include "saco/core/types.h"
#include "saco/submodular/objective.h"

namespace saco::testing {

inline std::vector<Patch> RandomPatches(int count, int dim, int classes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Patch> patches(count);
  for (int i = 0; i < count; ++i) {
    Patch& p = patches[i];
    p.id = i;
    p.label = static_cast<int>(rng() % classes);
    p.features = Eigen::VectorXd(dim);
    for (int d = 0; d < dim; ++d) p.features[d] = normal(rng) + 1.5 * p.label * (d == 0);
    p.coord = {unit(rng), unit(rng)};
    p.image_id = i / 10;
  }
  // Make sure every class occurs.
  for (int c = 0; c < std::min(classes, count); ++c) patches[c].label = c;
  return patches;
}

// Dense copy of a selection instance. Diagonals hold the self-similarity.
struct DenseInstance {
  Eigen::MatrixXd feature;
  Eigen::MatrixXd spatial;
  std::vector<int> labels;
  int classes = 0;
};

inline DenseInstance ToDense(const submodular::SelectionProblem& problem) {
  DenseInstance dense;
  dense.feature = problem.feature_graph().ToDense();
  dense.spatial = problem.spatial_graph().ToDense();
  dense.feature.diagonal().setConstant(problem.feature_graph().self_similarity());
  dense.spatial.diagonal().setConstant(problem.spatial_graph().self_similarity());
  dense.labels = problem.labels();
  dense.classes = problem.num_classes();
  return dense;
}

// Direct evaluation of the five terms: explicit max over A for every element,
// clusters by argmax with the lowest exemplar id winning ties.
inline submodular::TermValues OracleTerms(const DenseInstance& inst, std::vector<int> set) {
  submodular::TermValues t;
  if (set.empty()) return t;
  std::sort(set.begin(), set.end());
  const int m = static_cast<int>(inst.labels.size());
  std::vector<std::vector<int>> counts(set.size(), std::vector<int>(inst.classes, 0));
  for (int j = 0; j < m; ++j) {
    std::size_t owner = 0;
    double best_s = inst.feature(set[0], j);
    double best_l = inst.spatial(set[0], j);
    for (std::size_t k = 1; k < set.size(); ++k) {
      if (inst.feature(set[k], j) > best_s) {
        best_s = inst.feature(set[k], j);
        owner = k;
      }
      best_l = std::max(best_l, inst.spatial(set[k], j));
    }
    t.representative += best_s;
    t.spatial += best_l;
    ++counts[owner][inst.labels[j]];
  }
  double purity = 0.0;
  for (std::size_t k = 0; k < set.size(); ++k) {
    int size = 0;
    int top = 0;
    for (int c : counts[k]) {
      size += c;
      top = std::max(top, c);
    }
    purity += top;
    if (size > 0) {
      const double p = static_cast<double>(size) / m;
      t.compact -= p * std::log(p);
    }
  }
  const double n = static_cast<double>(set.size());
  t.discriminative = purity / m - n;
  t.compact -= n;
  std::vector<int> per_class(inst.classes, 0);
  for (int i : set) ++per_class[inst.labels[i]];
  for (int c : per_class) t.balance += std::log(c + 1.0);
  return t;
}

inline double OracleValue(const DenseInstance& inst, const std::vector<int>& set,
                          const submodular::ObjectiveWeights& w) {
  return OracleTerms(inst, set).Weighted(w);
}

// Builds a seeded selection problem over random patches with kNN graphs.
inline submodular::SelectionProblem RandomProblem(int count, int classes, int k_nn,
                                                  std::uint64_t seed, int dim = 3) {
  const auto patches = RandomPatches(count, dim, classes, seed);
  return submodular::SelectionProblem::FromPatches(
      patches, BuildFeatureAffinity(patches, k_nn), BuildSpatialAffinity(patches, k_nn, 0.25));
}

}  // namespace saco::testing

#endif  // SACO_TESTS_TEST_UTIL_H_
