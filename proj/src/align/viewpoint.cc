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

#include "saco/align/viewpoint.h"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "saco/core/csv.h"
#include "saco/core/error.h"
#include "saco/core/parallel.h"

namespace saco::align {
namespace {

double GridDistance(const Grid& a, const Grid& b) {
  double s = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = da[i] - db[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::vector<int> Assign(const Eigen::MatrixXd& d, const std::vector<int>& medoids, double* cost) {
  const int n = static_cast<int>(d.rows());
  std::vector<int> assignment(n);
  *cost = 0.0;
  for (int i = 0; i < n; ++i) {
    int best = 0;
    for (std::size_t c = 1; c < medoids.size(); ++c) {
      if (d(i, medoids[c]) < d(i, medoids[best])) best = static_cast<int>(c);
    }
    assignment[i] = best;
    *cost += d(i, medoids[best]);
  }
  return assignment;
}

std::vector<int> PlusPlusInit(const Eigen::MatrixXd& d, int k, std::uint64_t seed) {
  const int n = static_cast<int>(d.rows());
  std::mt19937_64 rng(seed);
  std::vector<int> medoids = {std::uniform_int_distribution<int>(0, n - 1)(rng)};
  std::vector<char> chosen(n, 0);
  chosen[medoids[0]] = 1;
  std::vector<double> nearest(n);
  for (int i = 0; i < n; ++i) nearest[i] = d(i, medoids[0]);
  while (static_cast<int>(medoids.size()) < k) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += chosen[i] ? 0.0 : nearest[i] * nearest[i];
    int pick = -1;
    if (total > 0.0) {
      const double r = std::uniform_real_distribution<double>(0.0, total)(rng);
      double cumulative = 0.0;
      for (int i = 0; i < n; ++i) {
        if (chosen[i]) continue;
        cumulative += nearest[i] * nearest[i];
        pick = i;
        if (cumulative > r) break;
      }
    } else {
      for (int i = 0; i < n && pick < 0; ++i) {
        if (!chosen[i]) pick = i;
      }
    }
    medoids.push_back(pick);
    chosen[pick] = 1;
    for (int i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], d(i, pick));
  }
  return medoids;
}

}  // namespace

RotatedThumbnails::RotatedThumbnails(const Grid& image, std::span<const double> theta_grid)
    : upright_(RotateResize(image, 0.0)), thetas_(theta_grid.begin(), theta_grid.end()) {
  rotated_.reserve(theta_grid.size());
  for (double theta : theta_grid) rotated_.push_back(RotateResize(image, theta));
}

BestRotation MinRotationDistance(const Grid& a_upright, const RotatedThumbnails& b) {
  Require(b.size() >= 1, ErrorCode::kInvalidConfig, "theta grid is empty");
  BestRotation best{std::numeric_limits<double>::infinity(), 0.0, 0};
  for (std::size_t k = 0; k < b.size(); ++k) {
    const double d = GridDistance(a_upright, b.at(k));
    if (d < best.distance) best = {d, b.theta(k), k};
  }
  return best;
}

BestRotation MinRotationDistance(const Grid& a, const Grid& b, std::span<const double> theta_grid) {
  const RotatedThumbnails rotated(b, theta_grid);
  return MinRotationDistance(RotateResize(a, 0.0), rotated);
}

double PairwiseSimilarity(const Grid& a, const Grid& b, std::span<const double> theta_grid,
                          double epsilon) {
  Require(epsilon > 0.0, ErrorCode::kInvalidConfig, "similarity epsilon must be positive");
  const double ab = MinRotationDistance(a, b, theta_grid).distance;
  const double ba = MinRotationDistance(b, a, theta_grid).distance;
  return 1.0 / (epsilon + 0.5 * (ab + ba));
}

Eigen::MatrixXd DissimilarityMatrix(std::span<const Grid> images,
                                    std::span<const double> theta_grid, double epsilon) {
  Require(epsilon > 0.0, ErrorCode::kInvalidConfig, "similarity epsilon must be positive");
  Require(!theta_grid.empty(), ErrorCode::kInvalidConfig, "theta grid is empty");
  const int n = static_cast<int>(images.size());
  std::vector<RotatedThumbnails> thumbs(n);
  ParallelFor(static_cast<std::size_t>(n), [&](std::size_t i) {
    thumbs[i] = RotatedThumbnails(images[i], theta_grid);
  });
  Eigen::MatrixXd directed = Eigen::MatrixXd::Zero(n, n);
  ParallelFor(static_cast<std::size_t>(n), [&](std::size_t i) {
    for (int j = 0; j < n; ++j) {
      if (static_cast<int>(i) != j) {
        directed(i, j) = MinRotationDistance(thumbs[i].upright(), thumbs[j]).distance;
      }
    }
  });
  Eigen::MatrixXd d = (0.5 * (directed + directed.transpose())).array() + epsilon;
  d.diagonal().setZero();
  return d;
}

KMedoidsResult KMedoids(const Eigen::MatrixXd& dissimilarity, int k, std::uint64_t seed,
                        int max_iter) {
  const int n = static_cast<int>(dissimilarity.rows());
  Require(dissimilarity.rows() == dissimilarity.cols(), ErrorCode::kInvalidInput,
          "dissimilarity matrix must be square");
  Require(k >= 1 && k <= n, ErrorCode::kInvalidInput,
          "k-medoids needs 1 <= k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(n) +
              ")");
  Require(max_iter >= 1, ErrorCode::kInvalidConfig, "max_iter must be >= 1");
  KMedoidsResult result;
  result.medoids = PlusPlusInit(dissimilarity, k, seed);
  double cost = 0.0;
  result.assignment = Assign(dissimilarity, result.medoids, &cost);
  result.cost_history.push_back(cost);
  for (int it = 0; it < max_iter; ++it) {
    std::vector<int> next = result.medoids;
    for (int c = 0; c < k; ++c) {
      auto cluster_sum = [&](int cand) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
          if (result.assignment[j] == c) sum += dissimilarity(j, cand);
        }
        return sum;
      };
      // The current medoid stays unless a member is strictly better.
      double best_sum = cluster_sum(result.medoids[c]);
      for (int cand = 0; cand < n; ++cand) {
        if (result.assignment[cand] != c) continue;
        const double sum = cluster_sum(cand);
        if (sum < best_sum) {
          best_sum = sum;
          next[c] = cand;
        }
      }
    }
    result.iterations = it + 1;
    if (next == result.medoids) {
      result.converged = true;
      break;
    }
    result.medoids = next;
    result.assignment = Assign(dissimilarity, result.medoids, &cost);
    result.cost_history.push_back(cost);
  }
  return result;
}

ViewpointClustering ClusterViewpoints(std::span<const Grid> images, std::span<const int> image_ids,
                                      int k, std::span<const double> theta_grid,
                                      std::uint64_t seed, int max_iter, double epsilon) {
  Require(images.size() == image_ids.size(), ErrorCode::kInvalidInput,
          "image and id lists differ in length");
  Require(k >= 1 && static_cast<std::size_t>(k) <= images.size(), ErrorCode::kInvalidInput,
          "k-medoids needs 1 <= k <= number of images");
  ViewpointClustering out;
  out.clusters = KMedoids(DissimilarityMatrix(images, theta_grid, epsilon), k, seed, max_iter);
  out.model.theta_grid.assign(theta_grid.begin(), theta_grid.end());
  for (int m : out.clusters.medoids) {
    out.model.medoid_ids.push_back(image_ids[m]);
    out.model.medoid_thumbnails.push_back(RotateResize(images[m], 0.0));
  }
  return out;
}

Alignment AlignToMedoid(const Grid& image, const ViewpointModel& model) {
  Require(!model.medoid_thumbnails.empty(), ErrorCode::kInvalidInput, "viewpoint model is empty");
  const RotatedThumbnails rotated(image, model.theta_grid);
  Alignment out;
  BestRotation best{std::numeric_limits<double>::infinity(), 0.0, 0};
  for (std::size_t c = 0; c < model.medoid_thumbnails.size(); ++c) {
    const BestRotation r = MinRotationDistance(model.medoid_thumbnails[c], rotated);
    if (r.distance < best.distance) {
      best = r;
      out.cluster = static_cast<int>(c);
    }
  }
  out.theta = best.theta;
  out.aligned = rotated.at(best.index);
  return out;
}

std::string FormatAssignments(std::span<const int> image_ids,
                              std::span<const Alignment> alignments) {
  std::ostringstream out;
  out << "image_id,cluster,theta\n";
  for (std::size_t i = 0; i < alignments.size(); ++i) {
    out << image_ids[i] << ',' << alignments[i].cluster << ',' << FormatDouble(alignments[i].theta)
        << '\n';
  }
  return out.str();
}

}  // namespace saco::align
