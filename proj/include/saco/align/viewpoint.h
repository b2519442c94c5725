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

#ifndef SACO_ALIGN_VIEWPOINT_H_
#define SACO_ALIGN_VIEWPOINT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "saco/align/rotation.h"
#include "saco/core/types.h"

namespace saco::align {

inline constexpr double kDefaultSimilarityEpsilon = 1e-6;
inline constexpr int kDefaultViewpoints = 2;

// 40x40 thumbnails of one image at every grid angle, computed once so that
// distances between many pairs reuse them.
class RotatedThumbnails {
 public:
  RotatedThumbnails() = default;
  RotatedThumbnails(const Grid& image, std::span<const double> theta_grid);

  const Grid& upright() const { return upright_; }
  const Grid& at(std::size_t k) const { return rotated_[k]; }
  double theta(std::size_t k) const { return thetas_[k]; }
  std::size_t size() const { return rotated_.size(); }

 private:
  Grid upright_;
  std::vector<Grid> rotated_;
  std::vector<double> thetas_;
};

struct BestRotation {
  double distance;  // min over the grid of ||A - R_theta(B)||_2
  double theta;     // lowest grid angle attaining it
  std::size_t index;
};

BestRotation MinRotationDistance(const Grid& a, const Grid& b, std::span<const double> theta_grid);
BestRotation MinRotationDistance(const Grid& a_upright, const RotatedThumbnails& b);

// 1 / (eps + (d_AB + d_BA) / 2), d the rotation-minimized distance.
double PairwiseSimilarity(const Grid& a, const Grid& b, std::span<const double> theta_grid,
                          double epsilon = kDefaultSimilarityEpsilon);

// eps + (d_AB + d_BA) / 2 off the diagonal, 0 on it.
Eigen::MatrixXd DissimilarityMatrix(std::span<const Grid> images,
                                    std::span<const double> theta_grid,
                                    double epsilon = kDefaultSimilarityEpsilon);

struct KMedoidsResult {
  std::vector<int> medoids;     // indices into the input, one per cluster
  std::vector<int> assignment;  // cluster per input
  std::vector<double> cost_history;
  int iterations = 0;
  bool converged = false;
};

// Voronoi-iteration k-medoids on a dissimilarity matrix, seeded k-medoids++
// initialization. Ties go to the lowest cluster / member index.
KMedoidsResult KMedoids(const Eigen::MatrixXd& dissimilarity, int k, std::uint64_t seed,
                        int max_iter = 100);

struct ViewpointModel {
  std::vector<int> medoid_ids;
  std::vector<Grid> medoid_thumbnails;
  std::vector<double> theta_grid;
};

struct ViewpointClustering {
  ViewpointModel model;
  KMedoidsResult clusters;
};

ViewpointClustering ClusterViewpoints(std::span<const Grid> images, std::span<const int> image_ids,
                                      int k, std::span<const double> theta_grid,
                                      std::uint64_t seed, int max_iter = 100,
                                      double epsilon = kDefaultSimilarityEpsilon);

struct Alignment {
  Grid aligned;  // 40x40
  int cluster = 0;
  double theta = 0.0;
};

// Nearest medoid over all grid angles; the image rotated by the best angle.
Alignment AlignToMedoid(const Grid& image, const ViewpointModel& model);

// CSV with header `image_id,cluster,theta`.
std::string FormatAssignments(std::span<const int> image_ids, std::span<const Alignment> alignments);

}  // namespace saco::align

#endif  // SACO_ALIGN_VIEWPOINT_H_
