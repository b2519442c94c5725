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

#ifndef SACO_CORE_TYPES_H_
#define SACO_CORE_TYPES_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace saco {

// Position normalized to the bounding box of the source grain, [0,1]^2.
struct Coord {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Coord&, const Coord&) = default;
};

double Distance(const Coord& a, const Coord& b);

// A candidate patch: the ground-set element for exemplar selection.
struct Patch {
  int id = 0;
  Eigen::VectorXd features;
  Coord coord;
  int label = 0;
  int image_id = 0;
};

// Throws kInvalidInput when a patch violates its invariants (non-finite
// features, coordinates outside [0,1]^2, label outside [0, num_classes)).
void ValidatePatches(std::span<const Patch> patches, int num_classes);

int CountClasses(std::span<const Patch> patches);

// Single-channel image, row-major.
class Grid {
 public:
  Grid() = default;
  Grid(int height, int width, double fill = 0.0);

  int height() const { return height_; }
  int width() const { return width_; }
  bool empty() const { return height_ == 0 || width_ == 0; }

  double& operator()(int row, int col) { return data_[Index(row, col)]; }
  double operator()(int row, int col) const { return data_[Index(row, col)]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t Index(int row, int col) const {
    return static_cast<std::size_t>(row) * width_ + col;
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// Dense H x W x channels feature grid, channel-contiguous per cell.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(int height, int width, int channels);

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }

  std::span<double> cell(int row, int col) {
    return {data_.data() + Offset(row, col), static_cast<std::size_t>(channels_)};
  }
  std::span<const double> cell(int row, int col) const {
    return {data_.data() + Offset(row, col), static_cast<std::size_t>(channels_)};
  }
  Eigen::VectorXd CellVector(int row, int col) const;

  // Center of cell (row, col) in normalized coordinates.
  Coord CellCoord(int row, int col) const;

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

 private:
  std::size_t Offset(int row, int col) const {
    return (static_cast<std::size_t>(row) * width_ + col) * channels_;
  }

  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

// One labeled training or test image: its extracted feature map plus the
// optional grayscale pixels used for viewpoint alignment.
struct FeatureImage {
  int image_id = 0;
  int label = 0;
  FeatureMap features;
  std::optional<Grid> pixels;
  std::optional<int> viewpoint;
};

}  // namespace saco

#endif  // SACO_CORE_TYPES_H_
