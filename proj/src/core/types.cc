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

#include "saco/core/types.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "saco/core/error.h"

namespace saco {

double Distance(const Coord& a, const Coord& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void ValidatePatches(std::span<const Patch> patches, int num_classes) {
  for (const Patch& patch : patches) {
    const std::string where = "patch " + std::to_string(patch.id);
    Require(patch.features.size() > 0 && patch.features.allFinite(),
            ErrorCode::kInvalidInput, where + " has empty or non-finite features");
    Require(patch.coord.x >= 0.0 && patch.coord.x <= 1.0 && patch.coord.y >= 0.0 &&
                patch.coord.y <= 1.0,
            ErrorCode::kInvalidInput, where + " has coordinates outside [0,1]^2");
    Require(patch.label >= 0 && patch.label < num_classes, ErrorCode::kInvalidInput,
            where + " has label outside [0, " + std::to_string(num_classes) + ")");
  }
}

int CountClasses(std::span<const Patch> patches) {
  int max_label = -1;
  for (const Patch& patch : patches) max_label = std::max(max_label, patch.label);
  return max_label + 1;
}

Grid::Grid(int height, int width, double fill)
    : height_(height), width_(width) {
  Require(height >= 0 && width >= 0, ErrorCode::kInvalidInput,
          "grid dimensions must be non-negative");
  data_.assign(static_cast<std::size_t>(height) * width, fill);
}

FeatureMap::FeatureMap(int height, int width, int channels)
    : height_(height), width_(width), channels_(channels) {
  Require(height >= 0 && width >= 0 && channels >= 0, ErrorCode::kInvalidInput,
          "feature map dimensions must be non-negative");
  data_.assign(static_cast<std::size_t>(height) * width * channels, 0.0);
}

Eigen::VectorXd FeatureMap::CellVector(int row, int col) const {
  const auto values = cell(row, col);
  return Eigen::Map<const Eigen::VectorXd>(values.data(), channels_);
}

Coord FeatureMap::CellCoord(int row, int col) const {
  return {(col + 0.5) / width_, (row + 0.5) / height_};
}

}  // namespace saco
