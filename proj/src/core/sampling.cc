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

#include "saco/core/sampling.h"

#include <random>

#include "saco/core/error.h"

namespace saco {

std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t tag) {
  // splitmix64 finalizer over the combined words.
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<Patch> SampleCandidates(std::span<const FeatureImage> images, int per_image,
                                    std::uint64_t seed, int first_id) {
  Require(!images.empty(), ErrorCode::kInvalidInput, "no images to sample from");
  Require(per_image >= 1, ErrorCode::kInvalidConfig, "per_image must be >= 1");

  std::vector<Patch> patches;
  patches.reserve(images.size() * static_cast<std::size_t>(per_image));
  int next_id = first_id;
  for (std::size_t k = 0; k < images.size(); ++k) {
    const FeatureImage& image = images[k];
    const FeatureMap& map = image.features;
    Require(map.height() >= 1 && map.width() >= 1 && map.channels() >= 1,
            ErrorCode::kInvalidInput,
            "image " + std::to_string(image.image_id) + " has an empty feature map");
    std::mt19937_64 rng(DeriveSeed(seed, k));
    std::uniform_int_distribution<int> row_dist(0, map.height() - 1);
    std::uniform_int_distribution<int> col_dist(0, map.width() - 1);
    for (int s = 0; s < per_image; ++s) {
      const int row = row_dist(rng);
      const int col = col_dist(rng);
      Patch patch;
      patch.id = next_id++;
      patch.features = map.CellVector(row, col);
      patch.coord = map.CellCoord(row, col);
      patch.label = image.label;
      patch.image_id = image.image_id;
      patches.push_back(std::move(patch));
    }
  }
  return patches;
}

}  // namespace saco
