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

#ifndef SACO_SYNTHETIC_GENERATORS_H_
#define SACO_SYNTHETIC_GENERATORS_H_

#include <cstdint>
#include <vector>

#include "saco/core/types.h"

namespace saco::synthetic {

struct Dataset {
  std::vector<FeatureImage> train;
  std::vector<FeatureImage> test;
  int num_classes = 0;
};

// Labeled 2D point clouds; each point's feature vector is its coordinate.
struct Blobs2dOptions {
  int classes = 3;
  int per_class = 100;
  double spread = 0.08;
  std::uint64_t seed = 0;
};
std::vector<Patch> Blobs2d(const Blobs2dOptions& options);

// Unstructured candidate pools for selection benchmarks: Gaussian features
// whose first coordinate is shifted by 1.5 * label, uniform coordinates,
// `per_image` consecutive patches per image id.
struct CandidatesOptions {
  int count = 300;
  int dim = 16;
  int classes = 4;
  int per_image = 10;
  std::uint64_t seed = 0;
};

std::vector<Patch> RandomCandidates(const CandidatesOptions& options);

// Feature-map images on a square grid. A disc in the middle of the grid is
// the "grain"; outside it cells hold low-energy background. The grain is cut
// into four quadrants and every class paints each of four texture prototypes
// onto exactly one quadrant, using a different assignment per class. Every
// class therefore contains the same textures in the same proportions; only
// where they sit tells the classes apart.
struct SpatialTextureOptions {
  int classes = 3;
  int train_per_class = 20;
  int test_per_class = 20;
  int grid = 8;
  int dim = 64;
  double noise = 0.5;  // per-cell noise norm relative to a prototype's norm
  double background = 0.3;  // background norm relative to a prototype's norm
  std::uint64_t seed = 0;
};
inline constexpr int kTextureQuadrants = 4;
inline constexpr int kBackgroundTexture = -1;

Dataset SpatialTexture(const SpatialTextureOptions& options);

// Texture id per cell (row-major), kBackgroundTexture outside the grain.
std::vector<int> SpatialTextureLayout(int label, int grid);

// Two asymmetric shapes, each rendered at random in-plane rotations. Labels
// and viewpoints are the shape index. Features are non-overlapping pixel
// blocks (block x block values per cell).
struct ViewpointsOptions {
  int per_view = 30;
  int size = 64;
  int block = 8;
  double noise = 0.02;
  std::uint64_t seed = 0;
};

struct ViewpointsData {
  std::vector<FeatureImage> images;
  // Counter-clockwise rotation applied to the canonical shape, degrees.
  std::vector<double> rotation;
};
ViewpointsData Viewpoints(const ViewpointsOptions& options);

// Block features of a grayscale image, as used by Viewpoints.
FeatureMap BlockFeatures(const Grid& pixels, int block);

}  // namespace saco::synthetic

#endif  // SACO_SYNTHETIC_GENERATORS_H_
