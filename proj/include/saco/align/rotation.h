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

#ifndef SACO_ALIGN_ROTATION_H_
#define SACO_ALIGN_ROTATION_H_

#include <vector>

#include "saco/core/types.h"

namespace saco::align {

inline constexpr int kThumbnailSize = 40;
inline constexpr double kDefaultThetaStep = 10.0;

// Rotates counter-clockwise (as displayed, rows growing downward) by
// `theta_degrees` about the image center. Bilinear sampling; samples falling
// outside the source read as zero. Output has the input's size. Multiples of
// 90 degrees use exact trigonometric values, so they permute pixels exactly
// on square images.
Grid Rotate(const Grid& image, double theta_degrees);

// Bilinear resize with pixel-center alignment (edge pixels clamped).
Grid Resize(const Grid& image, int height, int width);

// Rotation followed by a resize to kThumbnailSize x kThumbnailSize.
Grid RotateResize(const Grid& image, double theta_degrees);

// Rotates every channel of a feature map the same way as Rotate.
FeatureMap RotateFeatureMap(const FeatureMap& map, double theta_degrees);

// 0, step, 2 step, ... below 360.
std::vector<double> ThetaGrid(double step_degrees = kDefaultThetaStep);

}  // namespace saco::align

#endif  // SACO_ALIGN_ROTATION_H_
