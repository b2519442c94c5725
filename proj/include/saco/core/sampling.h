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

#ifndef SACO_CORE_SAMPLING_H_
#define SACO_CORE_SAMPLING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "saco/core/types.h"

namespace saco {

// Samples `per_image` patches from each image, uniformly over feature-map
// cells, with replacement. Patch ids are assigned consecutively from
// `first_id`; coordinates are the normalized cell centers.
std::vector<Patch> SampleCandidates(std::span<const FeatureImage> images, int per_image,
                                    std::uint64_t seed, int first_id = 0);

// Seed for an independent stream derived from a base seed and a tag.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t tag);

}  // namespace saco

#endif  // SACO_CORE_SAMPLING_H_
