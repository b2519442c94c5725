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

#ifndef SACO_TOOLS_DATASET_H_
#define SACO_TOOLS_DATASET_H_

#include <filesystem>
#include <span>
#include <vector>

#include "saco/core/types.h"

namespace saco::cli {

// Dataset directory:
//   features.skt   N x H x W x C feature maps, one per image
//   images.csv     image_id,label,split   (split is train or test; row k
//                  describes feature map k)
//   pgm/<id>.pgm   optional grayscale image, needed for alignment
struct DatasetFiles {
  std::vector<FeatureImage> train;
  std::vector<FeatureImage> test;
};

void WriteDataset(const std::filesystem::path& dir, std::span<const FeatureImage> train,
                  std::span<const FeatureImage> test);
DatasetFiles ReadDataset(const std::filesystem::path& dir);

}  // namespace saco::cli

#endif  // SACO_TOOLS_DATASET_H_
