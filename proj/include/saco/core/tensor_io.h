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

#ifndef SACO_CORE_TENSOR_IO_H_
#define SACO_CORE_TENSOR_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "saco/core/types.h"

namespace saco {

// Row-major float32 tensor as stored on disk.
//
// File layout (little-endian):
//   bytes 0..3   magic "SKT1"
//   u32          rank
//   rank x u64   dims
//   f32 payload  prod(dims) values, row-major
struct Tensor {
  std::vector<std::uint64_t> dims;
  std::vector<float> values;

  std::uint64_t NumElements() const;
  friend bool operator==(const Tensor&, const Tensor&) = default;
};

inline constexpr char kTensorMagic[4] = {'S', 'K', 'T', '1'};

std::string EncodeTensor(const Tensor& tensor);
Tensor DecodeTensor(std::span<const char> bytes);

void WriteTensor(const std::filesystem::path& path, const Tensor& tensor);
Tensor ReadTensor(const std::filesystem::path& path);

// Conversions used by the CLI. Matrices map to rank-2 tensors (rows x cols);
// a list of feature maps maps to a rank-4 tensor (N x H x W x C).
Tensor MatrixToTensor(const Eigen::MatrixXd& matrix);
Eigen::MatrixXd TensorToMatrix(const Tensor& tensor);
Tensor FeatureMapsToTensor(std::span<const FeatureMap> maps);
std::vector<FeatureMap> TensorToFeatureMaps(const Tensor& tensor);

}  // namespace saco

#endif  // SACO_CORE_TENSOR_IO_H_
