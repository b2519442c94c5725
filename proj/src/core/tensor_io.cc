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

#include "saco/core/tensor_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "saco/core/error.h"

namespace saco {
namespace {

static_assert(std::endian::native == std::endian::little,
              "tensor I/O assumes a little-endian host");

template <typename T>
void Append(std::string& out, T value) {
  char raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  out.append(raw, sizeof(T));
}

template <typename T>
T ReadAt(std::span<const char> bytes, std::uint64_t& offset, const char* what) {
  if (offset > bytes.size() || bytes.size() - offset < sizeof(T)) {
    throw FormatError(std::string("truncated tensor header reading ") + what, offset);
  }
  T value;
  std::memcpy(&value, bytes.data() + offset, sizeof(T));
  offset += sizeof(T);
  return value;
}

constexpr std::uint32_t kMaxRank = 16;

}  // namespace

std::uint64_t Tensor::NumElements() const {
  std::uint64_t count = 1;
  for (std::uint64_t d : dims) count *= d;
  return count;
}

std::string EncodeTensor(const Tensor& tensor) {
  Require(tensor.NumElements() == tensor.values.size(), ErrorCode::kInvalidInput,
          "tensor dims do not match payload size");
  std::string out(kTensorMagic, sizeof(kTensorMagic));
  Append<std::uint32_t>(out, static_cast<std::uint32_t>(tensor.dims.size()));
  for (std::uint64_t d : tensor.dims) Append<std::uint64_t>(out, d);
  const std::size_t payload = tensor.values.size() * sizeof(float);
  const std::size_t start = out.size();
  out.resize(start + payload);
  if (payload > 0) std::memcpy(out.data() + start, tensor.values.data(), payload);
  return out;
}

Tensor DecodeTensor(std::span<const char> bytes) {
  std::uint64_t offset = 0;
  if (bytes.size() < sizeof(kTensorMagic) ||
      std::memcmp(bytes.data(), kTensorMagic, sizeof(kTensorMagic)) != 0) {
    throw FormatError("bad magic, expected \"SKT1\"", 0);
  }
  offset = sizeof(kTensorMagic);
  const std::uint64_t rank_offset = offset;
  const auto rank = ReadAt<std::uint32_t>(bytes, offset, "rank");
  if (rank > kMaxRank) {
    throw FormatError("rank " + std::to_string(rank) + " exceeds limit", rank_offset);
  }
  Tensor tensor;
  tensor.dims.reserve(rank);
  std::uint64_t count = 1;
  for (std::uint32_t r = 0; r < rank; ++r) {
    const std::uint64_t dim_offset = offset;
    const auto dim = ReadAt<std::uint64_t>(bytes, offset, "dims");
    if (dim != 0 && count > std::numeric_limits<std::uint64_t>::max() / sizeof(float) / dim) {
      throw FormatError("dimension product overflows", dim_offset);
    }
    count *= dim;
    tensor.dims.push_back(dim);
  }
  const std::uint64_t available = bytes.size() - offset;
  if (count * sizeof(float) > available) {
    throw FormatError("truncated payload: need " + std::to_string(count * sizeof(float)) +
                          " bytes, have " + std::to_string(available),
                      offset);
  }
  if (count * sizeof(float) < available) {
    throw FormatError("trailing bytes after payload", offset + count * sizeof(float));
  }
  tensor.values.resize(count);
  if (count > 0) std::memcpy(tensor.values.data(), bytes.data() + offset, count * sizeof(float));
  return tensor;
}

void WriteTensor(const std::filesystem::path& path, const Tensor& tensor) {
  const std::string encoded = EncodeTensor(tensor);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  Require(static_cast<bool>(out), ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(encoded.data(), static_cast<std::streamsize>(encoded.size()));
  Require(static_cast<bool>(out), ErrorCode::kIo, "failed writing " + path.string());
}

Tensor ReadTensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  Require(static_cast<bool>(in), ErrorCode::kIo, "cannot open tensor file " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return DecodeTensor(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what(), e.offset());
  }
}

Tensor MatrixToTensor(const Eigen::MatrixXd& matrix) {
  Tensor tensor;
  tensor.dims = {static_cast<std::uint64_t>(matrix.rows()),
                 static_cast<std::uint64_t>(matrix.cols())};
  tensor.values.reserve(static_cast<std::size_t>(matrix.size()));
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      tensor.values.push_back(static_cast<float>(matrix(r, c)));
    }
  }
  return tensor;
}

Eigen::MatrixXd TensorToMatrix(const Tensor& tensor) {
  Require(tensor.dims.size() == 2, ErrorCode::kInvalidInput,
          "expected a rank-2 tensor, got rank " + std::to_string(tensor.dims.size()));
  const auto rows = static_cast<Eigen::Index>(tensor.dims[0]);
  const auto cols = static_cast<Eigen::Index>(tensor.dims[1]);
  Eigen::MatrixXd matrix(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      matrix(r, c) = tensor.values[static_cast<std::size_t>(r * cols + c)];
    }
  }
  return matrix;
}

Tensor FeatureMapsToTensor(std::span<const FeatureMap> maps) {
  Tensor tensor;
  if (maps.empty()) {
    tensor.dims = {0, 0, 0, 0};
    return tensor;
  }
  const FeatureMap& first = maps.front();
  tensor.dims = {maps.size(), static_cast<std::uint64_t>(first.height()),
                 static_cast<std::uint64_t>(first.width()),
                 static_cast<std::uint64_t>(first.channels())};
  for (const FeatureMap& map : maps) {
    Require(map.height() == first.height() && map.width() == first.width() &&
                map.channels() == first.channels(),
            ErrorCode::kInvalidInput, "feature maps must share one shape");
    for (double v : map.data()) tensor.values.push_back(static_cast<float>(v));
  }
  return tensor;
}

std::vector<FeatureMap> TensorToFeatureMaps(const Tensor& tensor) {
  Require(tensor.dims.size() == 4, ErrorCode::kInvalidInput,
          "expected a rank-4 feature tensor (N x H x W x C)");
  const auto n = tensor.dims[0];
  const int h = static_cast<int>(tensor.dims[1]);
  const int w = static_cast<int>(tensor.dims[2]);
  const int c = static_cast<int>(tensor.dims[3]);
  std::vector<FeatureMap> maps;
  maps.reserve(n);
  std::size_t pos = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    FeatureMap map(h, w, c);
    for (double& v : map.data()) v = tensor.values[pos++];
    maps.push_back(std::move(map));
  }
  return maps;
}

}  // namespace saco
