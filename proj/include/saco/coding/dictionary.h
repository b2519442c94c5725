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

#ifndef SACO_CODING_DICTIONARY_H_
#define SACO_CODING_DICTIONARY_H_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "saco/core/types.h"

namespace saco::coding {

// Selected exemplars used directly as dictionary atoms. Column k of `atoms`
// is the feature vector of the k-th selected patch, in selection order.
struct Dictionary {
  Eigen::MatrixXd atoms;  // p x m
  std::vector<Coord> coords;
  std::vector<int> labels;
  std::vector<int> patch_ids;

  int size() const { return static_cast<int>(atoms.cols()); }
  int dim() const { return static_cast<int>(atoms.rows()); }

  // Throws kInvalidInput on an empty dictionary or inconsistent metadata.
  void Validate() const;

  // `selected` holds indices into `patches`.
  static Dictionary FromSelection(std::span<const Patch> patches, std::span<const int> selected);
};

// Penalty profile of an atom as a function of its distance to the query
// patch, both in normalized coordinates.
struct SpatialWeightConfig {
  enum class Kernel { kLinear, kOneMinusGaussian };
  Kernel kernel = Kernel::kLinear;
  double epsilon = 0.1;
  double scale = 0.5;

  // Throws kInvalidConfig for scale <= 0 or a negative / non-finite epsilon.
  void Validate() const;
  static Kernel ParseKernel(const std::string& name);
  static std::string KernelName(Kernel kernel);
};

// w_i = eps + d_i / scale                          (linear)
// w_i = eps + 1 - exp(-d_i^2 / (2 scale^2))        (one-minus-gaussian)
// with d_i the distance from `query` to atom i.
Eigen::VectorXd SpatialWeights(const Coord& query, std::span<const Coord> atom_coords,
                               const SpatialWeightConfig& config);

}  // namespace saco::coding

#endif  // SACO_CODING_DICTIONARY_H_
