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

#include "saco/coding/dictionary.h"

#include <cmath>

#include "saco/core/error.h"

namespace saco::coding {

void Dictionary::Validate() const {
  Require(size() >= 1, ErrorCode::kInvalidInput, "dictionary has no atoms");
  Require(coords.size() == static_cast<std::size_t>(size()) &&
              labels.size() == static_cast<std::size_t>(size()) &&
              patch_ids.size() == static_cast<std::size_t>(size()),
          ErrorCode::kInvalidInput, "dictionary metadata does not match its atom count");
  Require(atoms.allFinite(), ErrorCode::kInvalidInput, "dictionary atoms must be finite");
}

Dictionary Dictionary::FromSelection(std::span<const Patch> patches,
                                     std::span<const int> selected) {
  Require(!selected.empty(), ErrorCode::kInvalidInput, "no exemplars selected");
  for (int idx : selected) {
    Require(idx >= 0 && static_cast<std::size_t>(idx) < patches.size(),
            ErrorCode::kInvalidInput, "selected index " + std::to_string(idx) + " out of range");
  }
  const Eigen::Index dim = patches[selected[0]].features.size();
  Dictionary dict;
  dict.atoms.resize(dim, static_cast<Eigen::Index>(selected.size()));
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const int idx = selected[k];
    const Patch& p = patches[idx];
    Require(p.features.size() == dim, ErrorCode::kInvalidInput,
            "exemplar feature dimensions differ");
    dict.atoms.col(static_cast<Eigen::Index>(k)) = p.features;
    dict.coords.push_back(p.coord);
    dict.labels.push_back(p.label);
    dict.patch_ids.push_back(p.id);
  }
  return dict;
}

void SpatialWeightConfig::Validate() const {
  Require(std::isfinite(scale) && scale > 0.0, ErrorCode::kInvalidConfig,
          "spatial weight scale must be positive");
  Require(std::isfinite(epsilon) && epsilon >= 0.0, ErrorCode::kInvalidConfig,
          "spatial weight epsilon must be non-negative");
}

SpatialWeightConfig::Kernel SpatialWeightConfig::ParseKernel(const std::string& name) {
  if (name == "linear") return Kernel::kLinear;
  if (name == "one-minus-gaussian") return Kernel::kOneMinusGaussian;
  Fail(ErrorCode::kInvalidConfig, "unknown spatial weight kernel '" + name + "'");
}

std::string SpatialWeightConfig::KernelName(Kernel kernel) {
  return kernel == Kernel::kLinear ? "linear" : "one-minus-gaussian";
}

Eigen::VectorXd SpatialWeights(const Coord& query, std::span<const Coord> atom_coords,
                               const SpatialWeightConfig& config) {
  config.Validate();
  Eigen::VectorXd w(static_cast<Eigen::Index>(atom_coords.size()));
  for (std::size_t i = 0; i < atom_coords.size(); ++i) {
    const double d = Distance(query, atom_coords[i]);
    const double shape = config.kernel == SpatialWeightConfig::Kernel::kLinear
                             ? d / config.scale
                             : 1.0 - std::exp(-d * d / (2.0 * config.scale * config.scale));
    w[static_cast<Eigen::Index>(i)] = config.epsilon + shape;
  }
  return w;
}

}  // namespace saco::coding
