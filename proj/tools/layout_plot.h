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

#ifndef SACO_TOOLS_LAYOUT_PLOT_H_
#define SACO_TOOLS_LAYOUT_PLOT_H_

#include <span>
#include <string>

#include "saco/core/types.h"

namespace saco::cli {

// SVG scatter of patch coordinates colored by class, selected patches (given
// as patch ids) drawn as outlined rings, plus a legend with one entry per
// class. Patch features are not used.
std::string LayoutSvg(std::span<const Patch> patches, std::span<const int> selected_ids);

}  // namespace saco::cli

#endif  // SACO_TOOLS_LAYOUT_PLOT_H_
