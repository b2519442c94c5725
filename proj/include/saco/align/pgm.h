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

#ifndef SACO_ALIGN_PGM_H_
#define SACO_ALIGN_PGM_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "saco/core/types.h"

namespace saco::align {

// Binary grayscale PGM (P5). Pixel values are scaled to [0, 1] by maxval;
// maxval above 255 uses 16-bit big-endian samples.
Grid DecodePgm(std::string_view bytes);
Grid ReadPgm(const std::filesystem::path& path);

// Writes 8-bit P5, clamping to [0, 1] and rounding to the nearest level.
std::string EncodePgm(const Grid& image);
void WritePgm(const std::filesystem::path& path, const Grid& image);

}  // namespace saco::align

#endif  // SACO_ALIGN_PGM_H_
