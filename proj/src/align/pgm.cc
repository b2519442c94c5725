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

#include "saco/align/pgm.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "saco/core/csv.h"
#include "saco/core/error.h"

namespace saco::align {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  // Next whitespace-separated header integer, skipping `#` comments.
  long Next(const char* what) {
    SkipSpaceAndComments();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      Require(value <= std::numeric_limits<int>::max(), ErrorCode::kFormat,
              std::string("PGM ") + what + " too large");
      ++pos_;
    }
    if (pos_ == start) throw FormatError(std::string("PGM: expected ") + what, start);
    return value;
  }

  std::size_t pos() const { return pos_; }
  void Advance() { ++pos_; }

 private:
  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

Grid DecodePgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw FormatError("PGM: missing P5 magic", 0);
  }
  HeaderReader header(bytes);
  const long width = header.Next("width");
  const long height = header.Next("height");
  const long maxval = header.Next("maxval");
  if (width < 1 || height < 1) throw FormatError("PGM: empty image", header.pos());
  if (maxval < 1 || maxval > 65535) throw FormatError("PGM: maxval out of range", header.pos());
  // Exactly one whitespace byte separates the header from the raster.
  if (header.pos() >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[header.pos()]))) {
    throw FormatError("PGM: missing raster separator", header.pos());
  }
  header.Advance();
  const std::size_t sample = maxval > 255 ? 2 : 1;
  const std::size_t need = static_cast<std::size_t>(width) * height * sample;
  if (bytes.size() - header.pos() < need) {
    throw FormatError("PGM: truncated raster", bytes.size());
  }
  Grid image(static_cast<int>(height), static_cast<int>(width));
  const auto* raster = reinterpret_cast<const unsigned char*>(bytes.data() + header.pos());
  for (std::size_t i = 0; i < image.data().size(); ++i) {
    const unsigned v = sample == 1 ? raster[i] : (raster[2 * i] << 8) | raster[2 * i + 1];
    image.data()[i] = static_cast<double>(v) / maxval;
  }
  return image;
}

Grid ReadPgm(const std::filesystem::path& path) { return DecodePgm(ReadTextFile(path)); }

std::string EncodePgm(const Grid& image) {
  Require(!image.empty(), ErrorCode::kInvalidInput, "cannot encode an empty image");
  std::string out = "P5\n" + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n255\n";
  for (double v : image.data()) {
    out.push_back(static_cast<char>(
        static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0))));
  }
  return out;
}

void WritePgm(const std::filesystem::path& path, const Grid& image) {
  WriteTextFile(path, EncodePgm(image));
}

}  // namespace saco::align
