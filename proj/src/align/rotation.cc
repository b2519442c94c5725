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

#include "saco/align/rotation.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "saco/core/error.h"

namespace saco::align {
namespace {

struct CosSin {
  double c;
  double s;
};

CosSin ExactCosSin(double theta_degrees) {
  const double reduced = std::fmod(theta_degrees, 360.0);
  const double t = reduced < 0 ? reduced + 360.0 : reduced;
  if (t == 0.0) return {1.0, 0.0};
  if (t == 90.0) return {0.0, 1.0};
  if (t == 180.0) return {-1.0, 0.0};
  if (t == 270.0) return {0.0, -1.0};
  const double rad = t * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

// Bilinear read of a row-major plane with stride `stride` between
// consecutive pixels; out-of-range neighbors contribute zero.
double SampleZeroPadded(const double* data, int h, int w, int stride, double y, double x) {
  const double fy = std::floor(y);
  const double fx = std::floor(x);
  const int y0 = static_cast<int>(fy);
  const int x0 = static_cast<int>(fx);
  const double ty = y - fy;
  const double tx = x - fx;
  auto at = [&](int r, int c) {
    return (r < 0 || r >= h || c < 0 || c >= w) ? 0.0
                                                : data[(static_cast<std::size_t>(r) * w + c) * stride];
  };
  double v = 0.0;
  if ((1 - ty) * (1 - tx) != 0.0) v += (1 - ty) * (1 - tx) * at(y0, x0);
  if ((1 - ty) * tx != 0.0) v += (1 - ty) * tx * at(y0, x0 + 1);
  if (ty * (1 - tx) != 0.0) v += ty * (1 - tx) * at(y0 + 1, x0);
  if (ty * tx != 0.0) v += ty * tx * at(y0 + 1, x0 + 1);
  return v;
}

template <typename Write>
void RotatePlane(int h, int w, double theta_degrees, Write&& write) {
  const CosSin cs = ExactCosSin(theta_degrees);
  const double cy = 0.5 * (h - 1);
  const double cx = 0.5 * (w - 1);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      // Inverse map in y-up coordinates.
      const double ox = c - cx;
      const double oy = cy - r;
      const double sx = cs.c * ox + cs.s * oy;
      const double sy = -cs.s * ox + cs.c * oy;
      write(r, c, cy - sy, cx + sx);
    }
  }
}

}  // namespace

Grid Rotate(const Grid& image, double theta_degrees) {
  Require(!image.empty(), ErrorCode::kInvalidInput, "cannot rotate an empty image");
  const int h = image.height();
  const int w = image.width();
  Grid out(h, w);
  RotatePlane(h, w, theta_degrees, [&](int r, int c, double y, double x) {
    out(r, c) = SampleZeroPadded(image.data().data(), h, w, 1, y, x);
  });
  return out;
}

Grid Resize(const Grid& image, int height, int width) {
  Require(!image.empty(), ErrorCode::kInvalidInput, "cannot resize an empty image");
  Require(height >= 1 && width >= 1, ErrorCode::kInvalidInput, "resize target must be non-empty");
  const double sy = static_cast<double>(image.height()) / height;
  const double sx = static_cast<double>(image.width()) / width;
  Grid out(height, width);
  for (int r = 0; r < height; ++r) {
    const double y = std::clamp((r + 0.5) * sy - 0.5, 0.0, image.height() - 1.0);
    const int y0 = static_cast<int>(std::floor(y));
    const int y1 = std::min(y0 + 1, image.height() - 1);
    const double ty = y - y0;
    for (int c = 0; c < width; ++c) {
      const double x = std::clamp((c + 0.5) * sx - 0.5, 0.0, image.width() - 1.0);
      const int x0 = static_cast<int>(std::floor(x));
      const int x1 = std::min(x0 + 1, image.width() - 1);
      const double tx = x - x0;
      double v = (1 - ty) * (1 - tx) * image(y0, x0);
      if (tx != 0.0) v += (1 - ty) * tx * image(y0, x1);
      if (ty != 0.0) v += ty * (1 - tx) * image(y1, x0);
      if (ty != 0.0 && tx != 0.0) v += ty * tx * image(y1, x1);
      out(r, c) = v;
    }
  }
  return out;
}

Grid RotateResize(const Grid& image, double theta_degrees) {
  return Resize(Rotate(image, theta_degrees), kThumbnailSize, kThumbnailSize);
}

FeatureMap RotateFeatureMap(const FeatureMap& map, double theta_degrees) {
  Require(map.height() >= 1 && map.width() >= 1, ErrorCode::kInvalidInput,
          "cannot rotate an empty feature map");
  const int h = map.height();
  const int w = map.width();
  const int ch = map.channels();
  FeatureMap out(h, w, ch);
  RotatePlane(h, w, theta_degrees, [&](int r, int c, double y, double x) {
    auto dst = out.cell(r, c);
    for (int k = 0; k < ch; ++k) {
      dst[k] = SampleZeroPadded(map.data().data() + k, h, w, ch, y, x);
    }
  });
  return out;
}

std::vector<double> ThetaGrid(double step_degrees) {
  Require(std::isfinite(step_degrees) && step_degrees > 0.0 && step_degrees <= 360.0,
          ErrorCode::kInvalidConfig, "theta step must be in (0, 360]");
  std::vector<double> grid;
  for (int k = 0; k * step_degrees < 360.0 - 1e-9; ++k) grid.push_back(k * step_degrees);
  return grid;
}

}  // namespace saco::align
