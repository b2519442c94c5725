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

#include "saco/synthetic/generators.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "saco/core/error.h"
#include "saco/core/sampling.h"

namespace saco::synthetic {
namespace {

double Clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Canonical shapes in y-up pixel units around the image center.
double ShapeIntensity(int view, double x, double y, double radius) {
  const double s = radius / 28.0;
  if (view == 0) {
    double v = 0.0;
    const double ex = x / (22 * s);
    const double ey = y / (11 * s);
    if (ex * ex + ey * ey <= 1.0) v = 0.6;
    const double bx = x - 12 * s;
    const double by = y - 7 * s;
    if (bx * bx + by * by <= 25 * s * s) v = 1.0;
    return v;
  }
  const double r = std::hypot(x, y);
  if (r > 17 * s) return 0.0;
  const double angle = std::atan2(y, x) * 180.0 / std::numbers::pi;
  if (r > 8 * s && angle >= 20.0 && angle <= 60.0) return 0.0;
  const double dx = x + 8 * s;
  const double dy = y + 6 * s;
  if (dx * dx + dy * dy <= 9 * s * s) return 1.0;
  return 0.5;
}

Grid RenderShape(int view, int size, double rotation_degrees) {
  constexpr int kSuper = 4;
  const double rad = rotation_degrees * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double center = 0.5 * (size - 1);
  Grid out(size, size);
  for (int r = 0; r < size; ++r) {
    for (int col = 0; col < size; ++col) {
      double acc = 0.0;
      for (int a = 0; a < kSuper; ++a) {
        for (int b = 0; b < kSuper; ++b) {
          const double ox = col + (b + 0.5) / kSuper - 0.5 - center;
          const double oy = center - (r + (a + 0.5) / kSuper - 0.5);
          // Point of the canonical shape that lands here after rotation.
          acc += ShapeIntensity(view, c * ox + s * oy, -s * ox + c * oy, 0.45 * size);
        }
      }
      out(r, col) = acc / (kSuper * kSuper);
    }
  }
  return out;
}

}  // namespace

std::vector<Patch> Blobs2d(const Blobs2dOptions& options) {
  Require(options.classes >= 1 && options.per_class >= 1, ErrorCode::kInvalidConfig,
          "blobs2d needs at least one class and one point per class");
  Require(options.spread > 0.0, ErrorCode::kInvalidConfig, "blobs2d spread must be positive");
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> turn(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> normal(0.0, options.spread);
  // Class centers evenly spaced on a circle, so no center sits between two
  // others and every class is linearly separable from the rest.
  const double phase = turn(rng);
  std::vector<Patch> patches;
  for (int c = 0; c < options.classes; ++c) {
    const double angle = phase + 2.0 * std::numbers::pi * c / options.classes;
    const double cx = 0.5 + 0.3 * std::cos(angle);
    const double cy = 0.5 + 0.3 * std::sin(angle);
    for (int k = 0; k < options.per_class; ++k) {
      Patch p;
      p.id = static_cast<int>(patches.size());
      p.label = c;
      p.image_id = c;
      p.coord = {Clamp01(cx + normal(rng)), Clamp01(cy + normal(rng))};
      p.features = Eigen::Vector2d(p.coord.x, p.coord.y);
      patches.push_back(std::move(p));
    }
  }
  return patches;
}

std::vector<Patch> RandomCandidates(const CandidatesOptions& options) {
  Require(options.count >= 1 && options.dim >= 1 && options.classes >= 1 && options.per_image >= 1,
          ErrorCode::kInvalidConfig, "candidate pool sizes must be positive");
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Patch> patches(options.count);
  for (int i = 0; i < options.count; ++i) {
    Patch& p = patches[i];
    p.id = i;
    p.label = i < options.classes ? i : static_cast<int>(rng() % options.classes);
    p.features.resize(options.dim);
    for (int d = 0; d < options.dim; ++d) p.features[d] = normal(rng) + (d == 0 ? 1.5 * p.label : 0.0);
    p.coord = {unit(rng), unit(rng)};
    p.image_id = i / options.per_image;
  }
  return patches;
}

std::vector<int> SpatialTextureLayout(int label, int grid) {
  std::vector<int> layout(static_cast<std::size_t>(grid) * grid);
  for (int r = 0; r < grid; ++r) {
    for (int c = 0; c < grid; ++c) {
      const double x = (c + 0.5) / grid;
      const double y = (r + 0.5) / grid;
      int& t = layout[static_cast<std::size_t>(r) * grid + c];
      if (std::hypot(x - 0.5, y - 0.5) > 0.5) {
        t = kBackgroundTexture;
        continue;
      }
      const int quadrant = (y < 0.5 ? 0 : 2) + (x < 0.5 ? 0 : 1);
      t = (quadrant + label) % kTextureQuadrants;
    }
  }
  return layout;
}

Dataset SpatialTexture(const SpatialTextureOptions& options) {
  Require(options.classes >= 2 && options.classes <= kTextureQuadrants, ErrorCode::kInvalidConfig,
          "spatial-texture supports 2 to 4 classes");
  Require(options.grid >= 2 && options.dim >= 1, ErrorCode::kInvalidConfig,
          "spatial-texture needs grid >= 2 and dim >= 1");
  Require(options.train_per_class >= 1 && options.test_per_class >= 1, ErrorCode::kInvalidConfig,
          "spatial-texture needs at least one image per class and split");
  Require(options.noise >= 0.0 && options.background >= 0.0, ErrorCode::kInvalidConfig,
          "noise and background levels must be non-negative");
  std::mt19937_64 proto_rng(DeriveSeed(options.seed, 0));
  std::normal_distribution<double> normal;
  std::vector<Eigen::VectorXd> prototypes(kTextureQuadrants, Eigen::VectorXd(options.dim));
  for (auto& p : prototypes) {
    for (int k = 0; k < options.dim; ++k) p[k] = normal(proto_rng);
  }
  // Unit-variance coordinates give prototypes of norm about sqrt(dim).
  const double cell_sigma = options.noise;
  const double background_sigma = options.background;

  Dataset data;
  data.num_classes = options.classes;
  int next_id = 0;
  auto make_split = [&](int per_class, std::vector<FeatureImage>& out) {
    for (int k = 0; k < per_class; ++k) {
      for (int c = 0; c < options.classes; ++c) {
        FeatureImage image;
        image.image_id = next_id++;
        image.label = c;
        image.features = FeatureMap(options.grid, options.grid, options.dim);
        std::mt19937_64 rng(DeriveSeed(options.seed, 1 + static_cast<std::uint64_t>(image.image_id)));
        const std::vector<int> layout = SpatialTextureLayout(c, options.grid);
        for (int r = 0; r < options.grid; ++r) {
          for (int col = 0; col < options.grid; ++col) {
            const int t = layout[static_cast<std::size_t>(r) * options.grid + col];
            auto cell = image.features.cell(r, col);
            for (int j = 0; j < options.dim; ++j) {
              const double base = t == kBackgroundTexture ? 0.0 : prototypes[t][j];
              const double sigma = t == kBackgroundTexture ? background_sigma : cell_sigma;
              cell[j] = base + sigma * normal(rng);
            }
          }
        }
        out.push_back(std::move(image));
      }
    }
  };
  make_split(options.train_per_class, data.train);
  make_split(options.test_per_class, data.test);
  return data;
}

FeatureMap BlockFeatures(const Grid& pixels, int block) {
  Require(block >= 1 && pixels.height() % block == 0 && pixels.width() % block == 0,
          ErrorCode::kInvalidConfig, "image size must be a multiple of the block size");
  FeatureMap map(pixels.height() / block, pixels.width() / block, block * block);
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) {
      auto cell = map.cell(r, c);
      for (int a = 0; a < block; ++a) {
        for (int b = 0; b < block; ++b) cell[a * block + b] = pixels(r * block + a, c * block + b);
      }
    }
  }
  return map;
}

ViewpointsData Viewpoints(const ViewpointsOptions& options) {
  Require(options.per_view >= 1 && options.size >= 8, ErrorCode::kInvalidConfig,
          "viewpoints needs per_view >= 1 and size >= 8");
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> angle(0.0, 360.0);
  std::normal_distribution<double> normal(0.0, options.noise);
  ViewpointsData data;
  for (int view = 0; view < 2; ++view) {
    for (int k = 0; k < options.per_view; ++k) {
      const double rotation = angle(rng);
      Grid pixels = RenderShape(view, options.size, rotation);
      for (double& v : pixels.data()) v = Clamp01(v + normal(rng));
      FeatureImage image;
      image.image_id = static_cast<int>(data.images.size());
      image.label = view;
      image.viewpoint = view;
      image.features = BlockFeatures(pixels, options.block);
      image.pixels = std::move(pixels);
      data.images.push_back(std::move(image));
      data.rotation.push_back(rotation);
    }
  }
  return data;
}

}  // namespace saco::synthetic
