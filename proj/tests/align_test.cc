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

#include <cmath>
#include <filesystem>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "saco/align/pgm.h"
#include "saco/align/rotation.h"
#include "saco/align/viewpoint.h"
#include "saco/core/error.h"
#include "saco/synthetic/generators.h"

namespace saco::align {
namespace {

Grid RandomGrid(int h, int w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit;
  Grid g(h, w);
  for (double& v : g.data()) v = unit(rng);
  return g;
}

// Counter-clockwise quarter turn by index permutation.
Grid QuarterTurn(const Grid& in) {
  const int n = in.height();
  Grid out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out(r, c) = in(c, n - 1 - r);
  }
  return out;
}

double MaxAbsDiff(const Grid& a, const Grid& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

double L2(const Grid& a, const Grid& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += std::pow(a.data()[i] - b.data()[i], 2);
  return std::sqrt(s);
}

double CircularDiff(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 360.0);
  return std::min(d, 360.0 - d);
}

TEST(Rotation, ZeroIsIdentityAt40) {
  const Grid g = RandomGrid(40, 40, 1);
  EXPECT_LE(MaxAbsDiff(RotateResize(g, 0.0), g), 1e-12);
}

TEST(Rotation, FullTurnMatchesZero) {
  const Grid g = RandomGrid(52, 37, 2);
  EXPECT_LE(MaxAbsDiff(RotateResize(g, 360.0), RotateResize(g, 0.0)), 1e-9);
  EXPECT_LE(MaxAbsDiff(Rotate(g, -360.0), g), 1e-9);
}

TEST(Rotation, QuarterTurnIsIndexPermutation) {
  Grid square(40, 40);
  for (int r = 8; r < 20; ++r) {
    for (int c = 5; c < 30; ++c) square(r, c) = 1.0;
  }
  EXPECT_LE(MaxAbsDiff(RotateResize(square, 90.0), QuarterTurn(square)), 1e-6);
  const Grid g = RandomGrid(40, 40, 3);
  EXPECT_LE(MaxAbsDiff(Rotate(g, 90.0), QuarterTurn(g)), 1e-12);
  EXPECT_LE(MaxAbsDiff(Rotate(g, 180.0), QuarterTurn(QuarterTurn(g))), 1e-12);
}

TEST(Rotation, SmallRotationMovesMassCounterClockwise) {
  // A dot right of center moves up (lower row index) under a positive angle.
  Grid g(41, 41);
  g(20, 35) = 1.0;
  const Grid r = Rotate(g, 30.0);
  double row_mean = 0.0;
  double total = 0.0;
  for (int i = 0; i < 41; ++i) {
    for (int j = 0; j < 41; ++j) {
      row_mean += i * r(i, j);
      total += r(i, j);
    }
  }
  EXPECT_LT(row_mean / total, 20.0 - 5.0);
}

TEST(Rotation, FeatureMapChannelsRotateLikeGrids) {
  FeatureMap map(12, 12, 3);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit;
  for (double& v : map.data()) v = unit(rng);
  const FeatureMap rotated = RotateFeatureMap(map, 33.0);
  for (int k = 0; k < 3; ++k) {
    Grid plane(12, 12);
    for (int r = 0; r < 12; ++r) {
      for (int c = 0; c < 12; ++c) plane(r, c) = map.cell(r, c)[k];
    }
    const Grid expected = Rotate(plane, 33.0);
    for (int r = 0; r < 12; ++r) {
      for (int c = 0; c < 12; ++c) EXPECT_EQ(rotated.cell(r, c)[k], expected(r, c));
    }
  }
}

TEST(Rotation, Errors) {
  EXPECT_THROW(RotateResize(Grid(), 0.0), Error);
  EXPECT_THROW(ThetaGrid(0.0), Error);
  EXPECT_EQ(ThetaGrid(10.0).size(), 36u);
  EXPECT_EQ(ThetaGrid(10.0).back(), 350.0);
}

TEST(Similarity, SelfIsInverseEpsilon) {
  const Grid g = RandomGrid(30, 30, 5);
  const auto grid = ThetaGrid();
  EXPECT_EQ(PairwiseSimilarity(g, g, grid, 1e-6), 1.0 / 1e-6);
}

TEST(Similarity, QuarterTurnedCopy) {
  const Grid a = RandomGrid(40, 40, 6);
  const auto grid = ThetaGrid(10.0);
  EXPECT_NEAR(PairwiseSimilarity(a, QuarterTurn(a), grid, 1e-6), 1e6, 1e-3);
}

TEST(Similarity, MatchesExhaustiveSearch) {
  const Grid a = RandomGrid(33, 29, 7);
  const Grid b = RandomGrid(25, 31, 8);
  const auto grid = ThetaGrid(15.0);
  double best = INFINITY;
  double best_theta = -1;
  for (double t : grid) {
    const double d = L2(RotateResize(a, 0.0), RotateResize(b, t));
    if (d < best) {
      best = d;
      best_theta = t;
    }
  }
  const BestRotation r = MinRotationDistance(a, b, grid);
  EXPECT_EQ(r.distance, best);
  EXPECT_EQ(r.theta, best_theta);
  double back = INFINITY;
  for (double t : grid) back = std::min(back, L2(RotateResize(b, 0.0), RotateResize(a, t)));
  EXPECT_NEAR(PairwiseSimilarity(a, b, grid, 1e-6), 1.0 / (1e-6 + 0.5 * (best + back)), 1e-15);
}

Eigen::MatrixXd RandomDissimilarity(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit;
  Eigen::MatrixXd pts(n, 2);
  for (int i = 0; i < n; ++i) pts.row(i) << unit(rng), unit(rng);
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d(i, j) = i == j ? 0.0 : 1e-6 + (pts.row(i) - pts.row(j)).norm();
  }
  return d;
}

TEST(KMedoids, EveryPointItsOwnMedoid) {
  const Eigen::MatrixXd d = RandomDissimilarity(9, 1);
  const KMedoidsResult r = KMedoids(d, 9, 3);
  EXPECT_EQ(r.cost_history.back(), 0.0);
  std::vector<int> sorted = r.medoids;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 9; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(KMedoids, SingleClusterPicksMinimumSum) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::MatrixXd d = RandomDissimilarity(25, 100 + seed);
    Eigen::Index best;
    d.colwise().sum().minCoeff(&best);
    const KMedoidsResult r = KMedoids(d, 1, seed);
    EXPECT_EQ(r.medoids[0], best);
    EXPECT_TRUE(r.converged);
  }
}

TEST(KMedoids, CostNonIncreasingAndMedoidsAreMembers) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::MatrixXd d = RandomDissimilarity(60, seed);
    const KMedoidsResult r = KMedoids(d, 4, seed);
    for (std::size_t k = 1; k < r.cost_history.size(); ++k) {
      EXPECT_LE(r.cost_history[k], r.cost_history[k - 1] + 1e-12);
    }
    for (std::size_t c = 0; c < r.medoids.size(); ++c) {
      EXPECT_EQ(r.assignment[r.medoids[c]], static_cast<int>(c));
    }
    EXPECT_EQ(KMedoids(d, 4, seed).medoids, r.medoids);
  }
}

TEST(KMedoids, TooManyClustersRejected) {
  try {
    KMedoids(RandomDissimilarity(3, 1), 4, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
  }
}

std::vector<Grid> Pixels(const synthetic::ViewpointsData& data) {
  std::vector<Grid> out;
  for (const auto& im : data.images) out.push_back(*im.pixels);
  return out;
}

std::vector<int> Ids(const synthetic::ViewpointsData& data) {
  std::vector<int> out;
  for (const auto& im : data.images) out.push_back(im.image_id);
  return out;
}

TEST(Viewpoints, ClustersAndAlignsPlantedViews) {
  synthetic::ViewpointsOptions opts;
  opts.per_view = 12;
  opts.seed = 3;
  const auto data = synthetic::Viewpoints(opts);
  const auto pixels = Pixels(data);
  const auto grid = ThetaGrid();
  const ViewpointClustering vc = ClusterViewpoints(pixels, Ids(data), 2, grid, 7);
  int agree = 0;
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    agree += vc.clusters.assignment[i] == vc.clusters.assignment[0]
                 ? data.images[i].label == data.images[0].label
                 : data.images[i].label != data.images[0].label;
  }
  EXPECT_GE(agree, static_cast<int>(pixels.size()) * 95 / 100);
  int recovered = 0;
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const Alignment a = AlignToMedoid(pixels[i], vc.model);
    const int medoid = vc.clusters.medoids[a.cluster];
    const double planted = data.rotation[medoid] - data.rotation[i];
    recovered += CircularDiff(a.theta, planted) <= 10.0;
  }
  EXPECT_GE(recovered, static_cast<int>(pixels.size()) * 9 / 10);
}

TEST(Align, MedoidAlignsToItself) {
  synthetic::ViewpointsOptions opts;
  opts.per_view = 4;
  const auto data = synthetic::Viewpoints(opts);
  const auto pixels = Pixels(data);
  const ViewpointClustering vc = ClusterViewpoints(pixels, Ids(data), 2, ThetaGrid(), 1);
  for (std::size_t c = 0; c < 2; ++c) {
    const Alignment a = AlignToMedoid(pixels[vc.clusters.medoids[c]], vc.model);
    EXPECT_EQ(a.cluster, static_cast<int>(c));
    EXPECT_EQ(a.theta, 0.0);
    // Aligning the aligned image again is a no-op.
    EXPECT_EQ(AlignToMedoid(a.aligned, vc.model).theta, 0.0);
  }
}

TEST(Align, RecoversInverseOfGridRotation) {
  synthetic::ViewpointsOptions opts;
  opts.per_view = 1;
  opts.noise = 0.0;
  const auto data = synthetic::Viewpoints(opts);
  ViewpointModel model;
  model.theta_grid = ThetaGrid();
  model.medoid_ids = {0};
  model.medoid_thumbnails = {RotateResize(*data.images[0].pixels, 0.0)};
  for (double phi : {30.0, 90.0, 140.0, 270.0}) {
    const Alignment a = AlignToMedoid(Rotate(*data.images[0].pixels, phi), model);
    EXPECT_LE(CircularDiff(a.theta, 360.0 - phi), 10.0) << phi;
  }
  // Exhaustive check of the chosen angle.
  const Grid probe = Rotate(*data.images[0].pixels, 47.0);
  const Alignment a = AlignToMedoid(probe, model);
  double best = INFINITY;
  double best_theta = 0;
  for (double t : model.theta_grid) {
    const double d = L2(model.medoid_thumbnails[0], RotateResize(probe, t));
    if (d < best) {
      best = d;
      best_theta = t;
    }
  }
  EXPECT_EQ(a.theta, best_theta);
  EXPECT_EQ(MaxAbsDiff(a.aligned, RotateResize(probe, best_theta)), 0.0);
}

TEST(Pgm, RoundTripAndErrors) {
  Grid g(3, 4);
  for (int i = 0; i < 12; ++i) g.data()[i] = i / 11.0;
  const std::string bytes = EncodePgm(g);
  const Grid back = DecodePgm(bytes);
  ASSERT_EQ(back.height(), 3);
  ASSERT_EQ(back.width(), 4);
  EXPECT_LE(MaxAbsDiff(back, g), 0.5 / 255.0 + 1e-12);
  EXPECT_EQ(EncodePgm(back), bytes);
  const Grid comment = DecodePgm(std::string("P5\n# note\n2 1\n# more\n255\n") + '\x00' + '\xff');
  EXPECT_EQ(comment(0, 0), 0.0);
  EXPECT_EQ(comment(0, 1), 1.0);
  const Grid wide = DecodePgm(std::string("P5 1 1 1000\n") + '\x01' + '\xf4');
  EXPECT_DOUBLE_EQ(wide(0, 0), 0.5);
  EXPECT_THROW(DecodePgm("P2\n1 1\n255\n0"), FormatError);
  EXPECT_THROW(DecodePgm("P5\n2 2\n255\n\x01"), FormatError);
  EXPECT_THROW(DecodePgm("P5\nx 2\n255\n"), FormatError);
  const auto path = std::filesystem::temp_directory_path() / "saco_align_test.pgm";
  WritePgm(path, g);
  EXPECT_EQ(EncodePgm(ReadPgm(path)), bytes);
  std::filesystem::remove(path);
  EXPECT_THROW(ReadPgm("/nonexistent/x.pgm"), Error);
}

}  // namespace
}  // namespace saco::align
