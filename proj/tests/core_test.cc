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
#include <cstring>
#include <filesystem>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "saco/core/affinity.h"
#include "saco/core/config.h"
#include "saco/core/csv.h"
#include "saco/core/error.h"
#include "saco/core/sampling.h"
#include "saco/core/tensor_io.h"
#include "saco/core/types.h"
#include "test_util.h"

namespace saco {
namespace {

// O(M^2) construction: full sort of every row, no symmetrization shortcuts.
Eigen::MatrixXd DenseKnnGaussian(const Eigen::MatrixXd& points, int k_nn, double sigma) {
  const int n = static_cast<int>(points.rows());
  Eigen::MatrixXd directed = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> order;
    for (int j = 0; j < n; ++j) {
      if (j != i) order.push_back({(points.row(i) - points.row(j)).squaredNorm(), j});
    }
    std::sort(order.begin(), order.end());
    for (int t = 0; t < std::min(k_nn, n - 1); ++t) {
      directed(i, order[t].second) = std::exp(-order[t].first / (2 * sigma * sigma));
    }
  }
  return directed.cwiseMax(directed.transpose());
}

Eigen::MatrixXd Features(const std::vector<Patch>& patches) {
  Eigen::MatrixXd m(patches.size(), patches[0].features.size());
  for (std::size_t i = 0; i < patches.size(); ++i) m.row(i) = patches[i].features.transpose();
  return m;
}

Eigen::MatrixXd Coords(const std::vector<Patch>& patches) {
  Eigen::MatrixXd m(patches.size(), 2);
  for (std::size_t i = 0; i < patches.size(); ++i) {
    m(i, 0) = patches[i].coord.x;
    m(i, 1) = patches[i].coord.y;
  }
  return m;
}

double OracleMedian(const Eigen::MatrixXd& points) {
  std::vector<double> d;
  for (int i = 0; i < points.rows(); ++i) {
    for (int j = i + 1; j < points.rows(); ++j) d.push_back((points.row(i) - points.row(j)).norm());
  }
  std::sort(d.begin(), d.end());
  const std::size_t n = d.size();
  return n % 2 ? d[n / 2] : 0.5 * (d[n / 2 - 1] + d[n / 2]);
}

void ExpectWellFormed(const AffinityGraph& g, int k_nn) {
  const Eigen::MatrixXd dense = g.ToDense();
  EXPECT_TRUE(dense.isApprox(dense.transpose(), 0.0));
  EXPECT_GE(dense.minCoeff(), 0.0);
  EXPECT_EQ(dense.diagonal().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LE(2 * g.num_edges(), static_cast<std::size_t>(g.size()) * k_nn * 2);
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) EXPECT_EQ(g.value(i, j), dense(i, j));
  }
}

TEST(FeatureAffinity, MatchesDenseOracleOnTenPoints) {
  const auto patches = testing::RandomPatches(10, 4, 2, 11);
  const AffinityGraph g = BuildFeatureAffinity(patches, 3);
  const Eigen::MatrixXd points = Features(patches);
  const Eigen::MatrixXd oracle = DenseKnnGaussian(points, 3, OracleMedian(points));
  EXPECT_LE((g.ToDense() - oracle).cwiseAbs().maxCoeff(), 1e-15);
  ExpectWellFormed(g, 3);
}

TEST(FeatureAffinity, MatchesDenseOracleAcrossSizes) {
  for (int n : {2, 17, 60, 200}) {
    for (int k : {1, 5, 50}) {
      const auto patches = testing::RandomPatches(n, 3, 3, 100 + n + k);
      const AffinityGraph g = BuildFeatureAffinity(patches, k, SigmaMode::Fixed(1.3));
      const Eigen::MatrixXd oracle = DenseKnnGaussian(Features(patches), k, 1.3);
      EXPECT_LE((g.ToDense() - oracle).cwiseAbs().maxCoeff(), 1e-15) << n << " " << k;
      ExpectWellFormed(g, k);
    }
  }
}

TEST(FeatureAffinity, MedianBandwidthSampledForLargeSets) {
  // 100 points have 4950 pairs, so the bandwidth comes from a 1000-pair sample
  // and only has to be a plausible median.
  const auto patches = testing::RandomPatches(100, 2, 1, 5);
  const Eigen::MatrixXd points = Features(patches);
  const double sampled = MedianPairwiseDistance(points);
  EXPECT_NEAR(sampled, OracleMedian(points), 0.15 * OracleMedian(points));
  EXPECT_EQ(sampled, MedianPairwiseDistance(points));
}

TEST(FeatureAffinity, IdenticalFeaturesGiveUnitSimilarity) {
  auto patches = testing::RandomPatches(3, 2, 1, 1);
  patches[1].features = patches[0].features;
  const AffinityGraph g = BuildFeatureAffinity(patches, 2, SigmaMode::Fixed(0.5));
  EXPECT_EQ(g.value(0, 1), 1.0);
}

TEST(FeatureAffinity, Errors) {
  auto patches = testing::RandomPatches(2, 2, 1, 1);
  patches[1].features = patches[0].features;
  try {
    BuildFeatureAffinity(patches, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateInput);
  }
  const auto one = testing::RandomPatches(1, 2, 1, 1);
  try {
    BuildFeatureAffinity(one, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
  }
  EXPECT_THROW(BuildFeatureAffinity(testing::RandomPatches(4, 2, 1, 1), 0), Error);
}

TEST(SpatialAffinity, CornersFormula) {
  std::vector<Patch> patches(2);
  patches[0].features = Eigen::VectorXd::Zero(1);
  patches[1].features = Eigen::VectorXd::Zero(1);
  patches[0].coord = {0, 0};
  patches[1].coord = {1, 1};
  const AffinityGraph g = BuildSpatialAffinity(patches, 1, 0.25);
  EXPECT_NEAR(g.value(0, 1), std::exp(-2.0 / 0.125), 1e-20);
  EXPECT_NEAR(g.value(0, 1), 1.1e-7, 0.05e-7);
  patches[1].coord = {0, 0};
  EXPECT_EQ(BuildSpatialAffinity(patches, 1, 0.25).value(1, 0), 1.0);
}

TEST(SpatialAffinity, MatchesDenseOracle) {
  const auto patches = testing::RandomPatches(20, 2, 2, 77);
  const AffinityGraph g = BuildSpatialAffinity(patches, 4);
  const Eigen::MatrixXd oracle = DenseKnnGaussian(Coords(patches), 4, kDefaultSpatialSigma);
  EXPECT_LE((g.ToDense() - oracle).cwiseAbs().maxCoeff(), 1e-15);
  ExpectWellFormed(g, 4);
}

TEST(AffinityGraph, FromEntriesSymmetrizesByMax) {
  const std::vector<AffinityGraph::Entry> entries = {
      {0, 1, 0.2}, {1, 0, 0.7}, {2, 2, 5.0}, {1, 2, 0.0}, {2, 0, 0.3}};
  const AffinityGraph g = AffinityGraph::FromEntries(3, entries);
  EXPECT_EQ(g.value(0, 1), 0.7);
  EXPECT_EQ(g.value(1, 0), 0.7);
  EXPECT_EQ(g.value(0, 2), 0.3);
  EXPECT_EQ(g.value(2, 2), 0.0);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_THROW(AffinityGraph::FromEntries(2, std::vector<AffinityGraph::Entry>{{0, 1, -1.0}}),
               Error);
}

std::vector<FeatureImage> Images(int count, int h, int w, int channels) {
  std::vector<FeatureImage> images(count);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int k = 0; k < count; ++k) {
    images[k].image_id = 10 + k;
    images[k].label = k % 2;
    images[k].features = FeatureMap(h, w, channels);
    for (double& v : images[k].features.data()) v = normal(rng);
  }
  return images;
}

TEST(Sampling, SinglePatch) {
  const auto images = Images(1, 5, 7, 3);
  const auto patches = SampleCandidates(images, 1, 9);
  ASSERT_EQ(patches.size(), 1u);
  EXPECT_GE(patches[0].coord.x, 0.0);
  EXPECT_LE(patches[0].coord.x, 1.0);
  EXPECT_GE(patches[0].coord.y, 0.0);
  EXPECT_LE(patches[0].coord.y, 1.0);
  EXPECT_EQ(patches[0].image_id, 10);
}

TEST(Sampling, DeterministicAndCounted) {
  const auto images = Images(3, 6, 6, 2);
  const auto a = SampleCandidates(images, 50, 42);
  const auto b = SampleCandidates(images, 50, 42);
  ASSERT_EQ(a.size(), 150u);
  std::map<int, int> per_image;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, static_cast<int>(i));
    EXPECT_EQ(a[i].features, b[i].features);
    EXPECT_EQ(a[i].coord, b[i].coord);
    ++per_image[a[i].image_id];
  }
  for (const auto& [id, n] : per_image) EXPECT_EQ(n, 50);
  EXPECT_EQ(per_image.size(), 3u);
  const auto c = SampleCandidates(images, 50, 43);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= !(a[i].coord == c[i].coord);
  EXPECT_TRUE(differs);
}

TEST(Sampling, FeaturesComeFromTheSampledCell) {
  const auto images = Images(2, 4, 5, 3);
  for (const Patch& p : SampleCandidates(images, 20, 1)) {
    const FeatureMap& map = images[p.image_id - 10].features;
    const int col = static_cast<int>(std::floor(p.coord.x * map.width()));
    const int row = static_cast<int>(std::floor(p.coord.y * map.height()));
    EXPECT_EQ(p.features, map.CellVector(row, col));
    EXPECT_EQ(p.label, images[p.image_id - 10].label);
  }
}

TEST(Sampling, Errors) {
  EXPECT_THROW(SampleCandidates({}, 1, 0), Error);
  const auto images = Images(1, 2, 2, 1);
  EXPECT_THROW(SampleCandidates(images, 0, 0), Error);
}

TEST(Patches, Validation) {
  auto patches = testing::RandomPatches(4, 2, 2, 1);
  EXPECT_NO_THROW(ValidatePatches(patches, 2));
  EXPECT_EQ(CountClasses(patches), 2);
  patches[1].coord.x = 1.5;
  EXPECT_THROW(ValidatePatches(patches, 2), Error);
  patches[1].coord.x = 0.5;
  patches[2].features[0] = std::nan("");
  EXPECT_THROW(ValidatePatches(patches, 2), Error);
  patches[2].features[0] = 0.0;
  patches[3].label = 2;
  EXPECT_THROW(ValidatePatches(patches, 2), Error);
}

TEST(TensorIo, RoundTrip) {
  Tensor t{{2, 3}, {1.5f, -2.0f, 3.25f, 1e-30f, -0.0f, 7.0f}};
  const std::string bytes = EncodeTensor(t);
  EXPECT_EQ(bytes.size(), 4 + 4 + 16 + 24u);
  EXPECT_EQ(std::memcmp(bytes.data(), "SKT1", 4), 0);
  EXPECT_EQ(DecodeTensor(bytes), t);
  const auto path = std::filesystem::temp_directory_path() / "saco_core_test.skt";
  WriteTensor(path, t);
  EXPECT_EQ(ReadTensor(path), t);
  std::filesystem::remove(path);
}

TEST(TensorIo, LittleEndianLayout) {
  const std::string bytes = EncodeTensor(Tensor{{1}, {1.0f}});
  const unsigned char expected[] = {'S', 'K', 'T', '1', 1, 0, 0, 0, 1, 0, 0, 0,
                                    0,   0,   0,   0,   0, 0, 0x80, 0x3f};
  ASSERT_EQ(bytes.size(), sizeof(expected));
  EXPECT_EQ(std::memcmp(bytes.data(), expected, sizeof(expected)), 0);
}

TEST(TensorIo, ZeroLengthDimension) {
  const Tensor t{{0, 5}, {}};
  EXPECT_EQ(DecodeTensor(EncodeTensor(t)), t);
}

TEST(TensorIo, FormatErrorsCarryOffsets) {
  std::string bytes = EncodeTensor(Tensor{{2, 2}, {1, 2, 3, 4}});
  auto offset_of = [](const std::string& b) -> std::int64_t {
    try {
      DecodeTensor(b);
    } catch (const FormatError& e) {
      EXPECT_EQ(e.code(), ErrorCode::kFormat);
      return static_cast<std::int64_t>(e.offset());
    }
    return -1;
  };
  std::string bad = bytes;
  bad[0] = 'X';
  EXPECT_EQ(offset_of(bad), 0);
  EXPECT_EQ(offset_of(bytes.substr(0, bytes.size() - 2)), 24);  // payload starts at 24
  EXPECT_EQ(offset_of(bytes.substr(0, 10)), 8);                  // inside dims
  EXPECT_EQ(offset_of(bytes + "x"), static_cast<std::int64_t>(bytes.size()));
  std::string huge = EncodeTensor(Tensor{{1, 1}, {0}});
  for (int i = 8; i < 24; ++i) huge[i] = static_cast<char>(0xff);
  EXPECT_GE(offset_of(huge), 8);
}

TEST(TensorIo, FeatureMapConversion) {
  const auto images = Images(2, 3, 4, 5);
  std::vector<FeatureMap> maps = {images[0].features, images[1].features};
  const Tensor t = FeatureMapsToTensor(maps);
  EXPECT_EQ(t.dims, (std::vector<std::uint64_t>{2, 3, 4, 5}));
  const auto back = TensorToFeatureMaps(t);
  ASSERT_EQ(back.size(), 2u);
  for (int k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < maps[k].data().size(); ++i) {
      EXPECT_EQ(back[k].data()[i], static_cast<double>(static_cast<float>(maps[k].data()[i])));
    }
  }
  Eigen::MatrixXd m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  EXPECT_EQ(TensorToMatrix(MatrixToTensor(m)), m);
}

TEST(Csv, ParseAndErrors) {
  const CsvTable t = CsvTable::Parse("a,b\n1,2.5\n3,x\n");
  EXPECT_EQ(t.num_rows(), 2u);
  EXPECT_EQ(t.IntField(0, t.Column("a")), 1);
  EXPECT_EQ(t.DoubleField(0, t.Column("b")), 2.5);
  EXPECT_THROW(t.DoubleField(1, 1), Error);
  EXPECT_THROW(t.Column("c"), Error);
  EXPECT_THROW(CsvTable::Parse("a,b\n1\n"), FormatError);
  EXPECT_THROW(CsvTable::Parse(""), Error);
}

TEST(Csv, PatchMetadataRoundTrip) {
  const auto patches = testing::RandomPatches(6, 3, 2, 8);
  const std::string text = FormatPatchMetadata(patches);
  EXPECT_EQ(text.substr(0, text.find('\n')), "id,image_id,label,x,y");
  Eigen::MatrixXd features(6, 3);
  for (int i = 0; i < 6; ++i) features.row(i) = patches[i].features.transpose();
  const auto back = ParsePatches(CsvTable::Parse(text), features);
  ASSERT_EQ(back.size(), patches.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].id, patches[i].id);
    EXPECT_EQ(back[i].label, patches[i].label);
    EXPECT_EQ(back[i].image_id, patches[i].image_id);
    EXPECT_EQ(back[i].coord, patches[i].coord);
    EXPECT_EQ(back[i].features, patches[i].features);
  }
}

TEST(Config, ParseOverrideFormat) {
  KeyValueConfig c = KeyValueConfig::Parse("# comment\nk_nn = 10\nname=abc\n\nflag = true\n");
  EXPECT_EQ(c.GetInt("k_nn", 0), 10);
  EXPECT_EQ(c.GetString("name", ""), "abc");
  EXPECT_TRUE(c.GetBool("flag", false));
  EXPECT_EQ(c.GetDouble("missing", 2.5), 2.5);
  c.Override("k_nn=20");
  EXPECT_EQ(c.GetInt("k_nn", 0), 20);
  EXPECT_EQ(c.Format("# "), "# flag = true\n# k_nn = 20\n# name = abc\n");
  EXPECT_THROW(c.Override("novalue"), Error);
  EXPECT_THROW(c.GetInt("name", 0), Error);
  EXPECT_THROW(KeyValueConfig::Parse("just words\n"), Error);
}

}  // namespace
}  // namespace saco
