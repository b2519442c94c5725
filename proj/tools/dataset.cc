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

#include "dataset.h"

#include <sstream>

#include "saco/align/pgm.h"
#include "saco/core/csv.h"
#include "saco/core/error.h"
#include "saco/core/tensor_io.h"

namespace saco::cli {
namespace {

std::filesystem::path PgmPath(const std::filesystem::path& dir, int image_id) {
  return dir / "pgm" / (std::to_string(image_id) + ".pgm");
}

}  // namespace

void WriteDataset(const std::filesystem::path& dir, std::span<const FeatureImage> train,
                  std::span<const FeatureImage> test) {
  std::filesystem::create_directories(dir);
  std::vector<FeatureMap> maps;
  std::ostringstream index;
  index << "image_id,label,split\n";
  bool any_pixels = false;
  for (const auto& [images, split] : {std::pair{train, "train"}, std::pair{test, "test"}}) {
    for (const FeatureImage& im : images) {
      maps.push_back(im.features);
      index << im.image_id << ',' << im.label << ',' << split << '\n';
      any_pixels |= im.pixels.has_value();
    }
  }
  WriteTensor(dir / "features.skt", FeatureMapsToTensor(maps));
  WriteTextFile(dir / "images.csv", index.str());
  if (!any_pixels) return;
  std::filesystem::create_directories(dir / "pgm");
  for (const auto& images : {train, test}) {
    for (const FeatureImage& im : images) {
      if (im.pixels) align::WritePgm(PgmPath(dir, im.image_id), *im.pixels);
    }
  }
}

DatasetFiles ReadDataset(const std::filesystem::path& dir) {
  Require(std::filesystem::is_directory(dir), ErrorCode::kIo,
          "dataset directory " + dir.string() + " does not exist");
  const CsvTable index = CsvTable::Read(dir / "images.csv");
  std::vector<FeatureMap> maps = TensorToFeatureMaps(ReadTensor(dir / "features.skt"));
  Require(maps.size() == index.num_rows(), ErrorCode::kInvalidInput,
          dir.string() + ": images.csv has " + std::to_string(index.num_rows()) +
              " rows but features.skt holds " + std::to_string(maps.size()) + " maps");
  const std::size_t id_col = index.Column("image_id");
  const std::size_t label_col = index.Column("label");
  const std::size_t split_col = index.Column("split");
  DatasetFiles out;
  for (std::size_t r = 0; r < index.num_rows(); ++r) {
    FeatureImage im;
    im.image_id = index.IntField(r, id_col);
    im.label = index.IntField(r, label_col);
    im.features = std::move(maps[r]);
    const std::filesystem::path pgm = PgmPath(dir, im.image_id);
    if (std::filesystem::exists(pgm)) im.pixels = align::ReadPgm(pgm);
    const std::string& split = index.Field(r, split_col);
    if (split == "train") {
      out.train.push_back(std::move(im));
    } else if (split == "test") {
      out.test.push_back(std::move(im));
    } else {
      throw FormatError((dir / "images.csv").string() + ": split must be train or test, got '" +
                            split + "'",
                        r + 2);
    }
  }
  return out;
}

}  // namespace saco::cli
