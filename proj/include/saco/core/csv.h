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

#ifndef SACO_CORE_CSV_H_
#define SACO_CORE_CSV_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "saco/core/types.h"

namespace saco {

// Minimal comma-separated table: a required header line plus rows of plain
// (unquoted) fields. Blank lines and lines starting with `#` are skipped.
class CsvTable {
 public:
  static CsvTable Parse(std::string_view text, const std::string& source = "<csv>");
  static CsvTable Read(const std::filesystem::path& path);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t num_rows() const { return rows_.size(); }

  // Index of a named column; throws a format error naming the source when
  // the column is missing.
  std::size_t Column(std::string_view name) const;
  bool HasColumn(std::string_view name) const;

  const std::string& Field(std::size_t row, std::size_t col) const { return rows_[row][col]; }
  int IntField(std::size_t row, std::size_t col) const;
  double DoubleField(std::size_t row, std::size_t col) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::vector<std::string> SplitFields(std::string_view line, char separator = ',');

// Formats a double with enough digits to round-trip.
std::string FormatDouble(double value);

void WriteTextFile(const std::filesystem::path& path, std::string_view contents);
std::string ReadTextFile(const std::filesystem::path& path);

// Patch metadata, header `id,image_id,label,x,y`; features live in a
// companion rank-2 tensor whose row k belongs to the k-th CSV row.
std::string FormatPatchMetadata(std::span<const Patch> patches);
std::vector<Patch> ParsePatches(const CsvTable& metadata, const Eigen::MatrixXd& features);

}  // namespace saco

#endif  // SACO_CORE_CSV_H_
