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

#include "saco/core/csv.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "saco/core/error.h"

namespace saco {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::vector<std::string> SplitFields(std::string_view line, char separator) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(separator, start);
    fields.emplace_back(Trim(line.substr(start, end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return fields;
}

CsvTable CsvTable::Parse(std::string_view text, const std::string& source) {
  CsvTable table;
  table.source_ = source;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    const std::string_view line =
        Trim(text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    ++line_no;
    pos = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
    if (line.empty() || line.front() == '#') continue;
    auto fields = SplitFields(line);
    if (!have_header) {
      table.header_ = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header_.size()) {
      throw FormatError(source + ": expected " + std::to_string(table.header_.size()) +
                            " fields, got " + std::to_string(fields.size()),
                        line_no);
    }
    table.rows_.push_back(std::move(fields));
  }
  if (!have_header) throw FormatError(source + ": missing header line", 1);
  return table;
}

CsvTable CsvTable::Read(const std::filesystem::path& path) {
  return Parse(ReadTextFile(path), path.string());
}

bool CsvTable::HasColumn(std::string_view name) const {
  for (const auto& h : header_) {
    if (h == name) return true;
  }
  return false;
}

std::size_t CsvTable::Column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  throw FormatError(source_ + ": missing column '" + std::string(name) + "'", 1);
}

int CsvTable::IntField(std::size_t row, std::size_t col) const {
  const std::string& field = rows_[row][col];
  int value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FormatError(source_ + ": '" + field + "' is not an integer", row + 2);
  }
  return value;
}

double CsvTable::DoubleField(std::size_t row, std::size_t col) const {
  const std::string& field = rows_[row][col];
  try {
    std::size_t used = 0;
    const double value = std::stod(field, &used);
    if (used == field.size()) return value;
  } catch (const std::exception&) {
  }
  throw FormatError(source_ + ": '" + field + "' is not a number", row + 2);
}

std::string FormatDouble(double value) {
  // Shortest text that parses back to the same double.
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void WriteTextFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  Require(static_cast<bool>(out), ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  Require(static_cast<bool>(out), ErrorCode::kIo, "failed writing " + path.string());
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  Require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::string FormatPatchMetadata(std::span<const Patch> patches) {
  std::ostringstream out;
  out << "id,image_id,label,x,y\n";
  for (const Patch& p : patches) {
    out << p.id << ',' << p.image_id << ',' << p.label << ',' << FormatDouble(p.coord.x) << ','
        << FormatDouble(p.coord.y) << '\n';
  }
  return out.str();
}

std::vector<Patch> ParsePatches(const CsvTable& metadata, const Eigen::MatrixXd& features) {
  Require(static_cast<std::size_t>(features.rows()) == metadata.num_rows(),
          ErrorCode::kInvalidInput,
          "patch metadata has " + std::to_string(metadata.num_rows()) +
              " rows but the feature tensor has " + std::to_string(features.rows()));
  const std::size_t id = metadata.Column("id");
  const std::size_t image = metadata.Column("image_id");
  const std::size_t label = metadata.Column("label");
  const std::size_t x = metadata.Column("x");
  const std::size_t y = metadata.Column("y");
  std::vector<Patch> patches(metadata.num_rows());
  for (std::size_t r = 0; r < metadata.num_rows(); ++r) {
    Patch& p = patches[r];
    p.id = metadata.IntField(r, id);
    p.image_id = metadata.IntField(r, image);
    p.label = metadata.IntField(r, label);
    p.coord = {metadata.DoubleField(r, x), metadata.DoubleField(r, y)};
    p.features = features.row(static_cast<Eigen::Index>(r)).transpose();
  }
  return patches;
}

}  // namespace saco
