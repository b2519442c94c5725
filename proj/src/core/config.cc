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

#include "saco/core/config.h"

#include <sstream>

#include "saco/core/csv.h"
#include "saco/core/error.h"

namespace saco {
namespace {

std::string Strip(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

KeyValueConfig KeyValueConfig::Parse(std::string_view text, const std::string& source) {
  KeyValueConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = Strip(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw FormatError(source + ": expected key = value", line_no);
    }
    const std::string key = Strip(std::string_view(body).substr(0, eq));
    if (key.empty()) throw FormatError(source + ": empty key", line_no);
    config.values_[key] = Strip(std::string_view(body).substr(eq + 1));
  }
  return config;
}

KeyValueConfig KeyValueConfig::Read(const std::filesystem::path& path) {
  return Parse(ReadTextFile(path), path.string());
}

void KeyValueConfig::Override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  Require(eq != std::string_view::npos, ErrorCode::kInvalidConfig,
          "override '" + std::string(assignment) + "' is not key=value");
  const std::string key = Strip(assignment.substr(0, eq));
  Require(!key.empty(), ErrorCode::kInvalidConfig, "override has an empty key");
  values_[key] = Strip(assignment.substr(eq + 1));
}

std::string KeyValueConfig::GetString(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::GetDouble(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    const double value = std::stod(it->second, &used);
    if (used == it->second.size()) return value;
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kInvalidConfig, "config key '" + key + "' is not a number: " + it->second);
}

int KeyValueConfig::GetInt(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    const int value = std::stoi(it->second, &used);
    if (used == it->second.size()) return value;
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kInvalidConfig, "config key '" + key + "' is not an integer: " + it->second);
}

bool KeyValueConfig::GetBool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  Fail(ErrorCode::kInvalidConfig, "config key '" + key + "' is not a boolean: " + v);
}

std::string KeyValueConfig::Format(std::string_view prefix) const {
  std::string out;
  for (const auto& [key, value] : values_) {
    out.append(prefix);
    out += key + " = " + value + "\n";
  }
  return out;
}

}  // namespace saco
