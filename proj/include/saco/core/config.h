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

#ifndef SACO_CORE_CONFIG_H_
#define SACO_CORE_CONFIG_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace saco {

// Flat `key = value` configuration. Blank lines and `#` comments are
// ignored; later assignments override earlier ones.
class KeyValueConfig {
 public:
  static KeyValueConfig Parse(std::string_view text, const std::string& source = "<config>");
  static KeyValueConfig Read(const std::filesystem::path& path);

  // Applies a `key=value` override.
  void Override(std::string_view assignment);
  void Set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool Has(const std::string& key) const { return values_.count(key) > 0; }

  std::string GetString(const std::string& key, const std::string& fallback) const;
  double GetDouble(const std::string& key, double fallback) const;
  int GetInt(const std::string& key, int fallback) const;
  bool GetBool(const std::string& key, bool fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

  // Sorted `key = value` lines, each prefixed by `prefix`.
  std::string Format(std::string_view prefix = "") const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace saco

#endif  // SACO_CORE_CONFIG_H_
