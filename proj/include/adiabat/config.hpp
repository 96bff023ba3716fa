// Copyright 2026 The adiabat Authors
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

#pragma once

// A small TOML subset for run configurations: [section] headers, lowercase
// snake_case keys, and values that are strings, integers, floats or arrays of
// numbers. Arrays may span several lines. '#' starts a comment.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adiabat::config {

using Value = std::variant<std::string, double, std::int64_t, std::vector<double>>;

/// Parses one value. With `allow_bare_string`, text that is not a number or
/// array is taken verbatim as a string (used for command-line overrides).
Value parse_value(std::string_view text, bool allow_bare_string = false);

class Document {
 public:
  static Document parse(std::string_view text);
  static Document load(const std::filesystem::path& path);

  /// "section.key=value"
  void apply_override(std::string_view assignment);
  void set(const std::string& section, const std::string& key, Value value);

  const Value* find(const std::string& section, const std::string& key) const;
  bool has_section(const std::string& section) const;
  const std::map<std::string, std::map<std::string, Value>>& sections() const noexcept {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, Value>> sections_;
};

}  // namespace adiabat::config
