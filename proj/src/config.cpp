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

#include "adiabat/config.hpp"

#include "adiabat/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace adiabat::config {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  std::ostringstream os;
  os << "config";
  if (line > 0) os << ": line " << line;
  os << ": " << msg;
  throw Error(ErrorKind::usage, os.str());
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string && c == '\\') {
      ++i;
    } else if (c == '"') {
      in_string = !in_string;
    } else if (c == '#' && !in_string) {
      return line.substr(0, i);
    }
  }
  return line;
}

bool parse_number(std::string_view s, Value& out) {
  if (s.empty()) return false;
  const bool is_float = s.find_first_of(".eE") != std::string_view::npos;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  if (is_float) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) return false;
    out = v;
  } else {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) return false;
    out = v;
  }
  return true;
}

std::string parse_string(std::string_view s) {
  // s includes the surrounding quotes
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    char c = s[i];
    if (c == '\\') {
      if (i + 2 >= s.size()) throw Error(ErrorKind::usage, "config: dangling escape in string");
      switch (s[++i]) {
        case 'n': c = '\n'; break;
        case 't': c = '\t'; break;
        case '"': c = '"'; break;
        case '\\': c = '\\'; break;
        default: throw Error(ErrorKind::usage, "config: unsupported escape in string");
      }
    } else if (c == '"') {
      throw Error(ErrorKind::usage, "config: unescaped quote inside string");
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

Value parse_value(std::string_view text, bool allow_bare_string) {
  const std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorKind::usage, "config: missing value");
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"') throw Error(ErrorKind::usage, "config: unterminated string");
    return parse_string(s);
  }
  if (s.front() == '[') {
    if (s.back() != ']') throw Error(ErrorKind::usage, "config: unterminated array");
    std::vector<double> items;
    std::string_view body = trim(s.substr(1, s.size() - 2));
    while (!body.empty()) {
      const auto comma = body.find(',');
      const std::string_view item = trim(body.substr(0, comma));
      Value v;
      if (!parse_number(item, v)) {
        throw Error(ErrorKind::usage, "config: array elements must be numbers, got '" +
                                          std::string(item) + "'");
      }
      items.push_back(std::holds_alternative<double>(v) ? std::get<double>(v)
                                                        : static_cast<double>(std::get<std::int64_t>(v)));
      if (comma == std::string_view::npos) break;
      body = trim(body.substr(comma + 1));
    }
    return items;
  }
  Value v;
  if (parse_number(s, v)) return v;
  if (allow_bare_string) return std::string(s);
  throw Error(ErrorKind::usage, "config: cannot parse value '" + std::string(s) + "'");
}

Document Document::parse(std::string_view text) {
  Document doc;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next_line = [&]() {
      const auto nl = text.find('\n', pos);
      const std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;
      return trim(strip_comment(line));
    };
    std::string_view line = next_line();
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (!valid_name(name)) fail(line_no, "invalid section name '" + std::string(name) + "'");
      section = std::string(name);
      if (doc.sections_.count(section)) fail(line_no, "duplicate section [" + section + "]");
      doc.sections_[section];
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (!valid_name(key)) fail(line_no, "invalid key '" + key + "'");
    if (section.empty()) fail(line_no, "key '" + key + "' appears before any [section]");

    std::string value(trim(line.substr(eq + 1)));
    const std::size_t start_line = line_no;
    if (!value.empty() && value.front() == '[') {
      while (value.back() != ']') {
        if (pos > text.size()) fail(start_line, "unterminated array");
        value += ' ';
        value += next_line();
      }
    }
    auto& table = doc.sections_[section];
    if (table.count(key)) fail(start_line, "duplicate key '" + key + "'");
    try {
      table[key] = parse_value(value);
    } catch (const Error& e) {
      fail(start_line, e.what());
    }
  }
  return doc;
}

Document Document::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::usage, "config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void Document::set(const std::string& section, const std::string& key, Value value) {
  if (!valid_name(section) || !valid_name(key)) {
    throw Error(ErrorKind::usage, "config: invalid key '" + section + "." + key + "'");
  }
  sections_[section][key] = std::move(value);
}

void Document::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorKind::usage, "override must look like section.key=value");
  }
  const std::string_view dotted = trim(assignment.substr(0, eq));
  const auto dot = dotted.find('.');
  if (dot == std::string_view::npos) {
    throw Error(ErrorKind::usage, "override key must look like section.key");
  }
  set(std::string(dotted.substr(0, dot)), std::string(dotted.substr(dot + 1)),
      parse_value(assignment.substr(eq + 1), true));
}

const Value* Document::find(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

bool Document::has_section(const std::string& section) const {
  return sections_.count(section) > 0;
}

}  // namespace adiabat::config
