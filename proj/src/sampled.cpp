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

#include "adiabat/sampled.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace adiabat {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    std::ostringstream os;
    os << "sampled table: line " << line_no << ": invalid number '" << s << "'";
    throw Error(ErrorKind::usage, os.str());
  }
  return v;
}

}  // namespace

std::vector<std::string> sampled_table_header(std::size_t dimension) {
  std::vector<std::string> names{"t"};
  for (std::size_t i = 0; i < dimension; ++i) {
    for (std::size_t j = i; j < dimension; ++j) {
      const std::string idx = std::to_string(i) + "_" + std::to_string(j);
      names.push_back("h_re_" + idx);
      names.push_back("h_im_" + idx);
    }
  }
  return names;
}

SampledTable read_sampled_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_csv(line);
      break;
    }
  }
  if (header.empty()) throw Error(ErrorKind::usage, "sampled table: missing header");

  // 1 + N (N + 1) columns
  std::size_t dim = 0;
  while (1 + (dim + 1) * (dim + 2) <= header.size()) ++dim;
  if (dim < 2 || header != sampled_table_header(dim)) {
    throw Error(ErrorKind::usage,
                "sampled table: header must be t, h_re_0_0, h_im_0_0, h_re_0_1, ... (upper "
                "triangle, row-major) for N >= 2");
  }

  SampledTable table;
  const auto n = static_cast<Eigen::Index>(dim);
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      std::ostringstream os;
      os << "sampled table: line " << line_no << ": expected " << header.size() << " columns, got "
         << cells.size();
      throw Error(ErrorKind::usage, os.str());
    }
    table.times.push_back(parse_double(cells[0], line_no));
    Matrix h(n, n);
    std::size_t c = 1;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        const Complex z(parse_double(cells[c], line_no), parse_double(cells[c + 1], line_no));
        c += 2;
        if (i == j && z.imag() != 0.0) {
          std::ostringstream os;
          os << "sampled table: line " << line_no << ": diagonal entry has imaginary part";
          throw Error(ErrorKind::usage, os.str());
        }
        h(i, j) = z;
        h(j, i) = std::conj(z);
      }
    }
    table.samples.push_back(std::move(h));
  }
  return table;
}

SampledTable read_sampled_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::usage, "sampled table: cannot open " + path.string());
  return read_sampled_table(in);
}

HamiltonianModel sampled_model(SampledTable table, const Tolerances& tol) {
  if (table.times.size() < 2 || table.times.size() != table.samples.size()) {
    throw Error(ErrorKind::usage, "sampled table: at least two samples are required");
  }
  for (std::size_t k = 1; k < table.times.size(); ++k) {
    if (!(table.times[k] > table.times[k - 1])) {
      throw Error(ErrorKind::usage, "sampled table: times must be strictly increasing");
    }
  }
  const auto dim = static_cast<std::size_t>(table.samples.front().rows());
  for (const auto& s : table.samples) {
    if (s.rows() != s.cols() || static_cast<std::size_t>(s.rows()) != dim) {
      throw Error(ErrorKind::usage, "sampled table: inconsistent sample shapes");
    }
    validate_hermitian(s, tol);
  }
  auto shared = std::make_shared<const SampledTable>(std::move(table));
  auto eval = [shared](double t) -> Matrix {
    const auto& ts = shared->times;
    if (t <= ts.front()) return shared->samples.front();
    if (t >= ts.back()) return shared->samples.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
    return (1.0 - w) * shared->samples[lo] + w * shared->samples[hi];
  };
  return HamiltonianModel(dim, ModelKind::sampled_table, std::move(eval), {}, tol);
}

}  // namespace adiabat
