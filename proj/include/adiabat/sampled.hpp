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

// Hamiltonians tabulated in time, read from CSV with header
//
//   t, h_re_0_0, h_im_0_0, h_re_0_1, h_im_0_1, ..., h_re_{N-1}_{N-1}, h_im_{N-1}_{N-1}
//
// covering the upper triangle row by row. The lower triangle follows from
// hermiticity; values between samples are linearly interpolated and times
// outside the table are clamped to its ends.

#include "adiabat/core.hpp"

#include <filesystem>
#include <istream>
#include <vector>

namespace adiabat {

struct SampledTable {
  std::vector<double> times;
  std::vector<Matrix> samples;
};

SampledTable read_sampled_table(std::istream& in);
SampledTable read_sampled_table(const std::filesystem::path& path);

/// Column names for an N-level table, `t` first.
std::vector<std::string> sampled_table_header(std::size_t dimension);

/// Throws a usage error if times are not strictly increasing or samples are
/// not Hermitian.
HamiltonianModel sampled_model(SampledTable table, const Tolerances& tol = {});

}  // namespace adiabat
