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

// Config-driven experiments: simulate, verify and sweep. The runner only
// orchestrates library calls; every reported number comes straight from an
// audit, dual or propagator routine.

#include "adiabat/config.hpp"
#include "adiabat/core.hpp"
#include "adiabat/spinhalf.hpp"

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace adiabat::runner {

enum class ModelType { spin_half, dual_of_spin_half, sampled };

struct RunConfig {
  ModelType model_type = ModelType::spin_half;
  spinhalf::SpinHalfParams spin;
  std::filesystem::path sampled_path;

  double t_end = 0.0;
  std::size_t steps = 0;

  std::size_t level = 0;  // ascending eigenvalue index of the audited system
  double margin = 0.1;
  double verify_tolerance = 1e-6;
  Tolerances tol;

  std::string csv_path;      // "-" writes to standard output
  std::string summary_path;
  std::string plot_script;   // gnuplot script for the CSV, optional

  std::string sweep_parameter;
  std::vector<double> sweep_values;

  /// Relative file paths are resolved against `base_dir`.
  static RunConfig from_document(const config::Document& doc,
                                 const std::filesystem::path& base_dir = {});
};

const char* to_string(ModelType type) noexcept;

/// Ordered key/value summary; printed as `key = value` lines.
class RunSummary {
 public:
  using Entry = std::pair<std::string, std::variant<double, std::string>>;

  void add(std::string key, double value);
  void add(std::string key, std::string value);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const double* number(const std::string& key) const;
  const std::string* text(const std::string& key) const;
  std::string render() const;

 private:
  std::vector<Entry> entries_;
};

struct RunOutput {
  RunSummary summary;
  std::string csv;                    // empty when the command emits none
  std::vector<std::string> failures;  // verification checks that exceeded tolerance
};

/// 17 significant digits, '.' decimal separator, locale independent.
std::string format_number(double v);

RunOutput run_simulate(const RunConfig& cfg);
RunOutput run_verify(const RunConfig& cfg);
RunOutput run_sweep(const RunConfig& cfg);

/// Writes csv_path, summary_path and plot_script as configured.
void write_outputs(const RunConfig& cfg, const RunOutput& out);

}  // namespace adiabat::runner
