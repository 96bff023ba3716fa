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

#include "adiabat/adiabat.h"

#include "adiabat/config.hpp"
#include "adiabat/core.hpp"
#include "adiabat/runner.hpp"
#include "adiabat/spinhalf.hpp"

#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

struct adiabat_config {
  adiabat::config::Document doc;
  std::filesystem::path base_dir;
};

struct adiabat_result {
  adiabat::runner::RunOutput output;
  std::string summary_text;
};

namespace {

thread_local std::string g_last_error;

adiabat_status status_for(adiabat::ErrorKind kind) {
  using adiabat::ErrorKind;
  switch (kind) {
    case ErrorKind::usage: return ADIABAT_ERR_USAGE;
    case ErrorKind::verification: return ADIABAT_ERR_VERIFICATION;
    case ErrorKind::numerical:
    case ErrorKind::degeneracy:
    case ErrorKind::tracking:
    case ErrorKind::gauge: return ADIABAT_ERR_NUMERICAL;
  }
  return ADIABAT_ERR_NUMERICAL;
}

template <typename F>
adiabat_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const adiabat::Error& e) {
    g_last_error = std::string(adiabat::to_string(e.kind())) + " error: " + e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ADIABAT_ERR_NUMERICAL;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return ADIABAT_ERR_NUMERICAL;
  }
}

adiabat_status usage(const char* msg) {
  g_last_error = msg;
  return ADIABAT_ERR_USAGE;
}

}  // namespace

extern "C" {

const char* adiabat_version(void) { return "1.0.0"; }

const char* adiabat_last_error(void) { return g_last_error.c_str(); }

adiabat_status adiabat_config_load(const char* path, adiabat_config** out) {
  if (!path || !out) return usage("adiabat_config_load: null argument");
  *out = nullptr;
  return guarded([&] {
    auto cfg = std::make_unique<adiabat_config>();
    cfg->doc = adiabat::config::Document::load(path);
    cfg->base_dir = std::filesystem::path(path).parent_path();
    *out = cfg.release();
    return ADIABAT_OK;
  });
}

adiabat_status adiabat_config_parse(const char* text, const char* base_dir, adiabat_config** out) {
  if (!text || !out) return usage("adiabat_config_parse: null argument");
  *out = nullptr;
  return guarded([&] {
    auto cfg = std::make_unique<adiabat_config>();
    cfg->doc = adiabat::config::Document::parse(text);
    if (base_dir) cfg->base_dir = base_dir;
    *out = cfg.release();
    return ADIABAT_OK;
  });
}

adiabat_status adiabat_config_override(adiabat_config* cfg, const char* assignment) {
  if (!cfg || !assignment) return usage("adiabat_config_override: null argument");
  return guarded([&] {
    cfg->doc.apply_override(assignment);
    return ADIABAT_OK;
  });
}

void adiabat_config_free(adiabat_config* cfg) { delete cfg; }

adiabat_status adiabat_run(const adiabat_config* cfg, adiabat_command command,
                           adiabat_result** out) {
  if (!cfg || !out) return usage("adiabat_run: null argument");
  *out = nullptr;
  return guarded([&] {
    namespace r = adiabat::runner;
    const r::RunConfig rc = r::RunConfig::from_document(cfg->doc, cfg->base_dir);
    auto result = std::make_unique<adiabat_result>();
    switch (command) {
      case ADIABAT_SIMULATE: result->output = r::run_simulate(rc); break;
      case ADIABAT_VERIFY: result->output = r::run_verify(rc); break;
      case ADIABAT_SWEEP: result->output = r::run_sweep(rc); break;
      default: throw adiabat::Error(adiabat::ErrorKind::usage, "adiabat_run: unknown command");
    }
    r::write_outputs(rc, result->output);
    result->summary_text = result->output.summary.render();
    const bool failed = !result->output.failures.empty();
    if (failed) {
      g_last_error = "verification error:";
      for (const auto& f : result->output.failures) g_last_error += " " + f;
      g_last_error += " exceeded tolerance";
    }
    *out = result.release();
    return failed ? ADIABAT_ERR_VERIFICATION : ADIABAT_OK;
  });
}

const char* adiabat_result_summary(const adiabat_result* result) {
  return result ? result->summary_text.c_str() : "";
}

const char* adiabat_result_csv(const adiabat_result* result) {
  return result ? result->output.csv.c_str() : "";
}

adiabat_status adiabat_result_number(const adiabat_result* result, const char* key, double* value) {
  if (!result || !key || !value) return usage("adiabat_result_number: null argument");
  const double* v = result->output.summary.number(key);
  if (!v) return usage("adiabat_result_number: no numeric summary entry with that key");
  *value = *v;
  return ADIABAT_OK;
}

size_t adiabat_result_failure_count(const adiabat_result* result) {
  return result ? result->output.failures.size() : 0;
}

void adiabat_result_free(adiabat_result* result) { delete result; }

adiabat_status adiabat_spinhalf_fidelity_law(double omega0, double omega, double theta, double t,
                                             double* value) {
  if (!value) return usage("adiabat_spinhalf_fidelity_law: null argument");
  return guarded([&] {
    const adiabat::spinhalf::SpinHalfParams p{omega0, omega, theta};
    p.validate();
    *value = adiabat::spinhalf::fidelity_law(p, t);
    return ADIABAT_OK;
  });
}

}  // extern "C"
