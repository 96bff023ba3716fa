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

// adiabat-cli: simulate | verify | sweep, each driven by a config file.
// Exit codes: 0 success, 1 config/usage, 2 numerical failure, 3 verification failure.

#include "adiabat/adiabat.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace {

struct Options {
  std::string config;
  std::vector<std::string> overrides;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Options& opts) {
  cmd->add_option("--config", opts.config, "Run configuration (TOML subset)")->required();
  cmd->add_option("--override", opts.overrides, "section.key=value, repeatable")
      ->allow_extra_args(false);
  cmd->add_flag("--quiet", opts.quiet, "Do not print the summary on standard output");
}

int run(adiabat_command command, const Options& opts) {
  adiabat_config* raw_cfg = nullptr;
  adiabat_status st = adiabat_config_load(opts.config.c_str(), &raw_cfg);
  std::unique_ptr<adiabat_config, decltype(&adiabat_config_free)> cfg(raw_cfg, adiabat_config_free);
  if (st != ADIABAT_OK) {
    std::fprintf(stderr, "adiabat-cli: %s\n", adiabat_last_error());
    return st;
  }
  for (const auto& o : opts.overrides) {
    st = adiabat_config_override(cfg.get(), o.c_str());
    if (st != ADIABAT_OK) {
      std::fprintf(stderr, "adiabat-cli: %s\n", adiabat_last_error());
      return st;
    }
  }

  adiabat_result* raw_result = nullptr;
  st = adiabat_run(cfg.get(), command, &raw_result);
  std::unique_ptr<adiabat_result, decltype(&adiabat_result_free)> result(raw_result,
                                                                         adiabat_result_free);
  if (result && !opts.quiet) std::fputs(adiabat_result_summary(result.get()), stdout);
  if (st != ADIABAT_OK) std::fprintf(stderr, "adiabat-cli: %s\n", adiabat_last_error());
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic-condition audits for time-dependent quantum systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", adiabat_version());

  Options simulate_opts, verify_opts, sweep_opts;
  add_common(app.add_subcommand("simulate", "Propagate, audit and write fidelity curves"),
             simulate_opts);
  add_common(app.add_subcommand("verify", "Check the dual-system identities"), verify_opts);
  add_common(app.add_subcommand("sweep", "Repeat the dual audit over a parameter list"),
             sweep_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ADIABAT_ERR_USAGE;
  }

  if (app.got_subcommand("simulate")) return run(ADIABAT_SIMULATE, simulate_opts);
  if (app.got_subcommand("verify")) return run(ADIABAT_VERIFY, verify_opts);
  return run(ADIABAT_SWEEP, sweep_opts);
}
