/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The fdra Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "fdra/fdra.h"

namespace {

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kIo = 3, kSolver = 4 };

int exit_code(fdra_status s) {
  switch (s) {
    case FDRA_OK: return kOk;
    case FDRA_ERR_CONFIG:
    case FDRA_ERR_UNKNOWN_PRESET: return kConfig;
    case FDRA_ERR_IO: return kIo;
    case FDRA_ERR_SOLVER: return kSolver;
    default: return kOther;
  }
}

int report(fdra_status s, const char* what) {
  std::fprintf(stderr, "fdra: %s: %s\n", what, fdra_last_error());
  return exit_code(s);
}

struct ConfigHandle {
  fdra_config* p = nullptr;
  ~ConfigHandle() { fdra_config_free(p); }
};

struct RunHandle {
  fdra_run* p = nullptr;
  ~RunHandle() { fdra_run_free(p); }
};

std::string resolve_output(const std::string& path) {
  const char* dir = std::getenv("FDRA_OUTPUT_DIR");
  std::filesystem::path p(path);
  if (dir && *dir && p.is_relative()) p = std::filesystem::path(dir) / p;
  return p.string();
}

int print_ini(const fdra_config* cfg) {
  size_t needed = 0;
  fdra_status s = fdra_config_to_ini(cfg, nullptr, 0, &needed);
  if (s != FDRA_OK) return report(s, "serialize");
  std::string buf(needed, '\0');
  s = fdra_config_to_ini(cfg, buf.data(), buf.size(), &needed);
  if (s != FDRA_OK) return report(s, "serialize");
  std::fputs(buf.c_str(), stdout);
  return kOk;
}

struct RunArgs {
  std::string config;
  std::vector<std::string> sets;
  std::string output;
  std::string seeds;
  std::string sweep_variable;
  std::string sweep_values;
  int threads = -1;
  bool quiet = false;
};

int cmd_run(const RunArgs& a) {
  ConfigHandle cfg;
  fdra_status s = fdra_config_load(a.config.c_str(), &cfg.p);
  if (s != FDRA_OK) return report(s, a.config.c_str());

  std::vector<std::pair<std::string, std::string>> overrides;
  for (const auto& kv : a.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::fprintf(stderr, "fdra: --set expects section.key=value, got '%s'\n", kv.c_str());
      return kConfig;
    }
    overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!a.seeds.empty()) overrides.emplace_back("run.seeds", a.seeds);
  if (!a.sweep_variable.empty()) overrides.emplace_back("run.sweep_variable", a.sweep_variable);
  if (!a.sweep_values.empty()) overrides.emplace_back("run.sweep_values", a.sweep_values);
  if (a.threads >= 0) overrides.emplace_back("run.threads", std::to_string(a.threads));
  if (!a.output.empty()) overrides.emplace_back("scenario.output", a.output);
  for (const auto& [k, v] : overrides) {
    s = fdra_config_set(cfg.p, k.c_str(), v.c_str());
    if (s != FDRA_OK) return report(s, "override");
  }
  s = fdra_config_validate(cfg.p);
  if (s != FDRA_OK) return report(s, "invalid configuration");

  RunHandle run;
  s = fdra_run_scenario(cfg.p, &run.p);
  if (s != FDRA_OK) return report(s, "run failed");

  const std::string out = resolve_output(fdra_config_output(cfg.p));
  const auto parent = std::filesystem::path(out).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  s = fdra_run_write(run.p, out.c_str());
  if (s != FDRA_OK) return report(s, "write failed");

  const size_t rows = fdra_run_row_count(run.p);
  const size_t failed = fdra_run_failure_count(run.p);
  if (!a.quiet) {
    if (fdra_run_cdf_count(run.p) > 0)
      std::printf("wrote %zu CDF points to %s\n", fdra_run_cdf_count(run.p), out.c_str());
    else
      std::printf("wrote %zu rows to %s (%zu failed)\n", rows, out.c_str(), failed);
  }
  if (failed > 0) {
    std::fprintf(stderr, "fdra: %zu of %zu rows failed; see %s.meta.json\n", failed, rows,
                 out.c_str());
    if (failed == rows) return kSolver;
  }
  return kOk;
}

int cmd_preset(const std::string& name, bool desk) {
  ConfigHandle cfg;
  const fdra_status s = fdra_config_preset(name.c_str(), desk ? 1 : 0, &cfg.p);
  if (s != FDRA_OK) return report(s, "preset");
  return print_ini(cfg.p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-channel assignment and power allocation experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fdra_version()) + " (" + fdra_git_revision() + ")");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a scenario file and write CSV results");
  run->add_option("config", run_args.config, "Scenario INI file")->required();
  run->add_option("--set", run_args.sets, "Override a setting, section.key=value (repeatable)");
  run->add_option("-o,--output", run_args.output,
                  "Output CSV path; relative paths resolve under $FDRA_OUTPUT_DIR");
  run->add_option("--seeds", run_args.seeds, "Seed list, e.g. 1-20 or 1,4,9");
  run->add_option("--sweep-variable", run_args.sweep_variable,
                  "none, beta_db, fd_fraction, r_min or user_count");
  run->add_option("--sweep-values", run_args.sweep_values, "Comma-separated grid");
  run->add_option("--threads", run_args.threads, "Worker threads (0: all cores)");
  run->add_flag("-q,--quiet", run_args.quiet, "Suppress the summary line");

  std::string preset_name;
  bool desk = false;
  bool list = false;
  auto* pre = app.add_subcommand("preset", "Print a built-in scenario as INI");
  pre->add_option("name", preset_name, "Preset name");
  pre->add_flag("--desk", desk, "Reduced size: 16 sub-channels, 10 users per cell");
  pre->add_flag("--list", list, "List preset names");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(run_args);
  if (list || preset_name.empty()) {
    for (size_t i = 0; i < fdra_preset_count(); ++i) std::printf("%s\n", fdra_preset_name(i));
    return preset_name.empty() && !list ? kConfig : kOk;
  }
  return cmd_preset(preset_name, desk);
}
