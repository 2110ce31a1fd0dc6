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


#include "fdra/fdra.h"

#include <cstring>
#include <new>
#include <string>

#include "fdra/config.hpp"
#include "fdra/errors.hpp"
#include "fdra/experiments.hpp"
#include "fdra/pair_optimizer.hpp"
#include "fdra/threshold.hpp"

struct fdra_config {
  fdra::ScenarioConfig cfg;
};

struct fdra_run {
  fdra::RunOutput out;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_field;

fdra_status fail(fdra_status s, const std::string& msg, const std::string& field = "") {
  g_error = msg;
  g_field = field;
  return s;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
fdra_status guarded(F&& body) {
  g_error.clear();
  g_field.clear();
  try {
    body();
    return FDRA_OK;
  } catch (const fdra::ConfigError& e) {
    return fail(FDRA_ERR_CONFIG, e.what(), e.field());
  } catch (const fdra::UnknownPresetError& e) {
    return fail(FDRA_ERR_UNKNOWN_PRESET, e.what());
  } catch (const fdra::IoError& e) {
    return fail(FDRA_ERR_IO, e.what());
  } catch (const fdra::SolverError& e) {
    return fail(FDRA_ERR_SOLVER, e.what());
  } catch (const fdra::Error& e) {
    return fail(FDRA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FDRA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FDRA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FDRA_ERR_INTERNAL, "unknown error");
  }
}

fdra_status null_arg(const char* name) {
  return fail(FDRA_ERR_INVALID_ARGUMENT, std::string(name) + " must not be null");
}

}  // namespace

extern "C" {

const char* fdra_version(void) { return fdra::library_version(); }
const char* fdra_git_revision(void) { return fdra::library_revision(); }

const char* fdra_status_string(fdra_status status) {
  switch (status) {
    case FDRA_OK: return "ok";
    case FDRA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FDRA_ERR_CONFIG: return "configuration error";
    case FDRA_ERR_IO: return "i/o error";
    case FDRA_ERR_SOLVER: return "solver error";
    case FDRA_ERR_UNKNOWN_PRESET: return "unknown preset";
    case FDRA_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case FDRA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fdra_last_error(void) { return g_error.c_str(); }
const char* fdra_last_error_field(void) { return g_field.c_str(); }

fdra_status fdra_config_load(const char* path, fdra_config** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new fdra_config{fdra::load_config(path)}; });
}

fdra_status fdra_config_parse(const char* text, fdra_config** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new fdra_config{fdra::parse_config(text)}; });
}

fdra_status fdra_config_preset(const char* name, int desk_scale, fdra_config** out) {
  if (!name) return null_arg("name");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    fdra::ScenarioConfig c = fdra::preset(name);
    if (desk_scale) c = fdra::desk_scale(c);
    *out = new fdra_config{c};
  });
}

size_t fdra_preset_count(void) { return fdra::preset_names().size(); }

const char* fdra_preset_name(size_t index) {
  static const std::vector<std::string> names = fdra::preset_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

fdra_status fdra_config_set(fdra_config* cfg, const char* key, const char* value) {
  if (!cfg) return null_arg("cfg");
  if (!key) return null_arg("key");
  if (!value) return null_arg("value");
  return guarded([&] { fdra::apply_setting(cfg->cfg, key, value); });
}

fdra_status fdra_config_validate(const fdra_config* cfg) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] { cfg->cfg.validate(); });
}

fdra_status fdra_config_to_ini(const fdra_config* cfg, char* buf, size_t capacity,
                               size_t* needed) {
  if (!cfg) return null_arg("cfg");
  std::string text;
  const fdra_status s = guarded([&] { text = fdra::to_ini(cfg->cfg); });
  if (s != FDRA_OK) return s;
  if (needed) *needed = text.size() + 1;
  if (!buf) return capacity == 0 ? FDRA_OK : null_arg("buf");
  if (capacity < text.size() + 1)
    return fail(FDRA_ERR_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(capacity) +
                                               " bytes, need " + std::to_string(text.size() + 1));
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return FDRA_OK;
}

const char* fdra_config_output(const fdra_config* cfg) {
  return cfg ? cfg->cfg.output.c_str() : nullptr;
}

void fdra_config_free(fdra_config* cfg) { delete cfg; }

fdra_status fdra_run_scenario(const fdra_config* cfg, fdra_run** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new fdra_run{fdra::run_scenario(cfg->cfg)}; });
}

size_t fdra_run_row_count(const fdra_run* run) { return run ? run->out.rows.size() : 0; }

size_t fdra_run_failure_count(const fdra_run* run) {
  return run ? static_cast<size_t>(run->out.failures()) : 0;
}

fdra_status fdra_run_get_row(const fdra_run* run, size_t index, fdra_result_row* out) {
  if (!run) return null_arg("run");
  if (!out) return null_arg("out");
  if (index >= run->out.rows.size())
    return fail(FDRA_ERR_INVALID_ARGUMENT, "row index out of range");
  const fdra::ResultRow& r = run->out.rows[index];
  fdra_result_row row{};
  row.seed = r.seed;
  row.sweep_value = r.sweep_value;
  std::strncpy(row.scheme, r.scheme.c_str(), sizeof row.scheme - 1);
  row.sum_rate = r.sum_rate;
  row.dl_rate = r.dl_rate;
  row.ul_rate = r.ul_rate;
  row.iterations = r.iterations;
  row.wall_time_ms = r.wall_time_ms;
  row.ok = r.ok ? 1 : 0;
  *out = row;
  return FDRA_OK;
}

size_t fdra_run_cdf_count(const fdra_run* run) { return run ? run->out.cdf.size() : 0; }

fdra_status fdra_run_get_cdf(const fdra_run* run, size_t index, double* beta_db,
                             double* cdf_value) {
  if (!run) return null_arg("run");
  if (index >= run->out.cdf.size())
    return fail(FDRA_ERR_INVALID_ARGUMENT, "cdf index out of range");
  if (beta_db) *beta_db = run->out.cdf[index].beta_db;
  if (cdf_value) *cdf_value = run->out.cdf[index].cdf;
  return FDRA_OK;
}

fdra_status fdra_run_write(const fdra_run* run, const char* path) {
  if (!run) return null_arg("run");
  if (!path) return null_arg("path");
  return guarded([&] { fdra::write_outputs(run->out, path); });
}

void fdra_run_free(fdra_run* run) { delete run; }

fdra_status fdra_solve_pair(const fdra_pair_problem* problem, fdra_pair_solution* out) {
  if (!problem) return null_arg("problem");
  if (!out) return null_arg("out");
  if (problem->mode < FDRA_PAIR_FULL || problem->mode > FDRA_PAIR_EITHER_DIRECTION)
    return fail(FDRA_ERR_INVALID_ARGUMENT, "unknown pair mode");
  return guarded([&] {
    fdra::PairProblem pr;
    pr.w = problem->w;
    pr.v = problem->v;
    pr.g_d = problem->g_d;
    pr.g_u = problem->g_u;
    pr.inter = problem->inter;
    pr.beta = problem->beta;
    pr.n_d = problem->n_d;
    pr.n_b = problem->n_b;
    pr.pmax_d = problem->pmax_d;
    pr.pmax_u = problem->pmax_u;
    pr.mode = static_cast<fdra::PairMode>(problem->mode);
    pr.validate();
    const fdra::PairSolution s = fdra::solve_pair(pr);
    out->p_d = s.p_d;
    out->p_u = s.p_u;
    out->value = s.value;
    out->candidate = static_cast<int>(s.tag);
  });
}

fdra_status fdra_threshold(const fdra_symmetric_scenario* scenario, fdra_threshold_result* out) {
  if (!scenario) return null_arg("scenario");
  if (!out) return null_arg("out");
  return guarded([&] {
    fdra::SymmetricScenario s;
    s.p_bs = scenario->p_bs;
    s.p_user = scenario->p_user;
    s.n0 = scenario->n0;
    s.g_max = scenario->g_max;
    s.g_a = scenario->g_a;
    s.g_b = scenario->g_b;
    s.g_ab = scenario->g_ab;
    const fdra::ThresholdResult r = fdra::threshold(s);
    out->beta1 = r.beta1;
    out->beta2 = r.beta2;
    out->beta3 = r.beta3;
    out->beta_threshold = r.beta_threshold;
  });
}

}  // extern "C"
