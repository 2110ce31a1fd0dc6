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


#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdra/config.hpp"

namespace fdra {

// One (seed, sweep value, scheme) outcome. In hetnet mode sum_rate is the
// femto sum-rate and dl_rate / ul_rate are the macro-cell rates. sum_rate is
// always the weighted objective of the scheme.
struct ResultRow {
  std::string scenario_id;
  std::uint64_t seed = 0;
  double sweep_value = 0.0;  // NaN when the run has no sweep
  std::string scheme;
  double sum_rate = 0.0;
  double dl_rate = 0.0;
  double ul_rate = 0.0;
  int iterations = 0;  // -1 on failure
  double wall_time_ms = 0.0;
  bool ok = true;
  std::string error;
};

struct RowKey {
  std::uint64_t seed = 0;
  double sweep_value = 0.0;
  std::string scheme;
};

struct HetTraceRecord {
  RowKey key;
  HetTraceRow row;
};

struct DcTraceRecord {
  RowKey key;
  int outer_iter = 0;
  int dc_iter = 0;
  double merit = 0.0;
};

struct CdfPoint {
  double beta_db = 0.0;
  double cdf = 0.0;
};

struct RunOutput {
  ScenarioConfig config;
  std::vector<ResultRow> rows;
  std::vector<HetTraceRecord> hetnet_trace;
  std::vector<DcTraceRecord> dc_trace;  // filled when config.dc_trace is set
  std::vector<CdfPoint> cdf;            // threshold_cdf mode only
  std::vector<double> thresholds_db;    // threshold_cdf mode, sorted
  int failures() const;
};

// Values the sweep variable takes; a single NaN when there is no sweep.
std::vector<double> sweep_points(const ScenarioConfig& cfg);
// Copy of `cfg` with the sweep variable set to `value`.
ScenarioConfig at_sweep_point(const ScenarioConfig& cfg, double value);

// Validates `cfg`, then runs every (seed, sweep value, scheme) combination.
// Per-row solver failures are recorded in the row and the run continues.
RunOutput run_scenario(const ScenarioConfig& cfg);

inline constexpr const char* kCsvHeader =
    "scenario_id,seed,sweep_value,scheme,sum_rate,dl_rate,ul_rate,iterations,wall_time_ms";

std::string format_csv(const std::vector<ResultRow>& rows);
// Throws IoError naming the path.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
// Inverse of format_csv; throws Error on malformed input.
std::vector<ResultRow> parse_csv(const std::string& text);

std::string format_cdf_csv(const std::vector<CdfPoint>& points);
std::string format_hetnet_trace_csv(const std::string& scenario_id,
                                    const std::vector<HetTraceRecord>& trace);
std::string format_dc_trace_csv(const std::string& scenario_id,
                                const std::vector<DcTraceRecord>& trace);
std::string format_metadata(const RunOutput& run);

// Writes the main CSV at `path` plus the sidecars next to it:
//   <path>.meta.json, <path>.hetnet_trace.csv (hetnet mode),
//   <path>.dc_trace.csv (when dc tracing is on).
// Returns every file written.
std::vector<std::string> write_outputs(const RunOutput& run, const std::string& path);

const char* library_version();
const char* library_revision();

}  // namespace fdra
