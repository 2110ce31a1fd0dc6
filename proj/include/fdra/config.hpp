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
#include <limits>
#include <string>
#include <vector>

#include "fdra/baselines.hpp"
#include "fdra/channel_model.hpp"
#include "fdra/hetnet.hpp"
#include "fdra/threshold.hpp"

namespace fdra {

enum class ScenarioMode { SingleCell, Hetnet, ThresholdCdf };
enum class SweepVariable { None, BetaDb, FdFraction, RMin, UserCount };

// Experiment description. Serialized as INI with sections scenario,
// environment, power, population, hetnet, threshold, dc and run; every key
// is addressed as "section.key".
struct ScenarioConfig {
  std::string id = "scenario";
  ScenarioMode mode = ScenarioMode::SingleCell;
  std::string output = "results.csv";
  bool dc_trace = false;

  RadioEnvironment env;

  double bs_power_dbm = 43.0;
  double ue_power_dbm = 23.0;
  double beta_db = -std::numeric_limits<double>::infinity();

  int users = 10;
  double fd_fraction = 1.0;
  std::vector<double> dl_weights;  // empty: all ones
  std::vector<double> ul_weights;

  HetLayout layout;
  double femto_bs_power_dbm = 24.0;
  double r_mind = 35.0;
  double r_minu = 35.0;
  int outer_iterations = 20;
  double hetnet_tolerance = 1e-3;

  int threshold_draws = 10000;
  PairPlacement pair_placement = PairPlacement::Realized;
  double cdf_beta_min_db = -160.0;
  double cdf_beta_max_db = -60.0;
  double cdf_beta_step_db = 0.5;

  double dc_tolerance = 1e-4;
  int dc_max_iterations = 50;

  std::vector<SchemeKind> schemes{SchemeKind::FD_FD};
  std::vector<std::uint64_t> seeds{1};
  SweepVariable sweep = SweepVariable::None;
  std::vector<double> sweep_values;
  int threads = 0;  // 0: hardware concurrency

  // Throws ConfigError naming the first offending field.
  void validate() const;
};

const char* mode_name(ScenarioMode m);
const char* sweep_name(SweepVariable v);

// Sets one "section.key" from its textual form; throws ConfigError.
void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value);

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string to_ini(const ScenarioConfig& cfg);

// Full-size presets: indoor_single, outdoor_single, hetnet_fig11.
ScenarioConfig preset(const std::string& name);
std::vector<std::string> preset_names();
// Reduced size used for routine runs: 16 sub-channels, 10 users per single
// cell, macro rate targets scaled with the sub-channel count.
ScenarioConfig desk_scale(ScenarioConfig cfg);

}  // namespace fdra
