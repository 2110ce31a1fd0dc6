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

#include <vector>

#include "fdra/cell_problem.hpp"
#include "fdra/channel_model.hpp"
#include "fdra/power_program.hpp"
#include "fdra/rng.hpp"

namespace fdra {

// Macro cell 0 at the origin, femto BSs evenly spaced on a ring.
struct HetLayout {
  double macro_radius_m = 500.0;
  double femto_radius_m = 50.0;
  double femto_ring_m = 300.0;
  int macro_users = 8;
  std::vector<int> femto_users{2, 3, 4};
};

struct HetNetwork {
  Topology topology;
  std::vector<std::vector<int>> cell_users;  // global user indices per cell
  std::vector<double> bs_budget;             // per cell, mW
  std::vector<double> user_budget;           // per global user, mW
  std::vector<double> w, v;                  // per global user
  std::vector<Duplex> caps;                  // per global user
  double beta = 0.0;

  int num_cells() const { return static_cast<int>(cell_users.size()); }
  void validate() const;
};

struct HetPowers {
  double macro_bs_mw = 0.0;
  double femto_bs_mw = 0.0;
  double ue_mw = 0.0;
};

Topology hetnet_topology(const HetLayout& layout, Rng& rng);

// In each cell the first round(fd_fraction * K_m) users are full duplex.
HetNetwork build_hetnet(const HetLayout& layout, const HetPowers& powers,
                        double fd_fraction, double beta, Rng& rng);

struct HetConfig {
  double r_mind = 0.0;
  double r_minu = 0.0;
  int outer_iterations = 20;
  double tolerance = 1e-3;
  DcOptions dc;
};

// Per-cell assignments and powers, indexed by cell.
struct HetAllocation {
  std::vector<FixedAssignment> assign;
  std::vector<PowerVector> powers;
};

struct InterferenceMap {
  std::vector<std::vector<double>> dic_user;  // [global user][n]
  std::vector<std::vector<double>> uic_user;  // [global user][n]
  std::vector<std::vector<double>> dic_bs;    // [cell][n]
  std::vector<std::vector<double>> uic_bs;    // [cell][n]
};

InterferenceMap compute_interference(const HetNetwork& net, const ChannelRealization& ch,
                                     const HetAllocation& alloc);

// Rates per cell with foreign-cell interference added to every receiver.
std::vector<RateBreakdown> cell_rates(const HetNetwork& net, const ChannelRealization& ch,
                                      const HetAllocation& alloc,
                                      const InterferenceMap& interference);

// Cell view with the interference map folded into the noise terms.
CellSetup het_cell_setup(const HetNetwork& net, const ChannelRealization& ch, int cell,
                         const InterferenceMap* interference);

struct HetTraceRow {
  int outer_iter = 0;
  double femto_sum_rate = 0.0;
  double macro_dl_rate = 0.0;
  double macro_ul_rate = 0.0;
};

struct HetProgram {
  PowerProgram program;
  std::vector<std::vector<int>> dl_var;  // [cell][n]
  std::vector<std::vector<int>> ul_var;  // [cell][n]
};

// Joint power program over all cells: femto links form the objective, macro
// downlink and uplink links feed rate targets 0 and 1.
HetProgram build_het_program(const HetNetwork& net, const ChannelRealization& ch,
                             const std::vector<FixedAssignment>& assign,
                             const HetConfig& cfg);

struct HetResult {
  HetAllocation alloc;
  std::vector<HetTraceRow> trace;
  std::vector<DcReport> power_reports;
  double femto_sum_rate = 0.0;
  double macro_dl_rate = 0.0;
  double macro_ul_rate = 0.0;
  int outer_iterations = 0;
  int best_iteration = 0;
  bool converged = false;
  bool feasible = false;
};

// Alternates scheduling with frozen interference and the joint power stage.
// Returns the iterate with the best merit.
HetResult alternating_optimize(const HetNetwork& net, const ChannelRealization& ch,
                               const HetConfig& cfg);

}  // namespace fdra
