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

namespace fdra {

struct AssignmentState {
  FixedAssignment assign;
  // Pair-stage powers committed at allocation time.
  std::vector<double> dl_power_hint;
  std::vector<double> ul_power_hint;
  // Final running counters: BS downlink count and per-user uplink count,
  // both starting at one.
  int bs_counter = 1;
  std::vector<int> user_counter;
  long pair_evaluations = 0;
  // Rate-constrained allocation only.
  bool feasible = true;
  int phase1_subchannels = 0;
  double phase1_dl_estimate = 0.0;
  double phase1_ul_estimate = 0.0;
};

struct RateBudget {
  double remaining_dl = 0.0;
  double remaining_ul = 0.0;
};

// Sub-channel order by non-increasing best gain; ties keep index order.
std::vector<int> rank_subchannels(const CellChannel& ch);

AssignmentState allocate_single_cell(const CellSetup& setup);

AssignmentState allocate_rate_constrained(const CellSetup& setup, RateBudget budget);

// Constraint check on an assignment alone: at most one user per direction,
// no half-duplex user in both directions, one direction only for a
// non-full-duplex BS.
bool assignment_is_valid(const CellSetup& setup, const FixedAssignment& a);

}  // namespace fdra
