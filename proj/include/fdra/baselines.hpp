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

#include <optional>
#include <string>
#include <vector>

#include "fdra/cell_problem.hpp"
#include "fdra/power_program.hpp"
#include "fdra/scheduler.hpp"

namespace fdra {

enum class SchemeKind { HD_D, HD_U, HHD, FD_HD, FD_FD, UpperBound };

const char* scheme_name(SchemeKind kind);
std::optional<SchemeKind> parse_scheme(const std::string& name);

// Maximizes sum w_n log2(1 + g_n p_n / noise_n) subject to sum p_n <= budget.
// Entries with zero gain or weight receive no power.
std::vector<double> multilevel_waterfill(const std::vector<double>& gains,
                                         const std::vector<double>& weights,
                                         const std::vector<double>& noise,
                                         double budget);

struct SchemeOutcome {
  RateBreakdown rates;
  FixedAssignment assign;
  PowerVector powers;
  int iterations = 0;   // power-stage iterations
  DcReport dc;          // filled by the full-duplex pipelines
};

// Greedy sub-channel allocation followed by the DC power stage on `setup` as
// given.
SchemeOutcome proposed_pipeline(const CellSetup& setup, const DcOptions& dc = {});

SchemeOutcome run_scheme(SchemeKind kind, const CellSetup& setup,
                         const DcOptions& dc = {});

}  // namespace fdra
