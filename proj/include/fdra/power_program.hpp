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

struct InterferenceTerm {
  int var = 0;
  double gain = 0.0;
};

// weight * log2(1 + signal_gain * p[signal_var] / (noise + sum gain * p[var]))
struct RateLink {
  double weight = 1.0;
  double noise = 1.0;
  int signal_var = 0;
  double signal_gain = 0.0;
  std::vector<InterferenceTerm> interference;
  // -1: part of the objective. c >= 0: counts towards rate_targets[c].
  int constraint = -1;
};

struct BudgetGroup {
  std::vector<int> vars;
  double budget = 0.0;
};

// Maximize the objective links subject to one budget per group, p >= 0 and
// sum of constrained link rates >= target. Every variable belongs to exactly
// one group.
struct PowerProgram {
  int num_vars = 0;
  std::vector<RateLink> links;
  std::vector<BudgetGroup> groups;
  std::vector<double> rate_targets;
  // Price per bit/s/Hz of constraint violation in the merit function.
  double violation_penalty = 1e3;

  void validate() const;
};

double program_objective(const PowerProgram& prog, const std::vector<double>& p);
std::vector<double> constraint_rates(const PowerProgram& prog,
                                     const std::vector<double>& p);
// Objective minus violation_penalty times the total rate shortfall.
double merit(const PowerProgram& prog, const std::vector<double>& p);
bool is_feasible(const PowerProgram& prog, const std::vector<double>& p,
                 double tol = 1e-10);

// Concave split of the objective: objective = f - h.
double eval_f(const PowerProgram& prog, const std::vector<double>& p);
double eval_h(const PowerProgram& prog, const std::vector<double>& p);
std::vector<double> grad_h(const PowerProgram& prog, const std::vector<double>& p);

struct SurrogateOptions {
  double gap_tolerance = 1e-10;  // relative bound on the barrier gap
  double t_initial = 1.0;
  double t_growth = 20.0;
  int max_newton_steps = 2000;
};

struct SurrogateResult {
  std::vector<double> p;
  double value = 0.0;   // surrogate merit at p
  double gap = 0.0;     // final barrier gap bound
  int newton_steps = 0;
};

// Surrogate merit around p_t: f - linearized h for the objective and every
// constraint, shortfall priced at violation_penalty.
double surrogate_value(const PowerProgram& prog, const std::vector<double>& p_t,
                       const std::vector<double>& p);

// Maximizes the surrogate around p_t over the feasible set. Throws
// SolverError when the gap target is missed within the step cap.
SurrogateResult solve_surrogate(const PowerProgram& prog,
                                const std::vector<double>& p_t,
                                const SurrogateOptions& opt = {});

struct DcOptions {
  double relative_tolerance = 1e-4;
  int max_iterations = 50;
  SurrogateOptions surrogate;
};

struct DcReport {
  std::vector<double> objective_trace;  // merit, starting at p0
  int iterations = 0;
  bool converged = false;
  int newton_steps = 0;
};

struct DcResult {
  std::vector<double> p;
  DcReport report;
};

DcResult dc_optimize(const PowerProgram& prog, const std::vector<double>& p0,
                     const DcOptions& opt = {});

// Equal split of every group budget across its variables.
std::vector<double> equal_split_start(const PowerProgram& prog);

// Single-cell program for a fixed assignment; variable maps use -1 for
// absent directions.
struct CellProgram {
  PowerProgram program;
  std::vector<int> dl_var;
  std::vector<int> ul_var;
};

CellProgram build_cell_program(const CellSetup& setup, const FixedAssignment& a);

PowerVector to_power_vector(const CellProgram& cp, const std::vector<double>& p);
std::vector<double> from_power_vector(const CellProgram& cp, const PowerVector& pv);

}  // namespace fdra
