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

#include "fdra/power_program.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdra/errors.hpp"
#include "fdra/units.hpp"

namespace fdra {

namespace {

double interference(const RateLink& l, const std::vector<double>& p) {
  double s = l.noise;
  for (const auto& t : l.interference) s += t.gain * p[t.var];
  return s;
}

bool in_selection(const RateLink& l, int selector) { return l.constraint == selector; }

double f_part(const PowerProgram& prog, const std::vector<double>& p, int selector) {
  double f = 0.0;
  for (const auto& l : prog.links)
    if (in_selection(l, selector))
      f += l.weight * std::log2(interference(l, p) + l.signal_gain * p[l.signal_var]);
  return f;
}

double h_part(const PowerProgram& prog, const std::vector<double>& p, int selector) {
  double h = 0.0;
  for (const auto& l : prog.links)
    if (in_selection(l, selector)) h += l.weight * std::log2(interference(l, p));
  return h;
}

std::vector<double> grad_h_part(const PowerProgram& prog, const std::vector<double>& p,
                                int selector) {
  std::vector<double> g(prog.num_vars, 0.0);
  for (const auto& l : prog.links) {
    if (!in_selection(l, selector) || l.interference.empty()) continue;
    double scale = l.weight / (kLn2 * interference(l, p));
    for (const auto& t : l.interference) g[t.var] += scale * t.gain;
  }
  return g;
}

double rate_of(const RateLink& l, const std::vector<double>& p) {
  return l.weight * log2_1p(l.signal_gain * p[l.signal_var] / interference(l, p));
}

}  // namespace

void PowerProgram::validate() const {
  std::vector<int> owner(num_vars, -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (!(groups[g].budget >= 0) || !std::isfinite(groups[g].budget))
      throw Error("power program: budgets must be finite and >= 0");
    for (int v : groups[g].vars) {
      if (v < 0 || v >= num_vars) throw Error("power program: variable out of range");
      if (owner[v] != -1) throw Error("power program: variable in two groups");
      owner[v] = static_cast<int>(g);
    }
  }
  for (int v = 0; v < num_vars; ++v)
    if (owner[v] == -1) throw Error("power program: variable without a budget");
  for (const auto& l : links) {
    if (l.signal_var < 0 || l.signal_var >= num_vars)
      throw Error("power program: signal variable out of range");
    if (!(l.noise > 0) || !(l.weight >= 0) || !(l.signal_gain >= 0))
      throw Error("power program: invalid link constants");
    if (l.constraint >= static_cast<int>(rate_targets.size()))
      throw Error("power program: constraint index out of range");
    for (const auto& t : l.interference)
      if (t.var < 0 || t.var >= num_vars || !(t.gain >= 0))
        throw Error("power program: invalid interference term");
  }
  if (!(violation_penalty > 0)) throw Error("power program: penalty must be positive");
}

double program_objective(const PowerProgram& prog, const std::vector<double>& p) {
  double s = 0.0;
  for (const auto& l : prog.links)
    if (l.constraint < 0) s += rate_of(l, p);
  return s;
}

std::vector<double> constraint_rates(const PowerProgram& prog,
                                     const std::vector<double>& p) {
  std::vector<double> r(prog.rate_targets.size(), 0.0);
  for (const auto& l : prog.links)
    if (l.constraint >= 0) r[l.constraint] += rate_of(l, p);
  return r;
}

double merit(const PowerProgram& prog, const std::vector<double>& p) {
  double m = program_objective(prog, p);
  auto r = constraint_rates(prog, p);
  for (std::size_t c = 0; c < r.size(); ++c)
    m -= prog.violation_penalty * std::max(0.0, prog.rate_targets[c] - r[c]);
  return m;
}

bool is_feasible(const PowerProgram& prog, const std::vector<double>& p, double tol) {
  if (static_cast<int>(p.size()) != prog.num_vars) return false;
  for (double x : p)
    if (!(x >= -tol)) return false;
  for (const auto& g : prog.groups) {
    double s = 0.0;
    for (int v : g.vars) s += p[v];
    if (s > g.budget * (1 + tol) + tol) return false;
  }
  return true;
}

double eval_f(const PowerProgram& prog, const std::vector<double>& p) {
  return f_part(prog, p, -1);
}
double eval_h(const PowerProgram& prog, const std::vector<double>& p) {
  return h_part(prog, p, -1);
}
std::vector<double> grad_h(const PowerProgram& prog, const std::vector<double>& p) {
  return grad_h_part(prog, p, -1);
}

double surrogate_value(const PowerProgram& prog, const std::vector<double>& p_t,
                       const std::vector<double>& p) {
  auto linearized = [&](int sel) {
    auto g = grad_h_part(prog, p_t, sel);
    double v = f_part(prog, p, sel) - h_part(prog, p_t, sel);
    for (int i = 0; i < prog.num_vars; ++i) v -= g[i] * (p[i] - p_t[i]);
    return v;
  };
  double value = linearized(-1);
  for (std::size_t c = 0; c < prog.rate_targets.size(); ++c)
    value -= prog.violation_penalty *
             std::max(0.0, prog.rate_targets[c] - linearized(static_cast<int>(c)));
  return value;
}

std::vector<double> equal_split_start(const PowerProgram& prog) {
  std::vector<double> p(prog.num_vars, 0.0);
  for (const auto& g : prog.groups)
    for (int v : g.vars) p[v] = g.budget / static_cast<double>(g.vars.size());
  return p;
}

DcResult dc_optimize(const PowerProgram& prog, const std::vector<double>& p0,
                     const DcOptions& opt) {
  prog.validate();
  if (!is_feasible(prog, p0)) throw Error("dc_optimize: infeasible start point");
  DcResult res;
  res.p = p0;
  double current = merit(prog, p0);
  res.report.objective_trace.push_back(current);
  for (int it = 0; it < opt.max_iterations; ++it) {
    SurrogateResult s = solve_surrogate(prog, res.p, opt.surrogate);
    res.report.newton_steps += s.newton_steps;
    ++res.report.iterations;
    double next = merit(prog, s.p);
    // The surrogate minorizes the merit and touches it at p_t, so an exact
    // surrogate step never loses merit; a loss means solver inaccuracy.
    if (next >= current) {
      double gain = next - current;
      res.p = std::move(s.p);
      current = next;
      res.report.objective_trace.push_back(current);
      if (gain <= opt.relative_tolerance * std::max(std::abs(current), 1e-12)) {
        res.report.converged = true;
        break;
      }
    } else {
      res.report.objective_trace.push_back(current);
      res.report.converged = true;
      break;
    }
  }
  return res;
}

CellProgram build_cell_program(const CellSetup& s, const FixedAssignment& a) {
  s.validate();
  const int N = a.N();
  CellProgram cp;
  cp.dl_var.assign(N, -1);
  cp.ul_var.assign(N, -1);
  PowerProgram& prog = cp.program;
  BudgetGroup bs{{}, s.p_bs};
  std::vector<BudgetGroup> users(s.K());
  for (int j = 0; j < s.K(); ++j) users[j].budget = s.p_user[j];
  for (int n = 0; n < N; ++n) {
    if (a.dl_user[n] >= 0) {
      cp.dl_var[n] = prog.num_vars++;
      bs.vars.push_back(cp.dl_var[n]);
    }
    if (a.ul_user[n] >= 0) {
      cp.ul_var[n] = prog.num_vars++;
      users[a.ul_user[n]].vars.push_back(cp.ul_var[n]);
    }
  }
  if (!bs.vars.empty()) prog.groups.push_back(bs);
  for (auto& g : users)
    if (!g.vars.empty()) prog.groups.push_back(std::move(g));
  for (int n = 0; n < N; ++n) {
    const int k = a.dl_user[n], j = a.ul_user[n];
    if (k >= 0) {
      RateLink l{s.w[k], s.ch.n_user(k, n), cp.dl_var[n], s.ch.gain(k, n), {}, -1};
      if (j >= 0) l.interference.push_back({cp.ul_var[n], s.coupling(k, j, n)});
      prog.links.push_back(std::move(l));
    }
    if (j >= 0) {
      RateLink l{s.v[j], s.ch.n_bs(n), cp.ul_var[n], s.ch.gain(j, n), {}, -1};
      if (k >= 0) l.interference.push_back({cp.dl_var[n], s.beta});
      prog.links.push_back(std::move(l));
    }
  }
  return cp;
}

PowerVector to_power_vector(const CellProgram& cp, const std::vector<double>& p) {
  const std::size_t N = cp.dl_var.size();
  PowerVector pv{std::vector<double>(N, 0.0), std::vector<double>(N, 0.0)};
  for (std::size_t n = 0; n < N; ++n) {
    if (cp.dl_var[n] >= 0) pv.dl[n] = p[cp.dl_var[n]];
    if (cp.ul_var[n] >= 0) pv.ul[n] = p[cp.ul_var[n]];
  }
  return pv;
}

std::vector<double> from_power_vector(const CellProgram& cp, const PowerVector& pv) {
  std::vector<double> p(cp.program.num_vars, 0.0);
  for (std::size_t n = 0; n < cp.dl_var.size(); ++n) {
    if (cp.dl_var[n] >= 0) p[cp.dl_var[n]] = pv.dl[n];
    if (cp.ul_var[n] >= 0) p[cp.ul_var[n]] = pv.ul[n];
  }
  return p;
}

}  // namespace fdra
