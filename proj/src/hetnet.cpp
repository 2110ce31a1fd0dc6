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

#include "fdra/hetnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fdra/errors.hpp"
#include "fdra/scheduler.hpp"

namespace fdra {

void HetNetwork::validate() const {
  if (cell_users.empty()) throw Error("hetnet: macro cell missing");
  if (static_cast<int>(bs_budget.size()) != num_cells())
    throw Error("hetnet: one BS budget per cell required");
  const auto users = static_cast<std::size_t>(topology.num_users());
  if (user_budget.size() != users || w.size() != users || v.size() != users ||
      caps.size() != users)
    throw Error("hetnet: per-user vectors must cover every user");
  for (double b : bs_budget)
    if (!(b >= 0)) throw Error("hetnet: budgets must be >= 0");
  for (double b : user_budget)
    if (!(b >= 0)) throw Error("hetnet: budgets must be >= 0");
  if (!(beta >= 0 && beta <= 1)) throw Error("hetnet: beta outside [0,1]");
}

Topology hetnet_topology(const HetLayout& layout, Rng& rng) {
  Topology t;
  t.bs_positions.push_back({0.0, 0.0});
  const int femtos = static_cast<int>(layout.femto_users.size());
  for (int f = 0; f < femtos; ++f) {
    double angle = 2.0 * std::numbers::pi * f / femtos;
    t.bs_positions.push_back(
        {layout.femto_ring_m * std::cos(angle), layout.femto_ring_m * std::sin(angle)});
  }
  t.user_positions.push_back(
      place_uniform_disk(rng, t.bs_positions[0], layout.macro_radius_m, layout.macro_users));
  t.user_cell.assign(layout.macro_users, 0);
  for (int f = 0; f < femtos; ++f) {
    t.user_positions.push_back(place_uniform_disk(rng, t.bs_positions[f + 1],
                                                  layout.femto_radius_m,
                                                  layout.femto_users[f]));
    t.user_cell.insert(t.user_cell.end(), layout.femto_users[f], f + 1);
  }
  return t;
}

HetNetwork build_hetnet(const HetLayout& layout, const HetPowers& powers,
                        double fd_fraction, double beta, Rng& rng) {
  HetNetwork net;
  net.topology = hetnet_topology(layout, rng);
  net.beta = beta;
  for (int c = 0; c < net.topology.num_cells(); ++c) {
    net.cell_users.push_back(net.topology.users_of(c));
    net.bs_budget.push_back(c == 0 ? powers.macro_bs_mw : powers.femto_bs_mw);
  }
  const int users = net.topology.num_users();
  net.user_budget.assign(users, powers.ue_mw);
  net.w.assign(users, 1.0);
  net.v.assign(users, 1.0);
  net.caps.assign(users, Duplex::HalfDuplex);
  for (const auto& members : net.cell_users) {
    const int fd = static_cast<int>(std::lround(fd_fraction * members.size()));
    for (int i = 0; i < fd; ++i) net.caps[members[i]] = Duplex::FullDuplex;
  }
  return net;
}

InterferenceMap compute_interference(const HetNetwork& net, const ChannelRealization& ch,
                                     const HetAllocation& alloc) {
  const int cells = net.num_cells(), N = ch.num_subchannels();
  const int users = net.topology.num_users();
  InterferenceMap im;
  im.dic_user.assign(users, std::vector<double>(N, 0.0));
  im.uic_user.assign(users, std::vector<double>(N, 0.0));
  im.dic_bs.assign(cells, std::vector<double>(N, 0.0));
  im.uic_bs.assign(cells, std::vector<double>(N, 0.0));
  for (int src = 0; src < cells; ++src) {
    const FixedAssignment& a = alloc.assign[src];
    const PowerVector& p = alloc.powers[src];
    for (int n = 0; n < N; ++n) {
      const double pd = a.dl_user[n] >= 0 ? p.dl[n] : 0.0;
      const int j = a.ul_user[n] >= 0 ? net.cell_users[src][a.ul_user[n]] : -1;
      const double pu = j >= 0 ? p.ul[n] : 0.0;
      for (int m = 0; m < cells; ++m) {
        if (m == src) continue;
        im.dic_bs[m][n] += ch.g_bs_bs(m, src, n) * pd;
        if (j >= 0) im.uic_bs[m][n] += ch.g_bs_user(m, j, n) * pu;
        for (int u : net.cell_users[m]) {
          im.dic_user[u][n] += ch.g_bs_user(src, u, n) * pd;
          if (j >= 0) im.uic_user[u][n] += ch.g_user_user(u, j, n) * pu;
        }
      }
    }
  }
  return im;
}

CellSetup het_cell_setup(const HetNetwork& net, const ChannelRealization& ch, int cell,
                         const InterferenceMap* interference) {
  const auto& members = net.cell_users[cell];
  CellSetup s;
  s.ch = cell_channel(ch, cell, members);
  s.bs = BsDuplex::FullDuplex;
  s.beta = net.beta;
  s.p_bs = net.bs_budget[cell];
  for (int u : members) {
    s.caps.push_back(net.caps[u]);
    s.w.push_back(net.w[u]);
    s.v.push_back(net.v[u]);
    s.p_user.push_back(net.user_budget[u]);
  }
  if (interference) {
    const int N = s.N();
    s.ch.extra_user.assign(static_cast<std::size_t>(s.K()) * N, 0.0);
    s.ch.extra_bs.assign(N, 0.0);
    for (int k = 0; k < s.K(); ++k)
      for (int n = 0; n < N; ++n)
        s.ch.extra_user[static_cast<std::size_t>(k) * N + n] =
            interference->dic_user[members[k]][n] + interference->uic_user[members[k]][n];
    for (int n = 0; n < N; ++n)
      s.ch.extra_bs[n] = interference->dic_bs[cell][n] + interference->uic_bs[cell][n];
  }
  return s;
}

std::vector<RateBreakdown> cell_rates(const HetNetwork& net, const ChannelRealization& ch,
                                      const HetAllocation& alloc,
                                      const InterferenceMap& interference) {
  std::vector<RateBreakdown> out;
  for (int m = 0; m < net.num_cells(); ++m)
    out.push_back(evaluate_rates(het_cell_setup(net, ch, m, &interference),
                                 alloc.assign[m], alloc.powers[m]));
  return out;
}

HetProgram build_het_program(const HetNetwork& net, const ChannelRealization& ch,
                             const std::vector<FixedAssignment>& assign,
                             const HetConfig& cfg) {
  const int cells = net.num_cells(), N = ch.num_subchannels();
  HetProgram hp;
  PowerProgram& prog = hp.program;
  hp.dl_var.assign(cells, std::vector<int>(N, -1));
  hp.ul_var.assign(cells, std::vector<int>(N, -1));
  std::vector<int> ul_global(static_cast<std::size_t>(cells) * N, -1);
  std::vector<BudgetGroup> user_groups(net.topology.num_users());
  for (int u = 0; u < net.topology.num_users(); ++u)
    user_groups[u].budget = net.user_budget[u];
  for (int m = 0; m < cells; ++m) {
    BudgetGroup bs{{}, net.bs_budget[m]};
    for (int n = 0; n < N; ++n) {
      if (assign[m].dl_user[n] >= 0) {
        hp.dl_var[m][n] = prog.num_vars++;
        bs.vars.push_back(hp.dl_var[m][n]);
      }
      if (assign[m].ul_user[n] >= 0) {
        const int u = net.cell_users[m][assign[m].ul_user[n]];
        hp.ul_var[m][n] = prog.num_vars++;
        ul_global[static_cast<std::size_t>(m) * N + n] = u;
        user_groups[u].vars.push_back(hp.ul_var[m][n]);
      }
    }
    if (!bs.vars.empty()) prog.groups.push_back(std::move(bs));
  }
  for (auto& g : user_groups)
    if (!g.vars.empty()) prog.groups.push_back(std::move(g));
  prog.rate_targets = {cfg.r_mind, cfg.r_minu};

  for (int m = 0; m < cells; ++m) {
    for (int n = 0; n < N; ++n) {
      const int kl = assign[m].dl_user[n], jl = assign[m].ul_user[n];
      auto add_foreign = [&](RateLink& l, bool at_bs, int victim) {
        for (int o = 0; o < cells; ++o) {
          if (o == m) continue;
          if (hp.dl_var[o][n] >= 0)
            l.interference.push_back(
                {hp.dl_var[o][n], at_bs ? ch.g_bs_bs(m, o, n) : ch.g_bs_user(o, victim, n)});
          const int j = ul_global[static_cast<std::size_t>(o) * N + n];
          if (j >= 0)
            l.interference.push_back(
                {hp.ul_var[o][n], at_bs ? ch.g_bs_user(m, j, n) : ch.g_user_user(victim, j, n)});
        }
      };
      if (kl >= 0) {
        const int k = net.cell_users[m][kl];
        RateLink l{net.w[k], ch.noise_user[k], hp.dl_var[m][n], ch.g_bs_user(m, k, n),
                   {}, m == 0 ? 0 : -1};
        if (jl >= 0) {
          const int j = net.cell_users[m][jl];
          l.interference.push_back(
              {hp.ul_var[m][n], k == j ? net.beta : ch.g_user_user(k, j, n)});
        }
        add_foreign(l, false, k);
        prog.links.push_back(std::move(l));
      }
      if (jl >= 0) {
        const int j = net.cell_users[m][jl];
        RateLink l{net.v[j], ch.noise_bs[m], hp.ul_var[m][n], ch.g_bs_user(m, j, n),
                   {}, m == 0 ? 1 : -1};
        if (kl >= 0) l.interference.push_back({hp.dl_var[m][n], net.beta});
        add_foreign(l, true, -1);
        prog.links.push_back(std::move(l));
      }
    }
  }
  return hp;
}

namespace {

HetAllocation unpack(const HetProgram& hp, const std::vector<FixedAssignment>& assign,
                     const std::vector<double>& p) {
  HetAllocation a;
  a.assign = assign;
  for (std::size_t m = 0; m < assign.size(); ++m) {
    const std::size_t N = hp.dl_var[m].size();
    PowerVector pv{std::vector<double>(N, 0.0), std::vector<double>(N, 0.0)};
    for (std::size_t n = 0; n < N; ++n) {
      if (hp.dl_var[m][n] >= 0) pv.dl[n] = p[hp.dl_var[m][n]];
      if (hp.ul_var[m][n] >= 0) pv.ul[n] = p[hp.ul_var[m][n]];
    }
    a.powers.push_back(std::move(pv));
  }
  return a;
}

}  // namespace

HetResult alternating_optimize(const HetNetwork& net, const ChannelRealization& ch,
                               const HetConfig& cfg) {
  net.validate();
  if (!(cfg.r_mind >= 0) || !(cfg.r_minu >= 0))
    throw Error("hetnet: rate targets must be >= 0");
  if (cfg.outer_iterations < 1) throw Error("hetnet: outer_iterations must be >= 1");
  const int cells = net.num_cells();
  HetResult res;
  double best_merit = -std::numeric_limits<double>::infinity();
  double previous_femto = 0.0;
  InterferenceMap frozen;
  std::vector<std::vector<FixedAssignment>> seen;
  for (int t = 0; t < cfg.outer_iterations; ++t) {
    std::vector<FixedAssignment> assign;
    for (int m = 0; m < cells; ++m) {
      CellSetup s = het_cell_setup(net, ch, m, t == 0 ? nullptr : &frozen);
      AssignmentState st = m == 0 ? allocate_rate_constrained(s, {cfg.r_mind, cfg.r_minu})
                                  : allocate_single_cell(s);
      assign.push_back(std::move(st.assign));
    }
    // A repeated assignment repeats the whole deterministic cycle.
    if (std::find(seen.begin(), seen.end(), assign) != seen.end()) {
      res.converged = true;
      break;
    }
    seen.push_back(assign);
    HetProgram hp = build_het_program(net, ch, assign, cfg);
    DcResult dc = dc_optimize(hp.program, equal_split_start(hp.program), cfg.dc);
    HetAllocation alloc = unpack(hp, assign, dc.p);
    frozen = compute_interference(net, ch, alloc);

    const double femto = program_objective(hp.program, dc.p);
    const auto macro = constraint_rates(hp.program, dc.p);
    res.trace.push_back({t, femto, macro[0], macro[1]});
    res.power_reports.push_back(dc.report);
    res.outer_iterations = t + 1;
    const double m = merit(hp.program, dc.p);
    if (m > best_merit) {
      best_merit = m;
      res.alloc = std::move(alloc);
      res.femto_sum_rate = femto;
      res.macro_dl_rate = macro[0];
      res.macro_ul_rate = macro[1];
      res.best_iteration = t;
    }
    if (t > 0 &&
        std::abs(femto - previous_femto) <= cfg.tolerance * std::max(std::abs(previous_femto), 1e-12)) {
      res.converged = true;
      break;
    }
    previous_femto = femto;
  }
  constexpr double kSlack = 1e-3;
  res.feasible = res.macro_dl_rate >= cfg.r_mind - kSlack &&
                 res.macro_ul_rate >= cfg.r_minu - kSlack;
  return res;
}

}  // namespace fdra
