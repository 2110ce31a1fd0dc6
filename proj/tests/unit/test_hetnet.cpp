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


#include <doctest.h>

#include <cmath>
#include <random>

#include "fdra/baselines.hpp"
#include "fdra/hetnet.hpp"
#include "fdra/units.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fdra;

namespace {

struct Net {
  HetNetwork net;
  ChannelRealization ch;
};

Net small_network(std::uint64_t seed, int N = 8) {
  HetLayout layout;
  layout.macro_users = 4;
  layout.femto_users = {2, 3};
  const HetPowers powers{dbm_to_mw(43), dbm_to_mw(24), dbm_to_mw(23)};
  Rng r1 = make_rng(seed, 1), r2 = make_rng(seed, 2);
  Net out{build_hetnet(layout, powers, 0.5, db_to_linear(-110), r1), {}};
  RadioEnvironment env;
  env.num_subchannels = N;
  out.ch = realize_channels(out.net.topology, env, r2);
  return out;
}

// Random assignment in which every cell uses every sub-channel in both
// directions, with random powers.
HetAllocation random_allocation(const HetNetwork& net, int N, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  HetAllocation a;
  for (int c = 0; c < net.num_cells(); ++c) {
    const int K = static_cast<int>(net.cell_users[c].size());
    FixedAssignment fa{std::vector<int>(N), std::vector<int>(N)};
    PowerVector pv{std::vector<double>(N), std::vector<double>(N)};
    for (int n = 0; n < N; ++n) {
      fa.dl_user[n] = static_cast<int>(u(rng) * K);
      fa.ul_user[n] = n % 3 == 0 ? -1 : static_cast<int>(u(rng) * K);
      pv.dl[n] = u(rng) * net.bs_budget[c] / N;
      pv.ul[n] = u(rng) * 10.0;
    }
    a.assign.push_back(fa);
    a.powers.push_back(pv);
  }
  return a;
}

void zero_cross_cell(Net& n) {
  const int cells = n.net.num_cells(), N = n.ch.num_subchannels();
  for (int c = 0; c < cells; ++c)
    for (int u = 0; u < n.net.topology.num_users(); ++u)
      if (n.net.topology.user_cell[u] != c)
        for (int k = 0; k < N; ++k) n.ch.g_bs_user(c, u, k) = 0.0;
  for (int u = 0; u < n.net.topology.num_users(); ++u)
    for (int v = 0; v < n.net.topology.num_users(); ++v)
      if (n.net.topology.user_cell[u] != n.net.topology.user_cell[v])
        for (int k = 0; k < N; ++k) n.ch.g_user_user(u, v, k) = 0.0;
  for (int a = 0; a < cells; ++a)
    for (int b = 0; b < cells; ++b)
      for (int k = 0; k < N; ++k)
        if (a != b) n.ch.g_bs_bs(a, b, k) = 0.0;
}

}  // namespace

TEST_CASE("hetnet layout") {
  HetLayout layout;
  Rng rng = make_rng(1, 1);
  const auto net = build_hetnet(layout, {1, 1, 1}, 0.5, 0.0, rng);
  CHECK(net.num_cells() == 4);
  CHECK(net.cell_users[0].size() == 8);
  CHECK(net.cell_users[1].size() == 2);
  CHECK(net.cell_users[2].size() == 3);
  CHECK(net.cell_users[3].size() == 4);
  const auto& t = net.topology;
  CHECK(distance(t.bs_positions[0], {0, 0}) == doctest::Approx(0.0));
  for (int c = 1; c < 4; ++c) CHECK(distance(t.bs_positions[c], {0, 0}) == doctest::Approx(300.0));
  for (int u = 0; u < t.num_users(); ++u) {
    const int c = t.user_cell[u];
    CHECK(distance(t.user_position(u), t.bs_positions[c]) <= (c == 0 ? 500.0 : 50.0));
  }
  int fd = 0;
  for (int u : net.cell_users[0]) fd += net.caps[u] == Duplex::FullDuplex;
  CHECK(fd == 4);
  CHECK_NOTHROW(net.validate());
}

TEST_CASE("interference map") {
  Net n = small_network(3);
  const int N = n.ch.num_subchannels();
  std::mt19937_64 rng(7);

  SUBCASE("silent foreign cells") {
    HetAllocation a = random_allocation(n.net, N, rng);
    for (auto& p : a.powers) {
      std::fill(p.dl.begin(), p.dl.end(), 0.0);
      std::fill(p.ul.begin(), p.ul.end(), 0.0);
    }
    const auto im = compute_interference(n.net, n.ch, a);
    for (const auto* m : {&im.dic_user, &im.uic_user, &im.dic_bs, &im.uic_bs})
      for (const auto& row : *m)
        for (double x : row) CHECK(x == 0.0);
  }

  SUBCASE("decoupled cells") {
    zero_cross_cell(n);
    const auto im = compute_interference(n.net, n.ch, random_allocation(n.net, N, rng));
    for (const auto* m : {&im.dic_user, &im.uic_user, &im.dic_bs, &im.uic_bs})
      for (const auto& row : *m)
        for (double x : row) CHECK(x == 0.0);
  }

  SUBCASE("hand summation") {
    const HetAllocation a = random_allocation(n.net, N, rng);
    const auto im = compute_interference(n.net, n.ch, a);
    const int cells = n.net.num_cells();
    for (int m = 0; m < cells; ++m)
      for (int k = 0; k < N; ++k) {
        double dic_bs = 0, uic_bs = 0;
        for (int o = 0; o < cells; ++o) {
          if (o == m) continue;
          dic_bs += n.ch.g_bs_bs(m, o, k) * a.powers[o].dl[k];
          if (int j = a.assign[o].ul_user[k]; j >= 0)
            uic_bs += n.ch.g_bs_user(m, n.net.cell_users[o][j], k) * a.powers[o].ul[k];
        }
        CHECK(im.dic_bs[m][k] == doctest::Approx(dic_bs).epsilon(1e-12));
        CHECK(im.uic_bs[m][k] == doctest::Approx(uic_bs).epsilon(1e-12));
        for (int u : n.net.cell_users[m]) {
          double dic = 0, uic = 0;
          for (int o = 0; o < cells; ++o) {
            if (o == m) continue;
            dic += n.ch.g_bs_user(o, u, k) * a.powers[o].dl[k];
            if (int j = a.assign[o].ul_user[k]; j >= 0)
              uic += n.ch.g_user_user(u, n.net.cell_users[o][j], k) * a.powers[o].ul[k];
          }
          CHECK(im.dic_user[u][k] == doctest::Approx(dic).epsilon(1e-12));
          CHECK(im.uic_user[u][k] == doctest::Approx(uic).epsilon(1e-12));
        }
      }
  }
}

TEST_CASE("cell rates") {
  Net n = small_network(4);
  const int N = n.ch.num_subchannels();
  std::mt19937_64 rng(8);
  const HetAllocation a = random_allocation(n.net, N, rng);

  InterferenceMap none = compute_interference(n.net, n.ch, a);
  for (auto* m : {&none.dic_user, &none.uic_user, &none.dic_bs, &none.uic_bs})
    for (auto& row : *m) std::fill(row.begin(), row.end(), 0.0);
  const auto isolated = cell_rates(n.net, n.ch, a, none);
  for (int c = 0; c < n.net.num_cells(); ++c) {
    const CellSetup s = het_cell_setup(n.net, n.ch, c, nullptr);
    CHECK(isolated[c].weighted ==
          doctest::Approx(oracle::cell_weighted_rate(s, a.assign[c], a.powers[c])));
  }

  const auto im = compute_interference(n.net, n.ch, a);
  const auto loaded = cell_rates(n.net, n.ch, a, im);
  for (int c = 0; c < n.net.num_cells(); ++c) {
    const CellSetup s = het_cell_setup(n.net, n.ch, c, &im);
    CHECK(loaded[c].weighted ==
          doctest::Approx(oracle::cell_weighted_rate(s, a.assign[c], a.powers[c])));
    CHECK(loaded[c].weighted <= isolated[c].weighted + 1e-12);
  }

  // Louder foreign downlink never helps a victim.
  HetAllocation louder = a;
  for (double& p : louder.powers[1].dl) p *= 2.0;
  const auto im2 = compute_interference(n.net, n.ch, louder);
  const auto r2 = cell_rates(n.net, n.ch, louder, im2);
  for (int c = 0; c < n.net.num_cells(); ++c) {
    if (c == 1) continue;
    CHECK(r2[c].dl <= loaded[c].dl + 1e-12);
    CHECK(r2[c].ul <= loaded[c].ul + 1e-12);
  }
}

TEST_CASE("decoupled femto reduces to the single-cell pipeline") {
  HetLayout layout;
  layout.macro_users = 3;
  layout.femto_users = {3};
  const HetPowers powers{dbm_to_mw(43), dbm_to_mw(24), dbm_to_mw(23)};
  Rng r1 = make_rng(2, 1), r2 = make_rng(2, 2);
  Net n{build_hetnet(layout, powers, 1.0, db_to_linear(-100), r1), {}};
  RadioEnvironment env;
  env.num_subchannels = 8;
  n.ch = realize_channels(n.net.topology, env, r2);
  zero_cross_cell(n);

  HetConfig cfg;
  const auto r = alternating_optimize(n.net, n.ch, cfg);
  const auto single = proposed_pipeline(het_cell_setup(n.net, n.ch, 1, nullptr));
  CHECK(r.converged);
  CHECK(r.femto_sum_rate == doctest::Approx(single.rates.weighted).epsilon(1e-6));
  CHECK(r.alloc.assign[1] == single.assign);
}

TEST_CASE("alternating optimization meets macro targets") {
  Net n = small_network(5, 8);
  HetConfig cfg;
  cfg.r_mind = 4.0;
  cfg.r_minu = 4.0;
  const auto r = alternating_optimize(n.net, n.ch, cfg);
  CHECK(r.feasible);
  CHECK(r.macro_dl_rate >= cfg.r_mind - 1e-3);
  CHECK(r.macro_ul_rate >= cfg.r_minu - 1e-3);
  CHECK(r.macro_dl_rate <= 1.05 * cfg.r_mind);
  CHECK(r.macro_ul_rate <= 1.05 * cfg.r_minu);
  CHECK(r.outer_iterations >= 1);
  CHECK(r.outer_iterations <= cfg.outer_iterations);
  CHECK(static_cast<int>(r.trace.size()) == r.outer_iterations);
  CHECK(r.power_reports.size() == r.trace.size());
  for (const auto& rep : r.power_reports) {
    const auto& tr = rep.objective_trace;
    for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr[i] >= tr[i - 1] - 1e-9);
  }
  for (int c = 0; c < n.net.num_cells(); ++c) {
    const CellSetup s = het_cell_setup(n.net, n.ch, c, nullptr);
    CHECK(satisfies_constraints(s, r.alloc.assign[c], r.alloc.powers[c], 1e-6));
  }
  const auto& best = r.trace[r.best_iteration];
  CHECK(best.femto_sum_rate == doctest::Approx(r.femto_sum_rate));

  // Looser targets leave more for the femto cells.
  HetConfig loose = cfg;
  loose.r_mind = loose.r_minu = 1.0;
  CHECK(alternating_optimize(n.net, n.ch, loose).femto_sum_rate >= r.femto_sum_rate - 1e-6);
}
