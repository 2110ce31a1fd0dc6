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

#include "fdra/scheduler.hpp"

#include <algorithm>
#include <numeric>

#include "fdra/pair_optimizer.hpp"
#include "fdra/units.hpp"

namespace fdra {

std::vector<int> rank_subchannels(const CellChannel& ch) {
  std::vector<double> best(ch.N, 0.0);
  for (int n = 0; n < ch.N; ++n)
    for (int k = 0; k < ch.K; ++k) best[n] = std::max(best[n], ch.gain(k, n));
  std::vector<int> order(ch.N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return best[a] > best[b]; });
  return order;
}

namespace {

class Allocator {
 public:
  explicit Allocator(const CellSetup& s) : s_(s) {
    s_.validate();
    const int N = s.N();
    st_.assign.dl_user.assign(N, -1);
    st_.assign.ul_user.assign(N, -1);
    st_.dl_power_hint.assign(N, 0.0);
    st_.ul_power_hint.assign(N, 0.0);
    st_.user_counter.assign(s.K(), 1);
  }

  double cap_bs() const { return s_.p_bs / st_.bs_counter; }
  double cap_user(int j) const { return s_.p_user[j] / st_.user_counter[j]; }

  PairProblem problem(int k, int j, int n) const {
    PairProblem pr;
    pr.w = s_.w[k];
    pr.v = s_.v[j];
    pr.g_d = s_.ch.gain(k, n);
    pr.g_u = s_.ch.gain(j, n);
    pr.inter = s_.coupling(k, j, n);
    pr.beta = s_.beta;
    pr.n_d = s_.ch.n_user(k, n);
    pr.n_b = s_.ch.n_bs(n);
    pr.pmax_d = cap_bs();
    pr.pmax_u = cap_user(j);
    pr.mode = s_.bs == BsDuplex::FullDuplex ? PairMode::FullPair
                                            : PairMode::EitherDirection;
    return pr;
  }

  // Unconstrained pair search on sub-channel n.
  void pair_step(int n) {
    const int K = s_.K();
    bool have = false;
    PairSolution best;
    int bk = -1, bj = -1;
    for (int k = 0; k < K; ++k)
      for (int j = 0; j < K; ++j) {
        PairProblem pr = problem(k, j, n);
        if (k == j && s_.caps[k] == Duplex::HalfDuplex) {
          if (K > 1) continue;
          pr.mode = PairMode::EitherDirection;
        }
        PairSolution sol = solve_pair(pr);
        ++st_.pair_evaluations;
        if (!have || sol.value > best.value) {
          best = sol;
          bk = k;
          bj = j;
          have = true;
        }
      }
    if (!have) return;
    commit_dl(n, bk, best.p_d);
    commit_ul(n, bj, best.p_u);
  }

  void commit_dl(int n, int k, double p) {
    if (p <= 0.0) return;
    st_.assign.dl_user[n] = k;
    st_.dl_power_hint[n] = p;
    ++st_.bs_counter;
  }
  void commit_ul(int n, int j, double p) {
    if (p <= 0.0) return;
    st_.assign.ul_user[n] = j;
    st_.ul_power_hint[n] = p;
    ++st_.user_counter[j];
  }

  // Best single-direction downlink user at the current cap; returns its
  // unweighted rate estimate.
  double downlink_step(int n) {
    const double p = cap_bs();
    int best = -1;
    double best_l = -1.0, best_rate = 0.0;
    for (int k = 0; k < s_.K(); ++k) {
      double rate = log2_1p(s_.ch.gain(k, n) * p / s_.ch.n_user(k, n));
      if (s_.w[k] * rate > best_l) {
        best_l = s_.w[k] * rate;
        best = k;
        best_rate = rate;
      }
    }
    if (best < 0 || !(p > 0.0)) return 0.0;
    commit_dl(n, best, p);
    return best_rate;
  }

  double uplink_step(int n) {
    int best = -1;
    double best_l = -1.0, best_rate = 0.0;
    for (int j = 0; j < s_.K(); ++j) {
      double rate = log2_1p(s_.ch.gain(j, n) * cap_user(j) / s_.ch.n_bs(n));
      if (s_.v[j] * rate > best_l) {
        best_l = s_.v[j] * rate;
        best = j;
        best_rate = rate;
      }
    }
    if (best < 0 || !(cap_user(best) > 0.0)) return 0.0;
    commit_ul(n, best, cap_user(best));
    return best_rate;
  }

  AssignmentState& state() { return st_; }

 private:
  const CellSetup& s_;
  AssignmentState st_;
};

}  // namespace

AssignmentState allocate_single_cell(const CellSetup& setup) {
  Allocator alloc(setup);
  if (setup.K() == 0) return alloc.state();
  for (int n : rank_subchannels(setup.ch)) alloc.pair_step(n);
  return alloc.state();
}

AssignmentState allocate_rate_constrained(const CellSetup& setup, RateBudget budget) {
  Allocator alloc(setup);
  if (setup.K() == 0) {
    alloc.state().feasible = budget.remaining_dl <= 0 && budget.remaining_ul <= 0;
    return alloc.state();
  }
  AssignmentState& st = alloc.state();
  for (int n : rank_subchannels(setup.ch)) {
    if (budget.remaining_dl > 0 && budget.remaining_dl >= budget.remaining_ul) {
      double r = alloc.downlink_step(n);
      budget.remaining_dl -= r;
      st.phase1_dl_estimate += r;
      ++st.phase1_subchannels;
    } else if (budget.remaining_ul > 0) {
      double r = alloc.uplink_step(n);
      budget.remaining_ul -= r;
      st.phase1_ul_estimate += r;
      ++st.phase1_subchannels;
    } else {
      alloc.pair_step(n);
    }
  }
  st.feasible = budget.remaining_dl <= 0 && budget.remaining_ul <= 0;
  return st;
}

bool assignment_is_valid(const CellSetup& setup, const FixedAssignment& a) {
  if (a.dl_user.size() != a.ul_user.size()) return false;
  for (int n = 0; n < a.N(); ++n) {
    const int k = a.dl_user[n], j = a.ul_user[n];
    if (k < -1 || j < -1 || k >= setup.K() || j >= setup.K()) return false;
    if (k >= 0 && k == j && setup.caps[k] == Duplex::HalfDuplex) return false;
    if (k >= 0 && j >= 0 && setup.bs != BsDuplex::FullDuplex) return false;
  }
  return true;
}

}  // namespace fdra
