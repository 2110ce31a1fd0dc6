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

#include "fdra/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fdra/errors.hpp"
#include "fdra/units.hpp"

namespace fdra {

const char* scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::HD_D: return "HD-D";
    case SchemeKind::HD_U: return "HD-U";
    case SchemeKind::HHD: return "HHD";
    case SchemeKind::FD_HD: return "FD-HD";
    case SchemeKind::FD_FD: return "FD-FD";
    case SchemeKind::UpperBound: return "UB";
  }
  return "?";
}

std::optional<SchemeKind> parse_scheme(const std::string& name) {
  for (auto k : {SchemeKind::HD_D, SchemeKind::HD_U, SchemeKind::HHD,
                 SchemeKind::FD_HD, SchemeKind::FD_FD, SchemeKind::UpperBound})
    if (name == scheme_name(k)) return k;
  return std::nullopt;
}

std::vector<double> multilevel_waterfill(const std::vector<double>& gains,
                                         const std::vector<double>& weights,
                                         const std::vector<double>& noise,
                                         double budget) {
  const std::size_t n = gains.size();
  if (weights.size() != n || noise.size() != n)
    throw Error("waterfill: size mismatch");
  if (!(budget >= 0)) throw Error("waterfill: budget must be >= 0");
  std::vector<double> p(n, 0.0);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (gains[i] > 0 && weights[i] > 0) idx.push_back(i);
  if (idx.empty() || budget == 0.0) return p;
  auto floor_of = [&](std::size_t i) { return noise[i] / gains[i]; };
  // Highest marginal utility at zero power first.
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return weights[a] / floor_of(a) > weights[b] / floor_of(b);
  });
  double sum_w = 0.0, sum_floor = 0.0, lambda = 0.0;
  std::size_t active = 0;
  for (std::size_t m = 0; m < idx.size(); ++m) {
    double w = sum_w + weights[idx[m]];
    double f = sum_floor + floor_of(idx[m]);
    double lam = w / (budget + f);
    if (!(weights[idx[m]] / lam > floor_of(idx[m]))) break;
    sum_w = w;
    sum_floor = f;
    lambda = lam;
    active = m + 1;
  }
  for (std::size_t m = 0; m < active; ++m)
    p[idx[m]] = std::max(0.0, weights[idx[m]] / lambda - floor_of(idx[m]));
  return p;
}

namespace {

SchemeOutcome empty_outcome(int N) {
  SchemeOutcome o;
  o.assign.dl_user.assign(N, -1);
  o.assign.ul_user.assign(N, -1);
  o.powers.dl.assign(N, 0.0);
  o.powers.ul.assign(N, 0.0);
  return o;
}

// Multilevel water-filling for the downlink sub-channels of `a`.
void fill_downlink(const CellSetup& s, SchemeOutcome& o) {
  std::vector<int> subs;
  std::vector<double> g, w, noise;
  for (int n = 0; n < s.N(); ++n) {
    int k = o.assign.dl_user[n];
    if (k < 0) continue;
    subs.push_back(n);
    g.push_back(s.ch.gain(k, n));
    w.push_back(s.w[k]);
    noise.push_back(s.ch.n_user(k, n));
  }
  auto p = multilevel_waterfill(g, w, noise, s.p_bs);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    o.powers.dl[subs[i]] = p[i];
    if (p[i] <= 0.0) o.assign.dl_user[subs[i]] = -1;
  }
}

// Per-user water-filling over each user's uplink sub-channels.
void fill_uplink(const CellSetup& s, SchemeOutcome& o) {
  for (int j = 0; j < s.K(); ++j) {
    std::vector<int> subs;
    std::vector<double> g, w, noise;
    for (int n = 0; n < s.N(); ++n) {
      if (o.assign.ul_user[n] != j) continue;
      subs.push_back(n);
      g.push_back(s.ch.gain(j, n));
      w.push_back(s.v[j]);
      noise.push_back(s.ch.n_bs(n));
    }
    auto p = multilevel_waterfill(g, w, noise, s.p_user[j]);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      o.powers.ul[subs[i]] = p[i];
      if (p[i] <= 0.0) o.assign.ul_user[subs[i]] = -1;
    }
  }
}

SchemeOutcome hd_downlink(const CellSetup& s) {
  SchemeOutcome o = empty_outcome(s.N());
  const double share = s.p_bs / s.N();
  for (int n = 0; n < s.N(); ++n) {
    double best = -1.0;
    for (int k = 0; k < s.K(); ++k) {
      double val = s.w[k] * log2_1p(s.ch.gain(k, n) * share / s.ch.n_user(k, n));
      if (val > best) {
        best = val;
        o.assign.dl_user[n] = k;
      }
    }
  }
  fill_downlink(s, o);
  o.rates = evaluate_rates(s, o.assign, o.powers);
  return o;
}

SchemeOutcome hd_uplink(const CellSetup& s) {
  SchemeOutcome o = empty_outcome(s.N());
  std::vector<std::vector<int>> owned(s.K());
  auto equal_split_rate = [&](int j, const std::vector<int>& subs) {
    if (subs.empty()) return 0.0;
    double p = s.p_user[j] / static_cast<double>(subs.size());
    double r = 0.0;
    for (int n : subs) r += log2_1p(s.ch.gain(j, n) * p / s.ch.n_bs(n));
    return s.v[j] * r;
  };
  for (int n : rank_subchannels(s.ch)) {
    int best_j = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < s.K(); ++j) {
      auto with = owned[j];
      with.push_back(n);
      double gain = equal_split_rate(j, with) - equal_split_rate(j, owned[j]);
      if (gain > best) {
        best = gain;
        best_j = j;
      }
    }
    if (best_j < 0) continue;
    owned[best_j].push_back(n);
    o.assign.ul_user[n] = best_j;
  }
  fill_uplink(s, o);
  o.rates = evaluate_rates(s, o.assign, o.powers);
  return o;
}

SchemeOutcome hybrid_hd(const CellSetup& setup) {
  CellSetup s = setup;
  s.bs = BsDuplex::HybridHD;
  AssignmentState st = allocate_single_cell(s);
  SchemeOutcome o = empty_outcome(s.N());
  o.assign = st.assign;
  fill_downlink(s, o);
  fill_uplink(s, o);
  o.rates = evaluate_rates(s, o.assign, o.powers);
  return o;
}

}  // namespace

SchemeOutcome proposed_pipeline(const CellSetup& setup, const DcOptions& dc) {
  AssignmentState st = allocate_single_cell(setup);
  CellProgram cp = build_cell_program(setup, st.assign);
  DcResult r = dc_optimize(cp.program, equal_split_start(cp.program), dc);
  SchemeOutcome o;
  o.assign = st.assign;
  o.powers = to_power_vector(cp, r.p);
  o.iterations = r.report.iterations;
  o.dc = std::move(r.report);
  o.rates = evaluate_rates(setup, o.assign, o.powers);
  return o;
}

SchemeOutcome run_scheme(SchemeKind kind, const CellSetup& setup, const DcOptions& dc) {
  setup.validate();
  switch (kind) {
    case SchemeKind::HD_D: return hd_downlink(setup);
    case SchemeKind::HD_U: return hd_uplink(setup);
    case SchemeKind::HHD: return hybrid_hd(setup);
    case SchemeKind::FD_HD: {
      CellSetup s = setup;
      s.bs = BsDuplex::FullDuplex;
      std::fill(s.caps.begin(), s.caps.end(), Duplex::HalfDuplex);
      return proposed_pipeline(s, dc);
    }
    case SchemeKind::FD_FD: {
      CellSetup s = setup;
      s.bs = BsDuplex::FullDuplex;
      return proposed_pipeline(s, dc);
    }
    case SchemeKind::UpperBound: {
      SchemeOutcome d = hd_downlink(setup), u = hd_uplink(setup);
      SchemeOutcome o = empty_outcome(setup.N());
      o.rates.weighted = d.rates.weighted + u.rates.weighted;
      o.rates.dl = d.rates.dl;
      o.rates.ul = u.rates.ul;
      return o;
    }
  }
  throw Error("run_scheme: unknown scheme");
}

}  // namespace fdra
