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

#include "fdra/cell_problem.hpp"

#include <cmath>

#include "fdra/errors.hpp"
#include "fdra/units.hpp"

namespace fdra {

CellChannel cell_channel(const ChannelRealization& ch, int cell,
                         const std::vector<int>& users) {
  CellChannel c;
  c.K = static_cast<int>(users.size());
  c.N = ch.num_subchannels();
  c.g.resize(static_cast<std::size_t>(c.K) * c.N);
  c.g_uu.resize(static_cast<std::size_t>(c.K) * c.K * c.N);
  for (int k = 0; k < c.K; ++k) {
    for (int n = 0; n < c.N; ++n)
      c.g[static_cast<std::size_t>(k) * c.N + n] = ch.g_bs_user(cell, users[k], n);
    for (int j = 0; j < c.K; ++j)
      for (int n = 0; n < c.N; ++n)
        c.g_uu[(static_cast<std::size_t>(k) * c.K + j) * c.N + n] =
            ch.g_user_user(users[k], users[j], n);
    c.noise_user.push_back(ch.noise_user[users[k]]);
  }
  c.noise_bs = ch.noise_bs[cell];
  return c;
}

void CellSetup::validate() const {
  const auto k = static_cast<std::size_t>(ch.K);
  if (caps.size() != k || w.size() != k || v.size() != k || p_user.size() != k)
    throw Error("cell setup: per-user vectors must have K entries");
  if (!(p_bs >= 0)) throw Error("cell setup: BS budget must be >= 0");
  for (double p : p_user)
    if (!(p >= 0)) throw Error("cell setup: user budgets must be >= 0");
  for (std::size_t i = 0; i < k; ++i)
    if (!(w[i] >= 0) || !(v[i] >= 0)) throw Error("cell setup: weights must be >= 0");
  if (!(beta >= 0 && beta <= 1)) throw Error("cell setup: beta outside [0,1]");
}

RateBreakdown evaluate_rates(const CellSetup& s, const FixedAssignment& a,
                             const PowerVector& p) {
  RateBreakdown r;
  for (int n = 0; n < a.N(); ++n) {
    const int k = a.dl_user[n], j = a.ul_user[n];
    const double pd = k >= 0 ? p.dl[n] : 0.0;
    const double pu = j >= 0 ? p.ul[n] : 0.0;
    if (k >= 0) {
      double interf = j >= 0 ? s.coupling(k, j, n) * pu : 0.0;
      double rate = log2_1p(s.ch.gain(k, n) * pd / (s.ch.n_user(k, n) + interf));
      r.dl += rate;
      r.weighted += s.w[k] * rate;
    }
    if (j >= 0) {
      double rate = log2_1p(s.ch.gain(j, n) * pu / (s.ch.n_bs(n) + s.beta * pd));
      r.ul += rate;
      r.weighted += s.v[j] * rate;
    }
  }
  return r;
}

bool satisfies_constraints(const CellSetup& s, const FixedAssignment& a,
                           const PowerVector& p, double tol) {
  const int N = a.N();
  if (static_cast<int>(a.ul_user.size()) != N) return false;
  double bs_sum = 0.0;
  std::vector<double> user_sum(s.K(), 0.0);
  for (int n = 0; n < N; ++n) {
    const int k = a.dl_user[n], j = a.ul_user[n];
    if (k >= s.K() || j >= s.K()) return false;
    if (k >= 0 && k == j && s.caps[k] == Duplex::HalfDuplex) return false;
    if (k >= 0 && j >= 0 &&
        (s.bs == BsDuplex::HybridHD || s.bs == BsDuplex::HalfDuplex))
      return false;
    if (k >= 0) {
      if (!(p.dl[n] >= -tol)) return false;
      bs_sum += p.dl[n];
    }
    if (j >= 0) {
      if (!(p.ul[n] >= -tol)) return false;
      user_sum[j] += p.ul[n];
    }
  }
  if (bs_sum > s.p_bs * (1 + tol) + tol) return false;
  for (int j = 0; j < s.K(); ++j)
    if (user_sum[j] > s.p_user[j] * (1 + tol) + tol) return false;
  return true;
}

}  // namespace fdra
