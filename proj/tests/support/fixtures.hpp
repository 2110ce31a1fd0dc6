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


// Seeded single-cell instances shared by several test files.

#pragma once

#include <cstdint>

#include "fdra/cell_problem.hpp"
#include "fdra/channel_model.hpp"
#include "fdra/rng.hpp"
#include "fdra/units.hpp"

namespace fixture {

inline fdra::RadioEnvironment outdoor(int N = 16) {
  fdra::RadioEnvironment env;
  env.num_subchannels = N;
  return env;
}

inline fdra::RadioEnvironment indoor(int N = 16) {
  fdra::RadioEnvironment env;
  env.num_subchannels = N;
  env.pathloss_kind = fdra::PathlossKind::ItuIndoor;
  env.cell_radius_m = 20.0;
  env.min_distance_m = 1.0;
  return env;
}

inline fdra::CellSetup cell(const fdra::RadioEnvironment& env, int K, std::uint64_t seed,
                            double beta_db, double bs_dbm,
                            fdra::Duplex cap = fdra::Duplex::FullDuplex) {
  fdra::Rng r1 = fdra::make_rng(seed, 1), r2 = fdra::make_rng(seed, 2);
  const fdra::Topology t = fdra::single_cell_topology(env, K, r1);
  const fdra::ChannelRealization ch = fdra::realize_channels(t, env, r2);
  fdra::CellSetup s;
  s.ch = fdra::cell_channel(ch, 0, t.users_of(0));
  s.caps.assign(K, cap);
  s.w.assign(K, 1.0);
  s.v.assign(K, 1.0);
  s.p_bs = fdra::dbm_to_mw(bs_dbm);
  s.p_user.assign(K, fdra::dbm_to_mw(23.0));
  s.beta = fdra::beta_from_db(beta_db);
  return s;
}

inline fdra::CellSetup outdoor_cell(int K, std::uint64_t seed, double beta_db = -90.0, int N = 16) {
  return cell(outdoor(N), K, seed, beta_db, 43.0);
}

inline fdra::CellSetup indoor_cell(int K, std::uint64_t seed, double beta_db = -90.0, int N = 16) {
  return cell(indoor(N), K, seed, beta_db, 24.0);
}

}  // namespace fixture
