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

#include "fdra/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "fdra/errors.hpp"
#include "fdra/units.hpp"

namespace fdra {

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void RadioEnvironment::validate() const {
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) throw ConfigError(std::string("environment.") + field, what);
  };
  require(std::isfinite(carrier_freq_mhz) && carrier_freq_mhz > 0,
          "carrier_freq_mhz", "must be positive");
  require(std::isfinite(cell_radius_m) && cell_radius_m > 0, "cell_radius_m",
          "must be positive");
  require(num_subchannels >= 1, "num_subchannels", "must be at least 1");
  require(std::isfinite(subchannel_bw_hz) && subchannel_bw_hz > 0,
          "subchannel_bw_hz", "must be positive");
  require(bs_height_m > 0, "bs_height_m", "must be positive");
  require(ue_height_m > 0, "ue_height_m", "must be positive");
  require(ue_pair_height_m > 0, "ue_pair_height_m", "must be positive");
  require(std::isfinite(noise_density_dbm_hz), "noise_density_dbm_hz",
          "must be finite");
  require(std::isfinite(itu_exponent), "itu_exponent", "must be finite");
  require(std::isfinite(itu_floor_penalty_db), "itu_floor_penalty_db",
          "must be finite");
  require(min_distance_m >= (pathloss_kind == PathlossKind::ItuIndoor ? 1.0
                                                                       : 1e-3),
          "min_distance_m", "below the path-loss model's domain");
}

std::vector<int> Topology::users_of(int cell) const {
  std::vector<int> out;
  for (int u = 0; u < num_users(); ++u)
    if (user_cell[u] == cell) out.push_back(u);
  return out;
}

const Point& Topology::user_position(int global_user) const {
  int cell = user_cell.at(global_user);
  int local = 0;
  for (int u = 0; u < global_user; ++u)
    if (user_cell[u] == cell) ++local;
  return user_positions.at(cell).at(local);
}

void Topology::validate() const {
  if (bs_positions.empty()) throw Error("topology: no base stations");
  if (user_positions.size() != bs_positions.size())
    throw Error("topology: user lists do not match base stations");
  std::size_t total = 0;
  for (const auto& cell : user_positions) total += cell.size();
  if (total != user_cell.size())
    throw Error("topology: user_cell size mismatch");
  for (const auto& p : bs_positions)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw Error("topology: non-finite BS position");
  for (const auto& cell : user_positions)
    for (const auto& p : cell)
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw Error("topology: non-finite user position");
}

std::vector<Point> place_uniform_disk(Rng& rng, const Point& center,
                                      double radius, int count) {
  if (!(radius > 0)) throw Error("place_uniform_disk: radius must be positive");
  if (count < 0) throw Error("place_uniform_disk: negative count");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    double r = radius * std::sqrt(unit(rng));
    double theta = 2.0 * std::numbers::pi * unit(rng);
    out.push_back({center.x + r * std::cos(theta), center.y + r * std::sin(theta)});
  }
  return out;
}

double hata_urban_pathloss_db(double freq_mhz, double h_base_m,
                              double h_mobile_m, double dist_km) {
  if (!(dist_km > 0)) throw Error("hata: distance must be positive");
  if (!(freq_mhz > 0)) throw Error("hata: frequency must be positive");
  double lf = std::log10(freq_mhz);
  double lhb = std::log10(h_base_m);
  double a_hm = (1.1 * lf - 0.7) * h_mobile_m - (1.56 * lf - 0.8);
  return 69.55 + 26.16 * lf - 13.82 * lhb - a_hm +
         (44.9 - 6.55 * lhb) * std::log10(dist_km);
}

double itu_indoor_pathloss_db(double freq_mhz, double dist_m, double exponent,
                              double floor_penalty_db, bool clamp) {
  if (!(freq_mhz > 0)) throw Error("itu: frequency must be positive");
  if (!(dist_m >= 1.0)) {
    if (!clamp || std::isnan(dist_m))
      throw Error("itu: distance below 1 m");
    dist_m = 1.0;
  }
  return 20.0 * std::log10(freq_mhz) + exponent * std::log10(dist_m) +
         floor_penalty_db - 28.0;
}

double noise_power_linear(double density_dbm_hz, double bw_hz) {
  if (!(bw_hz > 0)) throw Error("noise: bandwidth must be positive");
  return dbm_to_mw(density_dbm_hz + 10.0 * std::log10(bw_hz));
}

namespace {

double floored(const RadioEnvironment& env, double dist_m) {
  return std::max(dist_m, env.min_distance_m);
}

}  // namespace

double bs_user_pathloss_db(const RadioEnvironment& env, double dist_m) {
  double d = floored(env, dist_m);
  if (env.pathloss_kind == PathlossKind::HataUrban)
    return hata_urban_pathloss_db(env.carrier_freq_mhz, env.bs_height_m,
                                  env.ue_height_m, d / 1000.0);
  return itu_indoor_pathloss_db(env.carrier_freq_mhz, d, env.itu_exponent,
                                env.itu_floor_penalty_db);
}

double user_user_pathloss_db(const RadioEnvironment& env, double dist_m) {
  double d = floored(env, dist_m);
  if (env.pathloss_kind == PathlossKind::HataUrban)
    return hata_urban_pathloss_db(env.carrier_freq_mhz, env.ue_pair_height_m,
                                  env.ue_height_m, d / 1000.0);
  return itu_indoor_pathloss_db(env.carrier_freq_mhz, d, env.itu_exponent,
                                env.itu_floor_penalty_db);
}

double bs_bs_pathloss_db(const RadioEnvironment& env, double dist_m) {
  return bs_user_pathloss_db(env, dist_m);
}

ChannelRealization realize_channels(const Topology& topology,
                                    const RadioEnvironment& env, Rng& rng) {
  env.validate();
  topology.validate();
  const int cells = topology.num_cells();
  const int users = topology.num_users();
  const int n_sub = env.num_subchannels;
  std::vector<Point> upos(users);
  for (int u = 0; u < users; ++u) upos[u] = topology.user_position(u);

  std::exponential_distribution<double> fading(1.0);
  auto fade = [&]() { return env.unit_fading ? 1.0 : fading(rng); };
  auto attenuation = [](double pl_db) { return db_to_linear(-pl_db); };

  ChannelRealization ch;
  ch.g_bs_user = GainTensor(cells, users, n_sub);
  ch.g_user_user = GainTensor(users, users, n_sub);
  ch.g_bs_bs = GainTensor(cells, cells, n_sub);
  for (int c = 0; c < cells; ++c)
    for (int u = 0; u < users; ++u) {
      double a = attenuation(
          bs_user_pathloss_db(env, distance(topology.bs_positions[c], upos[u])));
      for (int n = 0; n < n_sub; ++n) ch.g_bs_user(c, u, n) = a * fade();
    }
  for (int u = 0; u < users; ++u)
    for (int v = u + 1; v < users; ++v) {
      double a = attenuation(user_user_pathloss_db(env, distance(upos[u], upos[v])));
      for (int n = 0; n < n_sub; ++n) {
        double g = a * fade();
        ch.g_user_user(u, v, n) = g;
        ch.g_user_user(v, u, n) = g;
      }
    }
  for (int c = 0; c < cells; ++c)
    for (int d = c + 1; d < cells; ++d) {
      double a = attenuation(bs_bs_pathloss_db(
          env, distance(topology.bs_positions[c], topology.bs_positions[d])));
      for (int n = 0; n < n_sub; ++n) {
        double g = a * fade();
        ch.g_bs_bs(c, d, n) = g;
        ch.g_bs_bs(d, c, n) = g;
      }
    }
  double noise = noise_power_linear(env.noise_density_dbm_hz, env.subchannel_bw_hz);
  ch.noise_user.assign(users, noise);
  ch.noise_bs.assign(cells, noise);
  return ch;
}

Topology single_cell_topology(const RadioEnvironment& env, int users, Rng& rng) {
  Topology t;
  t.bs_positions = {{0.0, 0.0}};
  t.user_positions = {place_uniform_disk(rng, {0.0, 0.0}, env.cell_radius_m, users)};
  t.user_cell.assign(users, 0);
  return t;
}

}  // namespace fdra
