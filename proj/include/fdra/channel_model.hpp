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

#include <cstddef>
#include <vector>

#include "fdra/rng.hpp"

namespace fdra {

enum class PathlossKind { HataUrban, ItuIndoor };

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

struct RadioEnvironment {
  double carrier_freq_mhz = 2000.0;
  double bs_height_m = 30.0;
  double ue_height_m = 1.5;
  // Effective "base" height used for user-to-user Hata links.
  double ue_pair_height_m = 1.5;
  double cell_radius_m = 1000.0;
  PathlossKind pathloss_kind = PathlossKind::HataUrban;
  double itu_exponent = 22.0;
  double itu_floor_penalty_db = 9.0;
  double noise_density_dbm_hz = -170.0;
  double subchannel_bw_hz = 150e3;
  int num_subchannels = 64;
  // Link distances below this value are raised to it.
  double min_distance_m = 10.0;
  // Test mode: every fading variate equals one.
  bool unit_fading = false;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

struct Topology {
  std::vector<Point> bs_positions;
  // Per-cell user coordinates.
  std::vector<std::vector<Point>> user_positions;
  // Global user index -> owning cell; users are numbered cell by cell.
  std::vector<int> user_cell;

  int num_cells() const { return static_cast<int>(bs_positions.size()); }
  int num_users() const { return static_cast<int>(user_cell.size()); }
  // Global indices of the users of `cell`.
  std::vector<int> users_of(int cell) const;
  const Point& user_position(int global_user) const;
  void validate() const;
};

// Dense [a][b][n] gain tensor.
class GainTensor {
 public:
  GainTensor() = default;
  GainTensor(int d0, int d1, int d2)
      : d0_(d0), d1_(d1), d2_(d2),
        data_(static_cast<std::size_t>(d0) * d1 * d2, 0.0) {}
  double& operator()(int a, int b, int n) { return data_[index(a, b, n)]; }
  double operator()(int a, int b, int n) const { return data_[index(a, b, n)]; }
  int dim0() const { return d0_; }
  int dim1() const { return d1_; }
  int dim2() const { return d2_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t index(int a, int b, int n) const {
    return (static_cast<std::size_t>(a) * d1_ + b) * d2_ + n;
  }
  int d0_ = 0, d1_ = 0, d2_ = 0;
  std::vector<double> data_;
};

// Linear gains shared by both link directions. `g_bs_user(c, u, n)` holds
// every BS/user pair: own-cell entries are the serving gains, foreign-cell
// entries are the cross-cell gains.
struct ChannelRealization {
  GainTensor g_bs_user;    // [cell][user][n]
  GainTensor g_user_user;  // [user][user][n], symmetric, zero diagonal
  GainTensor g_bs_bs;      // [cell][cell][n], symmetric, zero diagonal
  std::vector<double> noise_user;  // per user, mW
  std::vector<double> noise_bs;    // per cell, mW

  int num_cells() const { return g_bs_user.dim0(); }
  int num_users() const { return g_bs_user.dim1(); }
  int num_subchannels() const { return g_bs_user.dim2(); }
};

std::vector<Point> place_uniform_disk(Rng& rng, const Point& center,
                                      double radius, int count);

double hata_urban_pathloss_db(double freq_mhz, double h_base_m,
                              double h_mobile_m, double dist_km);

// With `clamp` set, distances below 1 m are raised to 1 m instead of
// rejected.
double itu_indoor_pathloss_db(double freq_mhz, double dist_m, double exponent,
                              double floor_penalty_db, bool clamp = false);

double noise_power_linear(double density_dbm_hz, double bw_hz);

// Path loss of a BS/user link and of a user/user link in dB, after the
// minimum-distance floor.
double bs_user_pathloss_db(const RadioEnvironment& env, double dist_m);
double user_user_pathloss_db(const RadioEnvironment& env, double dist_m);
// BS/BS links reuse the BS/user model.
double bs_bs_pathloss_db(const RadioEnvironment& env, double dist_m);

ChannelRealization realize_channels(const Topology& topology,
                                    const RadioEnvironment& env, Rng& rng);

// One BS at the origin with `users` uniformly placed within the cell radius.
Topology single_cell_topology(const RadioEnvironment& env, int users, Rng& rng);

}  // namespace fdra
