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

#include <algorithm>
#include <cmath>

#include "fdra/channel_model.hpp"
#include "fdra/errors.hpp"
#include "fdra/units.hpp"

using namespace fdra;

namespace {

double hata_reference(double f, double hb, double hm, double d_km) {
  const double lf = std::log10(f);
  const double a_hm = (1.1 * lf - 0.7) * hm - (1.56 * lf - 0.8);
  return 69.55 + 26.16 * lf - 13.82 * std::log10(hb) - a_hm +
         (44.9 - 6.55 * std::log10(hb)) * std::log10(d_km);
}

Topology two_cell_topology() {
  Topology t;
  t.bs_positions = {{0, 0}, {300, 0}};
  t.user_positions = {{{50, 0}, {0, 80}, {-30, -40}}, {{320, 10}, {290, -25}}};
  t.user_cell = {0, 0, 0, 1, 1};
  return t;
}

}  // namespace

TEST_CASE("uniform disk placement") {
  Rng rng = make_rng(11);
  CHECK(place_uniform_disk(rng, {0, 0}, 1.0, 0).empty());

  Rng a = make_rng(5), b = make_rng(5);
  auto pa = place_uniform_disk(a, {3, -2}, 7.0, 50);
  auto pb = place_uniform_disk(b, {3, -2}, 7.0, 50);
  for (int i = 0; i < 50; ++i) {
    CHECK(pa[i].x == pb[i].x);
    CHECK(pa[i].y == pb[i].y);
    CHECK(distance(pa[i], {3, -2}) <= 7.0);
  }

  const int n = 100000;
  Rng r = make_rng(17);
  auto pts = place_uniform_disk(r, {0, 0}, 1.0, n);
  std::vector<double> d(n);
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    d[i] = std::hypot(pts[i].x, pts[i].y);
    mean += d[i] / n;
  }
  CHECK(std::abs(mean - 2.0 / 3.0) < 0.01);

  // Kolmogorov-Smirnov distance against F(d) = d^2.
  std::sort(d.begin(), d.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = d[i] * d[i];
    ks = std::max({ks, std::abs(f - static_cast<double>(i) / n),
                   std::abs(f - static_cast<double>(i + 1) / n)});
  }
  CHECK(ks < 0.01);
}

TEST_CASE("Hata urban path loss") {
  CHECK(hata_urban_pathloss_db(2000, 30, 1.5, 1.0) == doctest::Approx(135.44).epsilon(1e-4));
  CHECK(hata_urban_pathloss_db(2000, 30, 1.5, 1.0) ==
        doctest::Approx(hata_reference(2000, 30, 1.5, 1.0)).epsilon(1e-12));
  // At 1 km the slope term vanishes.
  const double lf = std::log10(2000.0);
  const double a_hm = (1.1 * lf - 0.7) * 1.5 - (1.56 * lf - 0.8);
  CHECK(hata_urban_pathloss_db(2000, 30, 1.5, 1.0) ==
        doctest::Approx(69.55 + 26.16 * lf - 13.82 * std::log10(30.0) - a_hm));

  const double low = hata_urban_pathloss_db(2000, 1.5, 1.5, 0.1);
  CHECK(std::isfinite(low));
  CHECK(low == doctest::Approx(hata_reference(2000, 1.5, 1.5, 0.1)));
  // Slope per decade is larger for the low mast.
  const double slope_low = hata_urban_pathloss_db(2000, 1.5, 1.5, 1.0) - low;
  const double slope_high =
      hata_urban_pathloss_db(2000, 30, 1.5, 1.0) - hata_urban_pathloss_db(2000, 30, 1.5, 0.1);
  CHECK(slope_low > slope_high);

  CHECK_THROWS_AS(hata_urban_pathloss_db(2000, 30, 1.5, 0.0), Error);
  CHECK_THROWS_AS(hata_urban_pathloss_db(-1, 30, 1.5, 1.0), Error);
}

TEST_CASE("ITU indoor path loss") {
  CHECK(itu_indoor_pathloss_db(2000, 10, 22, 9) ==
        doctest::Approx(20 * std::log10(2000.0) + 22 + 9 - 28));
  CHECK(itu_indoor_pathloss_db(2000, 10, 22, 9) == doctest::Approx(69.02).epsilon(1e-4));
  CHECK(itu_indoor_pathloss_db(2000, 1, 22, 9) ==
        doctest::Approx(20 * std::log10(2000.0) + 9 - 28));
  CHECK(itu_indoor_pathloss_db(2000, 14, 22, 9) - itu_indoor_pathloss_db(2000, 7, 22, 9) ==
        doctest::Approx(22 * std::log10(2.0)));
  CHECK_THROWS_AS(itu_indoor_pathloss_db(2000, 0.5, 22, 9), Error);
  CHECK(itu_indoor_pathloss_db(2000, 0.5, 22, 9, true) ==
        doctest::Approx(itu_indoor_pathloss_db(2000, 1, 22, 9)));
}

TEST_CASE("thermal noise") {
  const double n = noise_power_linear(-170, 150e3);
  CHECK(mw_to_dbm(n) == doctest::Approx(-118.239).epsilon(1e-5));
  CHECK(n == doctest::Approx(1.5e-12).epsilon(1e-3));
  CHECK(noise_power_linear(-170, 1.0) == doctest::Approx(dbm_to_mw(-170)));
  CHECK(mw_to_dbm(noise_power_linear(-170, 300e3)) - mw_to_dbm(n) ==
        doctest::Approx(10 * std::log10(2.0)));
  CHECK_THROWS_AS(noise_power_linear(-170, 0.0), Error);
}

TEST_CASE("distance floor applies before the path-loss law") {
  RadioEnvironment env;
  CHECK(bs_user_pathloss_db(env, 2.0) == doctest::Approx(bs_user_pathloss_db(env, 10.0)));
  CHECK(user_user_pathloss_db(env, 100.0) ==
        doctest::Approx(hata_reference(2000, 1.5, 1.5, 0.1)));
  CHECK(bs_bs_pathloss_db(env, 300.0) == doctest::Approx(bs_user_pathloss_db(env, 300.0)));
}

TEST_CASE("environment validation names the field") {
  RadioEnvironment env;
  env.num_subchannels = 0;
  try {
    env.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "environment.num_subchannels");
  }
  env = RadioEnvironment{};
  env.cell_radius_m = -1;
  CHECK_THROWS_AS(env.validate(), ConfigError);
}

TEST_CASE("channel realization") {
  RadioEnvironment env;
  env.num_subchannels = 8;
  const Topology t = two_cell_topology();

  SUBCASE("unit fading reproduces path loss") {
    env.unit_fading = true;
    Rng rng = make_rng(3);
    const auto ch = realize_channels(t, env, rng);
    for (int c = 0; c < 2; ++c)
      for (int u = 0; u < 5; ++u)
        for (int n = 0; n < 8; ++n)
          CHECK(ch.g_bs_user(c, u, n) ==
                doctest::Approx(db_to_linear(-bs_user_pathloss_db(
                    env, distance(t.bs_positions[c], t.user_position(u))))));
    CHECK(ch.g_user_user(0, 3, 2) ==
          doctest::Approx(db_to_linear(-user_user_pathloss_db(
              env, distance(t.user_position(0), t.user_position(3))))));
    CHECK(ch.g_bs_bs(0, 1, 0) ==
          doctest::Approx(db_to_linear(-bs_bs_pathloss_db(env, 300.0))));
  }

  SUBCASE("symmetry, positivity and determinism") {
    Rng a = make_rng(9), b = make_rng(9);
    const auto x = realize_channels(t, env, a);
    const auto y = realize_channels(t, env, b);
    CHECK(x.g_bs_user.data() == y.g_bs_user.data());
    CHECK(x.g_user_user.data() == y.g_user_user.data());
    CHECK(x.g_bs_bs.data() == y.g_bs_bs.data());
    for (int u = 0; u < 5; ++u)
      for (int v = 0; v < 5; ++v)
        for (int n = 0; n < 8; ++n) {
          CHECK(x.g_user_user(u, v, n) == x.g_user_user(v, u, n));
          if (u != v) CHECK(x.g_user_user(u, v, n) > 0.0);
        }
    for (double g : x.g_bs_user.data()) CHECK((g > 0.0 && std::isfinite(g)));
    CHECK(x.noise_user.size() == 5);
    CHECK(x.noise_bs.size() == 2);
    CHECK(x.noise_bs[0] == doctest::Approx(noise_power_linear(-170, 150e3)));
  }

  SUBCASE("fading has unit mean") {
    RadioEnvironment wide;
    wide.num_subchannels = 100000;
    Topology one;
    one.bs_positions = {{0, 0}};
    one.user_positions = {{{200, 0}}};
    one.user_cell = {0};
    Rng rng = make_rng(21);
    const auto ch = realize_channels(one, wide, rng);
    const double pl = db_to_linear(-bs_user_pathloss_db(wide, 200.0));
    double mean = 0.0;
    for (int n = 0; n < wide.num_subchannels; ++n) mean += ch.g_bs_user(0, 0, n) / pl;
    mean /= wide.num_subchannels;
    CHECK(std::abs(mean - 1.0) < 0.02);
  }
}

TEST_CASE("single-cell topology keeps users inside the cell") {
  RadioEnvironment env;
  env.cell_radius_m = 250;
  Rng rng = make_rng(4);
  const Topology t = single_cell_topology(env, 30, rng);
  CHECK(t.num_cells() == 1);
  CHECK(t.num_users() == 30);
  for (int u = 0; u < 30; ++u) CHECK(distance(t.user_position(u), {0, 0}) <= 250.0);
  CHECK_NOTHROW(t.validate());
}
