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

#include <numeric>
#include <random>

#include "fdra/baselines.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fdra;

TEST_CASE("scheme names round-trip") {
  for (auto k : {SchemeKind::HD_D, SchemeKind::HD_U, SchemeKind::HHD, SchemeKind::FD_HD,
                 SchemeKind::FD_FD, SchemeKind::UpperBound})
    CHECK(parse_scheme(scheme_name(k)) == k);
  CHECK(std::string(scheme_name(SchemeKind::UpperBound)) == "UB");
  CHECK(std::string(scheme_name(SchemeKind::HD_D)) == "HD-D");
  CHECK_FALSE(parse_scheme("FD").has_value());
}

TEST_CASE("multi-level water-filling") {
  CHECK(multilevel_waterfill({2.0}, {1.0}, {1.0}, 5.0) == std::vector<double>{5.0});
  const auto eq = multilevel_waterfill({1, 1}, {1, 1}, {1, 1}, 4.0);
  CHECK(eq[0] == doctest::Approx(2.0));
  CHECK(eq[1] == doctest::Approx(2.0));
  const auto none = multilevel_waterfill({1, 3}, {1, 2}, {1, 1}, 0.0);
  CHECK(none[0] == 0.0);
  CHECK(none[1] == 0.0);
  CHECK(multilevel_waterfill({0.0, 1.0}, {1, 1}, {1, 1}, 3.0)[0] == 0.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto rate = [](const std::vector<double>& g, const std::vector<double>& w,
                 const std::vector<double>& n, const std::vector<double>& p) {
    double r = 0;
    for (std::size_t i = 0; i < p.size(); ++i) r += w[i] * std::log2(1 + g[i] * p[i] / n[i]);
    return r;
  };
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + static_cast<int>(u(rng) * 20);
    std::vector<double> g(m), w(m), n(m);
    for (int i = 0; i < m; ++i) {
      g[i] = std::pow(10.0, -2 + 4 * u(rng));
      w[i] = 0.2 + u(rng);
      n[i] = std::pow(10.0, -1 + 2 * u(rng));
    }
    const double budget = std::pow(10.0, -1 + 3 * u(rng));
    const auto p = multilevel_waterfill(g, w, n, budget);
    CHECK(oracle::waterfill_kkt_residual(g, w, n, budget, p) <= 1e-8);
    const auto ref = oracle::waterfill_bisection(g, w, n, budget);
    for (int i = 0; i < m; ++i) CHECK(std::abs(p[i] - ref[i]) <= 1e-9 * budget);
    // No feasible perturbation improves the objective.
    const double best = rate(g, w, n, p);
    for (int k = 0; k < 10; ++k) {
      std::vector<double> q(m);
      double s = 0;
      for (int i = 0; i < m; ++i) s += (q[i] = std::max(0.0, p[i] + 0.05 * budget * (u(rng) - 0.5)));
      for (auto& x : q) x *= budget / s;
      CHECK(rate(g, w, n, q) <= best + 1e-12 * std::max(1.0, best));
    }
  }
}

TEST_CASE("scheme outputs respect the cell constraints") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CellSetup s = fixture::indoor_cell(8, seed, -90);
    for (int k = 0; k < 8; k += 3) s.caps[k] = Duplex::HalfDuplex;
    for (int kind = 0; kind < 5; ++kind) {
      const auto o = run_scheme(static_cast<SchemeKind>(kind), s);
      CHECK(satisfies_constraints(s, o.assign, o.powers, 1e-6));
      CHECK(o.rates.weighted == doctest::Approx(evaluate_rates(s, o.assign, o.powers).weighted));
      CHECK(o.rates.weighted >= 0.0);
    }
    const auto hhd = run_scheme(SchemeKind::HHD, s);
    for (int n = 0; n < s.N(); ++n)
      CHECK_FALSE((hhd.assign.dl_user[n] >= 0 && hhd.assign.ul_user[n] >= 0));
    const auto hdd = run_scheme(SchemeKind::HD_D, s);
    const auto hdu = run_scheme(SchemeKind::HD_U, s);
    for (int n = 0; n < s.N(); ++n) {
      CHECK(hdd.assign.ul_user[n] == -1);
      CHECK(hdu.assign.dl_user[n] == -1);
    }
    const auto ub = run_scheme(SchemeKind::UpperBound, s);
    CHECK(ub.rates.weighted == doctest::Approx(hdd.rates.weighted + hdu.rates.weighted));
  }
}

TEST_CASE("scheme ordering over seeds") {
  int hhd_violations = 0, ub_violations = 0, trials = 0;
  double fdfd = 0, fdhd = 0, hhd = 0;
  for (int indoor = 0; indoor < 2; ++indoor)
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const CellSetup s = indoor ? fixture::indoor_cell(10, seed, -100)
                                 : fixture::outdoor_cell(10, seed, -120);
      double r[6];
      for (int k = 0; k < 6; ++k) r[k] = run_scheme(static_cast<SchemeKind>(k), s).rates.weighted;
      ++trials;
      CHECK(r[3] >= r[0] - 1e-9);
      CHECK(r[3] >= r[1] - 1e-9);
      for (int k = 0; k < 4; ++k) CHECK(r[5] >= r[k] - 1e-9);
      hhd_violations += r[3] < r[2] - 1e-9;
      ub_violations += r[5] < r[4] - 1e-9;
      fdfd += r[4];
      fdhd += r[3];
      hhd += r[2];
    }
  CHECK(hhd_violations < 0.05 * trials);
  CHECK(fdfd >= fdhd);
  CHECK(fdhd >= hhd);
  MESSAGE("FD-FD above UB on " << ub_violations << " of " << trials << " drops");
}

TEST_CASE("perfect cancellation on a symmetric toy reaches the upper bound") {
  // Two users with identical flat channels and negligible coupling.
  CellSetup s;
  s.ch.K = 2;
  s.ch.N = 4;
  s.ch.g.assign(8, 1.0);
  s.ch.g_uu.assign(16, 0.0);
  s.ch.noise_user.assign(2, 1.0);
  s.ch.noise_bs = 1.0;
  s.caps.assign(2, Duplex::FullDuplex);
  s.w.assign(2, 1.0);
  s.v.assign(2, 1.0);
  s.p_bs = 8.0;
  s.p_user.assign(2, 4.0);
  s.beta = 0.0;
  const double fd = run_scheme(SchemeKind::FD_FD, s).rates.weighted;
  const double ub = run_scheme(SchemeKind::UpperBound, s).rates.weighted;
  CHECK(fd == doctest::Approx(ub).epsilon(1e-4));
}
