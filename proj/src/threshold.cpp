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

#include "fdra/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "fdra/errors.hpp"
#include "fdra/units.hpp"

namespace fdra {

void SymmetricScenario::validate() const {
  for (double x : {p_bs, p_user, n0, g_max, g_a, g_b, g_ab})
    if (!(x > 0) || !std::isfinite(x))
      throw Error("symmetric scenario: fields must be positive and finite");
  if (g_a < g_b) throw Error("symmetric scenario: g_a < g_b");
  if (g_max < g_a) throw Error("symmetric scenario: g_max < g_a");
}

namespace {

double positive_quadratic_root(double a, double b, double c) {
  // Root of a x^2 + b x - c = 0 with a, c > 0, cancellation free.
  double s = std::sqrt(b * b + 4.0 * a * c);
  return b <= 0.0 ? (-b + s) / (2.0 * a) : (2.0 * c) / (b + s);
}

}  // namespace

double beta1(const SymmetricScenario& s) {
  s.validate();
  const double g = s.g_max, pb = s.p_bs, pu = s.p_user, n0 = s.n0;
  double a1 = g * pb * pb * pu;
  double b1 = n0 * g * pu * (pb - pu);
  double c1 = n0 * n0 * g * pu + n0 * g * g * pb * pu;
  return positive_quadratic_root(a1, b1, c1);
}

double beta2(const SymmetricScenario& s) {
  s.validate();
  const double g = s.g_max, pb = s.p_bs, pu = s.p_user, n0 = s.n0;
  double a2 = g * pu * pu * pb;
  double b2 = n0 * g * pb * (pu - pb);
  double c2 = n0 * n0 * g * pb + n0 * g * g * pb * pu;
  return positive_quadratic_root(a2, b2, c2);
}

CubicCoefficients cubic_coefficients(const SymmetricScenario& s) {
  s.validate();
  const double pb = s.p_bs, pu = s.p_user, n0 = s.n0, g = s.g_max;
  const double k1 = n0 + s.g_ab * pu + s.g_a * pb;
  const double k2 = n0 + s.g_ab * pu;
  const double u = n0 + s.g_b * pu;
  const double x1 = n0 + g * pb;
  const double x2 = n0 + g * pu;
  // Quadratic factor; the cubic carries an extra (pb*beta + n0) factor.
  const double q2 = s.g_a * pb * pb * pu;
  const double q1 = k1 * (n0 * pb + pu * u) - k2 * (x1 * pb + x2 * pu);
  const double q0 = k1 * n0 * u - k2 * x1 * x2;
  CubicCoefficients c{pb * q2, pb * q1 + n0 * q2, pb * q0 + n0 * q1, n0 * q0};
  if (!(c.d < 0.0)) throw Error("cubic_coefficients: constant term not negative");
  return c;
}

std::optional<double> smallest_positive_real_root(double a, double b, double c,
                                                  double d) {
  if (a == 0.0 || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
      !std::isfinite(d))
    throw Error("smallest_positive_real_root: invalid coefficients");
  // Rescale x = sigma * y so the monic polynomial has balanced coefficients.
  double sigma = 1.0;
  if (d != 0.0) sigma = std::cbrt(std::abs(d / a));
  else if (c != 0.0) sigma = std::sqrt(std::abs(c / a));
  else if (b != 0.0) sigma = std::abs(b / a);
  const double bb = b / (a * sigma), cc = c / (a * sigma * sigma),
               dd = d / (a * sigma * sigma * sigma);

  auto poly = [&](double y) { return ((y + bb) * y + cc) * y + dd; };
  auto dpoly = [&](double y) { return (3.0 * y + 2.0 * bb) * y + cc; };
  auto polish = [&](double y) {
    for (int it = 0; it < 4; ++it) {
      const double dp = dpoly(y);
      if (dp == 0.0) break;
      const double step = poly(y) / dp;
      if (!std::isfinite(step)) break;
      y -= step;
    }
    return y;
  };

  // One real root from Cardano (or the trigonometric form with three real
  // roots), taking the largest-magnitude one, which is well conditioned.
  const double p = cc - bb * bb / 3.0;
  const double q = 2.0 * bb * bb * bb / 27.0 - bb * cc / 3.0 + dd;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  double r;
  if (disc > 0.0) {
    const double u = -q / 2.0 - std::copysign(std::sqrt(disc), q);
    const double A = std::cbrt(u);
    const double B = A != 0.0 ? -p / (3.0 * A) : 0.0;
    r = A + B - bb / 3.0;
  } else {
    const double m = 2.0 * std::sqrt(std::max(-p / 3.0, 0.0));
    const double arg = m > 0.0 ? std::clamp(3.0 * q / (p * m), -1.0, 1.0) : 0.0;
    const double theta = std::acos(arg) / 3.0;
    r = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double y = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - bb / 3.0;
      if (std::abs(y) > std::abs(r)) r = y;
    }
  }
  r = polish(r);

  // Deflate: y^3 + bb y^2 + cc y + dd = (y - r)(y^2 + e y + f).
  std::vector<double> cand{r};
  const double e = bb + r;
  const double f = r != 0.0 ? -dd / r : cc + r * e;
  const double qd = e * e - 4.0 * f;
  const double qtol = 1e-12 * (e * e + 4.0 * std::abs(f));
  if (qd >= -qtol) {
    const double sq = std::sqrt(std::max(qd, 0.0));
    const double t = -0.5 * (e + std::copysign(sq, e));
    if (t != 0.0) {
      cand.push_back(t);
      cand.push_back(f / t);
    } else {
      cand.push_back(0.0);
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (double y : cand) {
    y = polish(y);
    if (y > 0.0) best = std::min(best, y);
  }
  if (!std::isfinite(best)) return std::nullopt;
  return best * sigma;
}

ThresholdResult threshold(const SymmetricScenario& s) {
  ThresholdResult r;
  r.beta1 = beta1(s);
  r.beta2 = beta2(s);
  const auto c = cubic_coefficients(s);
  auto root = smallest_positive_real_root(c.a, c.b, c.c, c.d);
  r.beta3 = root ? *root : std::numeric_limits<double>::infinity();
  r.beta_threshold = std::min({r.beta1, r.beta2, r.beta3});
  return r;
}

double rate_full_duplex(const SymmetricScenario& s, double beta) {
  return log2_1p(s.g_max * s.p_bs / (s.n0 + beta * s.p_user)) +
         log2_1p(s.g_max * s.p_user / (s.n0 + beta * s.p_bs));
}

double rate_downlink(const SymmetricScenario& s) {
  return log2_1p(s.g_max * s.p_bs / s.n0);
}

double rate_uplink(const SymmetricScenario& s) {
  return log2_1p(s.g_max * s.p_user / s.n0);
}

double rate_pair(const SymmetricScenario& s, double beta) {
  return log2_1p(s.g_a * s.p_bs / (s.n0 + s.g_ab * s.p_user)) +
         log2_1p(s.g_b * s.p_user / (s.n0 + beta * s.p_bs));
}

bool full_duplex_advantage(const SymmetricScenario& s, double beta) {
  const double rf = rate_full_duplex(s, beta);
  return rf > rate_downlink(s) && rf > rate_uplink(s) && rf > rate_pair(s, beta);
}

SymmetricScenario draw_symmetric_scenario(const ThresholdSetup& setup, Rng& rng) {
  const RadioEnvironment& env = setup.env;
  if (setup.users < 2) throw Error("threshold: at least two users required");
  std::exponential_distribution<double> fading(1.0);
  auto fade = [&] { return env.unit_fading ? 1.0 : fading(rng); };
  const Point bs{0.0, 0.0};
  auto pos = place_uniform_disk(rng, bs, env.cell_radius_m, setup.users);
  std::vector<double> g(setup.users);
  for (int i = 0; i < setup.users; ++i)
    g[i] = db_to_linear(-bs_user_pathloss_db(env, distance(bs, pos[i]))) * fade();
  int ia = 0, ib = 1;
  if (g[ib] > g[ia]) std::swap(ia, ib);
  for (int i = 2; i < setup.users; ++i) {
    if (g[i] > g[ia]) {
      ib = ia;
      ia = i;
    } else if (g[i] > g[ib]) {
      ib = i;
    }
  }
  Point pa = pos[ia], pb = pos[ib];
  if (setup.placement == PairPlacement::Independent) {
    auto pair = place_uniform_disk(rng, bs, env.cell_radius_m, 2);
    pa = pair[0];
    pb = pair[1];
  }
  SymmetricScenario s;
  const int N = env.num_subchannels;
  s.p_bs = setup.bs_power_mw / N;
  s.p_user = setup.users * setup.ue_power_mw / N;
  s.n0 = noise_power_linear(env.noise_density_dbm_hz, env.subchannel_bw_hz);
  s.g_a = g[ia];
  s.g_b = g[ib];
  s.g_max = g[ia];
  s.g_ab = db_to_linear(-user_user_pathloss_db(env, distance(pa, pb))) * fade();
  return s;
}

std::vector<double> monte_carlo_threshold_cdf(const ThresholdSetup& setup, int draws,
                                              Rng& rng) {
  if (draws < 1) throw Error("threshold: draws must be >= 1");
  std::vector<double> out;
  out.reserve(draws);
  for (int i = 0; i < draws; ++i)
    out.push_back(threshold(draw_symmetric_scenario(setup, rng)).beta_threshold);
  std::sort(out.begin(), out.end());
  return out;
}

double empirical_cdf(const std::vector<double>& sorted, double x) {
  if (sorted.empty()) return 0.0;
  auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

}  // namespace fdra
