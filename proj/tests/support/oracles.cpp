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


#include "oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {
double lg2(double x) { return std::log(x) / std::log(2.0); }
}  // namespace

double pair_objective(const fdra::PairProblem& pr, double p_d, double p_u) {
  double sinr_d = pr.g_d * p_d / (pr.n_d + pr.inter * p_u);
  double sinr_u = pr.g_u * p_u / (pr.n_b + pr.beta * p_d);
  return pr.w * lg2(1.0 + sinr_d) + pr.v * lg2(1.0 + sinr_u);
}

double pair_grid_max(const fdra::PairProblem& pr, int points) {
  const bool dl_only = pr.mode == fdra::PairMode::DownlinkOnly;
  const bool ul_only = pr.mode == fdra::PairMode::UplinkOnly;
  const bool either = pr.mode == fdra::PairMode::EitherDirection;
  const double sd = pr.pmax_d / (points - 1), su = pr.pmax_u / (points - 1);
  double best = 0.0;
  // Split L = w*[log(n_d + I pu + g pd) - log(n_d + I pu)] + v*[...].
  std::vector<double> pd(points), pu(points), den_d(points), den_u(points);
  for (int i = 0; i < points; ++i) {
    pd[i] = i == points - 1 ? pr.pmax_d : i * sd;
    pu[i] = i == points - 1 ? pr.pmax_u : i * su;
    den_d[i] = pr.n_d + pr.inter * pu[i];  // indexed by uplink power
    den_u[i] = pr.n_b + pr.beta * pd[i];   // indexed by downlink power
  }
  for (int i = 0; i < points; ++i) {
    if (ul_only && i > 0) break;
    for (int j = 0; j < points; ++j) {
      if (dl_only && j > 0) break;
      if (either && i > 0 && j > 0) break;
      double v = pr.w * std::log1p(pr.g_d * pd[i] / den_d[j]) +
                 pr.v * std::log1p(pr.g_u * pu[j] / den_u[i]);
      best = std::max(best, v);
    }
  }
  return best / std::log(2.0);
}

std::vector<double> finite_difference_grad_h(const fdra::PowerProgram& prog,
                                             const std::vector<double>& p,
                                             const std::vector<double>& scale,
                                             double rel_step) {
  std::vector<double> g(p.size());
  std::vector<double> x = p;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double h = rel_step * scale[i];
    x[i] = p[i] + h;
    const double fp = fdra::eval_h(prog, x);
    x[i] = p[i] - h;
    const double fm = fdra::eval_h(prog, x);
    x[i] = p[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

std::vector<double> waterfill_bisection(const std::vector<double>& gains,
                                        const std::vector<double>& weights,
                                        const std::vector<double>& noise, double budget) {
  const std::size_t n = gains.size();
  std::vector<double> p(n, 0.0);
  if (budget <= 0.0) return p;
  // p_i(mu) = (w_i * mu - noise_i / g_i)^+ with mu = 1 / lambda, increasing.
  auto fill = [&](double mu) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (gains[i] > 0 && weights[i] > 0)
        s += std::max(0.0, weights[i] * mu - noise[i] / gains[i]);
    return s;
  };
  double hi = 1.0;
  while (fill(hi) < budget) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 300; ++it) {
    double mid = 0.5 * (lo + hi);
    (fill(mid) < budget ? lo : hi) = mid;
  }
  const double mu = 0.5 * (lo + hi);
  for (std::size_t i = 0; i < n; ++i)
    if (gains[i] > 0 && weights[i] > 0)
      p[i] = std::max(0.0, weights[i] * mu - noise[i] / gains[i]);
  return p;
}

double waterfill_kkt_residual(const std::vector<double>& gains,
                              const std::vector<double>& weights,
                              const std::vector<double>& noise, double budget,
                              const std::vector<double>& p) {
  double lambda = 0.0, sum = 0.0;
  int active = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += p[i];
    if (p[i] > 0) {
      lambda += weights[i] * gains[i] / (noise[i] + gains[i] * p[i]);
      ++active;
    }
  }
  if (active == 0) return budget > 0 ? 1.0 : 0.0;
  lambda /= active;
  double r = std::abs(sum - budget) / budget;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0) return 1.0;
    if (gains[i] <= 0 || weights[i] <= 0) continue;
    const double slope = weights[i] * gains[i] / (noise[i] + gains[i] * p[i]);
    if (p[i] > 0) r = std::max(r, std::abs(slope - lambda) / lambda);
    else r = std::max(r, std::max(0.0, slope - lambda) / lambda);
  }
  return r;
}

std::vector<double> cubic_real_roots(double a, double b, double c, double d) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 0) = -b / a;
  m(0, 1) = -c / a;
  m(0, 2) = -d / a;
  m(1, 0) = 1.0;
  m(2, 1) = 1.0;
  Eigen::EigenSolver<Eigen::Matrix3d> es(m, false);
  std::vector<double> out;
  for (int i = 0; i < 3; ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-7 * std::max(1.0, std::abs(z))) continue;
    long double x = z.real();
    for (int it = 0; it < 8; ++it) {
      const long double f = ((a * x + b) * x + c) * x + d;
      const long double df = (3.0L * a * x + 2.0L * b) * x + c;
      if (df == 0.0L) break;
      x -= f / df;
    }
    out.push_back(static_cast<double>(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<double> smallest_positive_root(double a, double b, double c, double d) {
  for (double r : cubic_real_roots(a, b, c, d))
    if (r > 0) return r;
  return std::nullopt;
}

fdra::CubicCoefficients expanded_cubic(const fdra::SymmetricScenario& s) {
  const double Pb = s.p_bs, Pu = s.p_user, N0 = s.n0, gf = s.g_max, ga = s.g_a,
               gb = s.g_b, gab = s.g_ab;
  fdra::CubicCoefficients k;
  k.a = Pb * Pb * Pb * Pu * ga;
  k.b = Pu * Pu * Pb * gb * N0 + Pu * Pu * Pu * Pb * gb * gab + Pu * Pu * Pb * Pb * gb * ga +
        Pb * Pb * Pu * ga * N0 + Pb * Pb * Pb * ga * N0 - Pu * Pu * Pb * gf * N0 -
        Pb * Pb * Pb * gf * N0 - gf * Pb * Pb * Pb * Pu * gab - Pu * Pu * Pu * Pb * gf * gab;
  k.c = Pu * Pu * Pb * gb * N0 * ga + Pu * Pu * Pu * gab * N0 * gb + Pu * Pu * N0 * N0 * gb +
        Pu * Pb * N0 * N0 * ga + Pb * Pb * Pu * gb * N0 * ga + Pu * Pu * Pb * gb * N0 * gab +
        N0 * N0 * Pb * gb * Pu + 2 * N0 * N0 * Pb * Pb * ga - Pu * Pu * Pu * gf * gab * N0 -
        Pb * Pb * gf * gab * N0 * Pu - Pb * Pb * gf * gf * N0 * Pu - N0 * N0 * gf * Pb * Pu -
        2 * Pb * Pb * N0 * N0 * gf - Pu * Pu * N0 * N0 * gf - Pb * Pb * Pu * gf * gab * N0 -
        Pb * gab * Pu * Pu * N0 * gf - gf * gf * Pb * Pb * Pu * Pu * gab;
  k.d = Pb * N0 * N0 * N0 * ga + Pu * N0 * N0 * N0 * gb + Pu * Pu * N0 * N0 * gb * gab +
        Pu * Pb * N0 * N0 * gb * ga - Pu * Pu * N0 * gf * gf * gab * Pb -
        Pu * Pu * gf * N0 * N0 * gab - Pu * gf * N0 * N0 * gab * Pb -
        Pu * gf * gf * N0 * N0 * Pb - Pu * gf * N0 * N0 * N0 - Pb * gf * N0 * N0 * N0;
  return k;
}

double cell_weighted_rate(const fdra::CellSetup& s, const fdra::FixedAssignment& a,
                          const fdra::PowerVector& p) {
  double total = 0.0;
  for (int n = 0; n < s.N(); ++n) {
    const int k = a.dl_user[n], j = a.ul_user[n];
    const double pd = k >= 0 ? p.dl[n] : 0.0;
    const double pu = j >= 0 ? p.ul[n] : 0.0;
    if (k >= 0) {
      const double coupling = j < 0 ? 0.0 : (k == j ? s.beta : s.ch.uu(k, j, n));
      total += s.w[k] * lg2(1.0 + s.ch.gain(k, n) * pd / (s.ch.n_user(k, n) + coupling * pu));
    }
    if (j >= 0)
      total += s.v[j] * lg2(1.0 + s.ch.gain(j, n) * pu / (s.ch.n_bs(n) + s.beta * pd));
  }
  return total;
}

double exhaustive_two_user(const fdra::CellSetup& s, int levels) {
  const int L = levels, D = L + 1;
  const double ninf = -std::numeric_limits<double>::infinity();
  auto at = [D](int a, int b, int c) { return (static_cast<std::size_t>(a) * D + b) * D + c; };
  std::vector<double> dp(static_cast<std::size_t>(D) * D * D, ninf), next;
  dp[at(0, 0, 0)] = 0.0;
  std::vector<std::pair<int, int>> options;
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j)
      if (k != j || s.caps[k] == fdra::Duplex::FullDuplex) options.emplace_back(k, j);

  std::vector<double> value(static_cast<std::size_t>(D) * D);
  for (int n = 0; n < s.N(); ++n) {
    next.assign(dp.size(), ninf);
    for (auto [k, j] : options) {
      const double coupling = k == j ? s.beta : s.ch.uu(k, j, n);
      for (int qd = 0; qd <= L; ++qd)
        for (int qu = 0; qu <= L; ++qu) {
          const double pd = s.p_bs * qd / L, pu = s.p_user[j] * qu / L;
          value[qd * D + qu] =
              s.w[k] * lg2(1.0 + s.ch.gain(k, n) * pd / (s.ch.n_user(k, n) + coupling * pu)) +
              s.v[j] * lg2(1.0 + s.ch.gain(j, n) * pu / (s.ch.n_bs(n) + s.beta * pd));
        }
      for (int qd = 0; qd <= L; ++qd)
        for (int qu = 0; qu <= L; ++qu) {
          const double v = value[qd * D + qu];
          for (int a = 0; a + qd <= L; ++a) {
            if (j == 0) {
              for (int b = 0; b + qu <= L; ++b) {
                const double* src = &dp[at(a, b, 0)];
                double* dst = &next[at(a + qd, b + qu, 0)];
                for (int c = 0; c < D; ++c) dst[c] = std::max(dst[c], src[c] + v);
              }
            } else {
              for (int b = 0; b < D; ++b) {
                const double* src = &dp[at(a, b, 0)];
                double* dst = &next[at(a + qd, b, qu)];
                for (int c = 0; c + qu <= L; ++c) dst[c] = std::max(dst[c], src[c] + v);
              }
            }
          }
        }
    }
    dp.swap(next);
  }
  return *std::max_element(dp.begin(), dp.end());
}

}  // namespace oracle
