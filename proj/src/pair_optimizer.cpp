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

#include "fdra/pair_optimizer.hpp"

#include <cmath>

#include "fdra/errors.hpp"
#include "fdra/units.hpp"

namespace fdra {

const char* candidate_name(Candidate c) {
  switch (c) {
    case Candidate::Idle: return "idle";
    case Candidate::UplinkOnly: return "uplink_only";
    case Candidate::DownlinkOnly: return "downlink_only";
    case Candidate::BothFull: return "both_full";
    case Candidate::DownlinkInterior: return "downlink_interior";
    case Candidate::UplinkInterior: return "uplink_interior";
  }
  return "unknown";
}

void PairProblem::validate() const {
  auto nonneg = [](double x) { return std::isfinite(x) && x >= 0.0; };
  if (!nonneg(w) || !nonneg(v)) throw Error("pair: weights must be >= 0");
  if (!nonneg(g_d) || !nonneg(g_u) || !nonneg(inter))
    throw Error("pair: gains must be >= 0");
  if (!(n_d > 0) || !(n_b > 0) || !std::isfinite(n_d) || !std::isfinite(n_b))
    throw Error("pair: noises must be positive");
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error("pair: beta outside [0,1]");
  if (!nonneg(pmax_d) || !nonneg(pmax_u)) throw Error("pair: caps must be >= 0");
}

double objective_L(const PairProblem& pr, double p_d, double p_u) {
  double dl = pr.g_d * p_d / (pr.n_d + pr.inter * p_u);
  double ul = pr.g_u * p_u / (pr.n_b + pr.beta * p_d);
  return pr.w * log2_1p(dl) + pr.v * log2_1p(ul);
}

std::optional<double> quadratic_smaller_root(double a, double b, double c) {
  if (!(a > 0.0)) return std::nullopt;
  double disc = b * b - 4.0 * a * c;
  if (!(disc >= 0.0)) return std::nullopt;
  double s = std::sqrt(disc);
  // Cancellation-free form of (-b - s) / 2a.
  if (b >= 0.0) return (-b - s) / (2.0 * a);
  return (2.0 * c) / (-b + s);
}

Quadratic downlink_coefficients(const PairProblem& pr, double p_u) {
  const double w = pr.w, v = pr.v, g = pr.g_d, gj = pr.g_u, beta = pr.beta;
  const double n0 = pr.n_b, nk = pr.n_d, in = pr.inter;
  return {w * g * beta * beta,
          2.0 * w * n0 * g * beta + (w - v) * beta * g * gj * p_u,
          w * g * n0 * n0 + w * g * gj * n0 * p_u - v * gj * beta * nk * p_u -
              v * gj * beta * in * p_u * p_u};
}

Quadratic uplink_coefficients(const PairProblem& pr, double p_d) {
  const double w = pr.w, v = pr.v, g = pr.g_d, gj = pr.g_u, beta = pr.beta;
  const double n0 = pr.n_b, nk = pr.n_d, in = pr.inter;
  return {v * gj * in * in,
          2.0 * v * nk * gj * in + (v - w) * in * g * gj * p_d,
          v * gj * nk * nk + v * g * gj * nk * p_d - w * g * in * n0 * p_d -
              w * g * in * beta * p_d * p_d};
}

PairSolution solve_pair(const PairProblem& pr) {
  const double p1 = pr.pmax_d, p2 = pr.pmax_u;
  PairSolution best;
  bool have = false;
  auto consider = [&](double pd, double pu, Candidate tag) {
    double val = objective_L(pr, pd, pu);
    if (!have || val > best.value) {
      best = {pd, pu, val, tag};
      have = true;
    }
  };
  if (p1 == 0.0 && p2 == 0.0) return best;

  switch (pr.mode) {
    case PairMode::DownlinkOnly:
      consider(0.0, 0.0, Candidate::Idle);
      consider(p1, 0.0, Candidate::DownlinkOnly);
      return best;
    case PairMode::UplinkOnly:
      consider(0.0, 0.0, Candidate::Idle);
      consider(0.0, p2, Candidate::UplinkOnly);
      return best;
    case PairMode::EitherDirection:
      consider(0.0, p2, Candidate::UplinkOnly);
      consider(p1, 0.0, Candidate::DownlinkOnly);
      return best;
    case PairMode::FullPair:
      break;
  }
  consider(0.0, p2, Candidate::UplinkOnly);
  consider(p1, 0.0, Candidate::DownlinkOnly);
  consider(p1, p2, Candidate::BothFull);
  auto q = downlink_coefficients(pr, p2);
  if (auto r = quadratic_smaller_root(q.a, q.b, q.c); r && *r > 0.0 && *r < p1)
    consider(*r, p2, Candidate::DownlinkInterior);
  q = uplink_coefficients(pr, p1);
  if (auto r = quadratic_smaller_root(q.a, q.b, q.c); r && *r > 0.0 && *r < p2)
    consider(p1, *r, Candidate::UplinkInterior);
  return best;
}

}  // namespace fdra
