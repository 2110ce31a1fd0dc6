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

#include <optional>

namespace fdra {

// EitherDirection allows one direction only per sub-channel; it models the
// hybrid half-duplex BS and the lone half-duplex user.
enum class PairMode { FullPair, DownlinkOnly, UplinkOnly, EitherDirection };

enum class Candidate {
  Idle,              // (0, 0)
  UplinkOnly,        // (0, P2)
  DownlinkOnly,      // (P1, 0)
  BothFull,          // (P1, P2)
  DownlinkInterior,  // (p_d stationary, P2)
  UplinkInterior,    // (P1, p_u stationary)
};

const char* candidate_name(Candidate c);

struct PairProblem {
  double w = 1.0;      // downlink weight
  double v = 1.0;      // uplink weight
  double g_d = 0.0;    // BS -> downlink user
  double g_u = 0.0;    // uplink user -> BS
  double inter = 0.0;  // uplink user -> downlink user coupling
  double beta = 0.0;   // BS self-interference
  double n_d = 1.0;    // downlink receiver noise
  double n_b = 1.0;    // BS receiver noise
  double pmax_d = 0.0;
  double pmax_u = 0.0;
  PairMode mode = PairMode::FullPair;

  // Throws fdra::Error on violated invariants.
  void validate() const;
};

struct PairSolution {
  double p_d = 0.0;
  double p_u = 0.0;
  double value = 0.0;
  Candidate tag = Candidate::Idle;
};

struct Quadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

double objective_L(const PairProblem& pr, double p_d, double p_u);

std::optional<double> quadratic_smaller_root(double a, double b, double c);

// Stationarity polynomial of L in p_d with p_u held fixed.
Quadratic downlink_coefficients(const PairProblem& pr, double p_u);
// Stationarity polynomial of L in p_u with p_d held fixed.
Quadratic uplink_coefficients(const PairProblem& pr, double p_d);

PairSolution solve_pair(const PairProblem& pr);

}  // namespace fdra
