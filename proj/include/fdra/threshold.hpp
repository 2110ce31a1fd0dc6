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
#include <vector>

#include "fdra/channel_model.hpp"
#include "fdra/rng.hpp"

namespace fdra {

// Sum-rate single-cell abstraction with equal per-sub-channel powers and
// equal noise at every receiver.
struct SymmetricScenario {
  double p_bs = 1.0;
  double p_user = 1.0;
  double n0 = 1.0;
  double g_max = 1.0;
  double g_a = 1.0;
  double g_b = 1.0;
  double g_ab = 1.0;

  // Requires positive finite fields and g_max >= g_a >= g_b.
  void validate() const;
};

struct ThresholdResult {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;  // +inf when the cubic has no positive root
  double beta_threshold = 0.0;
};

struct CubicCoefficients {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

double beta1(const SymmetricScenario& s);
double beta2(const SymmetricScenario& s);

// Cubic whose negative region in beta is where one full-duplex user beats
// a downlink/uplink pair. Throws Error if the constant term is not negative.
CubicCoefficients cubic_coefficients(const SymmetricScenario& s);

// Closed-form smallest positive real root via Cardano's construction.
std::optional<double> smallest_positive_real_root(double a, double b, double c,
                                                  double d);

ThresholdResult threshold(const SymmetricScenario& s);

// The three comparisons the threshold is built from, at a given beta.
double rate_full_duplex(const SymmetricScenario& s, double beta);
double rate_downlink(const SymmetricScenario& s);
double rate_uplink(const SymmetricScenario& s);
double rate_pair(const SymmetricScenario& s, double beta);
bool full_duplex_advantage(const SymmetricScenario& s, double beta);

enum class PairPlacement { Realized, Independent };

struct ThresholdSetup {
  RadioEnvironment env;
  int users = 20;
  double bs_power_mw = 0.0;
  double ue_power_mw = 0.0;
  PairPlacement placement = PairPlacement::Realized;
};

// One random scenario drawn from the cell geometry of `setup`.
SymmetricScenario draw_symmetric_scenario(const ThresholdSetup& setup, Rng& rng);

// Sorted thresholds of `draws` independent scenarios.
std::vector<double> monte_carlo_threshold_cdf(const ThresholdSetup& setup, int draws,
                                              Rng& rng);

// Fraction of sorted samples at or below x.
double empirical_cdf(const std::vector<double>& sorted, double x);

}  // namespace fdra
