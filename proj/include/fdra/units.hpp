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

#include <cmath>
#include <limits>

namespace fdra {

inline constexpr double kLn2 = 0.69314718055994530942;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double linear) {
  return linear > 0.0 ? 10.0 * std::log10(linear)
                      : -std::numeric_limits<double>::infinity();
}

// dBm and mW share the same 10*log10 law; kept separate for readability at
// call sites.
inline double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
inline double mw_to_dbm(double mw) { return linear_to_db(mw); }

// Self-interference coefficients are configured in dB; -inf means perfect
// cancellation.
inline double beta_from_db(double beta_db) {
  return std::isinf(beta_db) && beta_db < 0 ? 0.0 : db_to_linear(beta_db);
}

// log2(1 + x) without losing precision for small x.
inline double log2_1p(double x) { return std::log1p(x) / kLn2; }

}  // namespace fdra
