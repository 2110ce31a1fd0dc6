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

#include "fdra/channel_model.hpp"

namespace fdra {

enum class Duplex { HalfDuplex, FullDuplex };
enum class BsDuplex { HalfDuplex, FullDuplex, HybridHD };

// One cell seen in isolation, with local user indices 0..K-1. Foreign-cell
// interference enters through the additive noise terms.
struct CellChannel {
  int K = 0;
  int N = 0;
  std::vector<double> g;           // [k*N + n]
  std::vector<double> g_uu;        // [(k*K + j)*N + n]
  std::vector<double> noise_user;  // [k]
  double noise_bs = 0.0;
  std::vector<double> extra_user;  // [k*N + n], empty means zero
  std::vector<double> extra_bs;    // [n], empty means zero

  double gain(int k, int n) const { return g[static_cast<std::size_t>(k) * N + n]; }
  double uu(int k, int j, int n) const {
    return g_uu[(static_cast<std::size_t>(k) * K + j) * N + n];
  }
  double n_user(int k, int n) const {
    return noise_user[k] +
           (extra_user.empty() ? 0.0 : extra_user[static_cast<std::size_t>(k) * N + n]);
  }
  double n_bs(int n) const { return noise_bs + (extra_bs.empty() ? 0.0 : extra_bs[n]); }
};

// Extract the view of `cell` from a multi-cell realization. `users` lists
// the global indices of the cell's users in local order.
CellChannel cell_channel(const ChannelRealization& ch, int cell,
                         const std::vector<int>& users);

struct CellSetup {
  CellChannel ch;
  std::vector<Duplex> caps;   // per user
  BsDuplex bs = BsDuplex::FullDuplex;
  std::vector<double> w;      // downlink weights
  std::vector<double> v;      // uplink weights
  double p_bs = 0.0;          // BS budget, mW
  std::vector<double> p_user; // per-user budgets, mW
  double beta = 0.0;

  int K() const { return ch.K; }
  int N() const { return ch.N; }
  // Coupling from uplink user j onto downlink user k.
  double coupling(int k, int j, int n) const { return k == j ? beta : ch.uu(k, j, n); }
  void validate() const;
};

// Per-sub-channel user choice; -1 marks an unused direction.
struct FixedAssignment {
  std::vector<int> dl_user;
  std::vector<int> ul_user;
  int N() const { return static_cast<int>(dl_user.size()); }
  bool operator==(const FixedAssignment&) const = default;
};

struct PowerVector {
  std::vector<double> dl;
  std::vector<double> ul;
};

struct RateBreakdown {
  double weighted = 0.0;  // weighted sum-rate objective
  double dl = 0.0;        // unweighted downlink total
  double ul = 0.0;        // unweighted uplink total
};

RateBreakdown evaluate_rates(const CellSetup& setup, const FixedAssignment& a,
                             const PowerVector& p);

// Checks one-user-per-direction, the half-duplex rule, non-negative powers
// and both budget families (with absolute slack `tol`).
bool satisfies_constraints(const CellSetup& setup, const FixedAssignment& a,
                           const PowerVector& p, double tol = 1e-9);

}  // namespace fdra
