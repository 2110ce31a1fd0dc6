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

// Log-barrier Newton method for the DC surrogate. Variables are scaled by
// their group budget so every coordinate lives in (0, 1); each rate term is
// written as log(1 + e'y) after dividing by its noise.

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fdra/errors.hpp"
#include "fdra/power_program.hpp"
#include "fdra/units.hpp"

namespace fdra {

namespace {

constexpr int kMaxLocalSteps = 12;

struct LogTerm {
  double coef = 0.0;  // multiplies the natural log
  std::vector<std::pair<int, double>> e;
};

struct ConstraintBlock {
  std::vector<LogTerm> terms;
  std::vector<std::pair<int, double>> d;  // linearized h, scaled
  double kappa = 0.0;
  double target = 0.0;
};

class Barrier {
 public:
  Barrier(const PowerProgram& prog, const std::vector<double>& p_t)
      : prog_(prog), active_(prog.num_vars, -1) {
    for (const auto& g : prog.groups) {
      if (!(g.budget > 0.0)) continue;
      std::vector<int> idx;
      for (int v : g.vars) {
        active_[v] = na_++;
        scale_.push_back(g.budget);
        var_of_.push_back(v);
        idx.push_back(active_[v]);
      }
      groups_.push_back(std::move(idx));
    }
    nc_ = static_cast<int>(prog.rate_targets.size());
    nz_ = na_ + nc_;
    barrier_terms_ = na_ + static_cast<int>(groups_.size()) + 2 * nc_;

    auto gradient_of_h = [&](int sel) {
      std::vector<double> g(prog.num_vars, 0.0);
      double h = 0.0;
      for (const auto& l : prog.links) {
        if (l.constraint != sel) continue;
        double den = l.noise;
        for (const auto& t : l.interference) den += t.gain * p_t[t.var];
        h += l.weight * std::log2(den);
        for (const auto& t : l.interference)
          g[t.var] += l.weight * t.gain / (kLn2 * den);
      }
      return std::make_pair(h, g);
    };

    objective_.resize(0);
    c_obj_.assign(na_, 0.0);
    blocks_.resize(nc_);
    for (const auto& l : prog.links) {
      LogTerm term{l.weight / kLn2, {}};
      auto add = [&](int var, double gain) {
        int a = active_[var];
        if (a < 0 || gain == 0.0) return;
        term.e.emplace_back(a, gain * scale_[a] / l.noise);
      };
      add(l.signal_var, l.signal_gain);
      for (const auto& t : l.interference) add(t.var, t.gain);
      if (l.constraint < 0) {
        objective_const_ += l.weight * std::log2(l.noise);
        objective_.push_back(std::move(term));
      } else {
        blocks_[l.constraint].kappa += l.weight * std::log2(l.noise);
        blocks_[l.constraint].terms.push_back(std::move(term));
      }
    }
    auto [h_obj, g_obj] = gradient_of_h(-1);
    objective_const_ -= h_obj;
    for (int v = 0; v < prog.num_vars; ++v) {
      objective_const_ += g_obj[v] * p_t[v];
      if (active_[v] >= 0) c_obj_[active_[v]] = g_obj[v] * scale_[active_[v]];
    }
    for (int c = 0; c < nc_; ++c) {
      auto [h_c, g_c] = gradient_of_h(c);
      ConstraintBlock& b = blocks_[c];
      b.target = prog.rate_targets[c];
      b.kappa -= h_c;
      for (int v = 0; v < prog.num_vars; ++v) {
        b.kappa += g_c[v] * p_t[v];
        if (active_[v] >= 0 && g_c[v] != 0.0)
          b.d.emplace_back(active_[v], g_c[v] * scale_[active_[v]]);
      }
    }
  }

  int size() const { return nz_; }
  int active() const { return na_; }
  int barrier_terms() const { return barrier_terms_; }

  // Smooth objective including the slack penalty.
  double smooth_objective(const Eigen::VectorXd& z) const {
    double val = objective_value(z);
    for (int c = 0; c < nc_; ++c) val -= prog_.violation_penalty * z[na_ + c];
    return val;
  }

  Eigen::VectorXd start_point(const std::vector<double>& p_t, double t) const {
    Eigen::VectorXd z(nz_);
    for (const auto& idx : groups_) {
      double centre = 1.0 / (static_cast<double>(idx.size()) + 1.0);
      double sum = 0.0;
      for (int a : idx) {
        double y = std::clamp(p_t[var_of_[a]] / scale_[a], 0.0, 1.0);
        z[a] = 0.99 * y + 0.01 * centre;
        sum += z[a];
      }
      if (sum >= 1.0)
        for (int a : idx) z[a] *= 0.999 / sum;
    }
    // Each slack starts at its centred value for the fixed powers: the
    // positive root of a s^2 + (a g - 2) s - g = 0 with a = t * penalty.
    const double a = t * prog_.violation_penalty;
    for (int c = 0; c < nc_; ++c) {
      z[na_ + c] = 0.0;
      const double g = constraint_value(z, c, true);
      const double r = std::sqrt(a * a * g * g + 4.0);
      z[na_ + c] = a * g <= 2.0 ? (2.0 - a * g + r) / (2.0 * a) : 2.0 * g / (a * g - 2.0 + r);
    }
    return z;
  }

  // Barrier objective t*smooth + log-barrier; -inf outside the domain.
  double value(const Eigen::VectorXd& z, double t) const {
    const double ninf = -std::numeric_limits<double>::infinity();
    double psi = 0.0;
    for (int i = 0; i < nz_; ++i) {
      if (!(z[i] > 0.0)) return ninf;
      psi += std::log(z[i]);
    }
    for (const auto& idx : groups_) {
      double r = 1.0;
      for (int a : idx) r -= z[a];
      if (!(r > 0.0)) return ninf;
      psi += std::log(r);
    }
    for (int c = 0; c < nc_; ++c) {
      double g = constraint_value(z, c, true);
      if (!(g > 0.0)) return ninf;
      psi += std::log(g);
    }
    return t * smooth_objective(z) + psi;
  }

  void derivatives(const Eigen::VectorXd& z, double t, Eigen::VectorXd& grad,
                   Eigen::MatrixXd& hess) const {
    grad.setZero(nz_);
    hess.setZero(nz_, nz_);
    for (const auto& term : objective_) add_log_term(term, z, t, grad, hess);
    for (int a = 0; a < na_; ++a) grad[a] -= t * c_obj_[a];
    for (int c = 0; c < nc_; ++c) grad[na_ + c] -= t * prog_.violation_penalty;

    for (int i = 0; i < nz_; ++i) {
      grad[i] += 1.0 / z[i];
      hess(i, i) -= 1.0 / (z[i] * z[i]);
    }
    for (const auto& idx : groups_) {
      double r = 1.0;
      for (int a : idx) r -= z[a];
      const double inv = 1.0 / r, inv2 = inv * inv;
      for (int a : idx) {
        grad[a] -= inv;
        for (int b : idx) hess(a, b) -= inv2;
      }
    }
    Eigen::VectorXd gg(nz_);
    Eigen::MatrixXd hg(nz_, nz_);
    for (int c = 0; c < nc_; ++c) {
      const ConstraintBlock& b = blocks_[c];
      double g = constraint_value(z, c, true);
      gg.setZero();
      hg.setZero();
      for (const auto& term : b.terms) add_log_term(term, z, 1.0, gg, hg);
      for (const auto& [a, d] : b.d) gg[a] -= d;
      gg[na_ + c] += 1.0;
      grad += gg / g;
      hess += hg / g;
      hess.noalias() -= (gg * gg.transpose()) / (g * g);
    }
  }

  std::vector<double> to_powers(const Eigen::VectorXd& z) const {
    std::vector<double> p(prog_.num_vars, 0.0);
    for (int a = 0; a < na_; ++a) p[var_of_[a]] = z[a] * scale_[a];
    return p;
  }

 private:
  static void add_log_term(const LogTerm& term, const Eigen::VectorXd& z, double t,
                           Eigen::VectorXd& grad, Eigen::MatrixXd& hess) {
    double u = 1.0;
    for (const auto& [a, e] : term.e) u += e * z[a];
    const double g1 = t * term.coef / u, g2 = g1 / u;
    for (const auto& [a, ea] : term.e) {
      grad[a] += g1 * ea;
      for (const auto& [b, eb] : term.e) hess(a, b) -= g2 * ea * eb;
    }
  }

  static double log_term(const LogTerm& term, const Eigen::VectorXd& z) {
    double x = 0.0;
    for (const auto& [a, e] : term.e) x += e * z[a];
    return term.coef * std::log1p(x);
  }

  double objective_value(const Eigen::VectorXd& z) const {
    double val = objective_const_;
    for (const auto& term : objective_) val += log_term(term, z);
    for (int a = 0; a < na_; ++a) val -= c_obj_[a] * z[a];
    return val;
  }

  // Linearized rate minus target; optionally plus the slack.
  double constraint_value(const Eigen::VectorXd& z, int c, bool with_slack) const {
    const ConstraintBlock& b = blocks_[c];
    double val = b.kappa - b.target;
    for (const auto& term : b.terms) val += log_term(term, z);
    for (const auto& [a, d] : b.d) val -= d * z[a];
    if (with_slack) val += z[na_ + c];
    return val;
  }

  const PowerProgram& prog_;
  std::vector<int> active_;
  std::vector<int> var_of_;
  std::vector<double> scale_;
  std::vector<std::vector<int>> groups_;
  int na_ = 0, nc_ = 0, nz_ = 0, barrier_terms_ = 0;
  std::vector<LogTerm> objective_;
  std::vector<double> c_obj_;
  double objective_const_ = 0.0;
  std::vector<ConstraintBlock> blocks_;
};

}  // namespace

SurrogateResult solve_surrogate(const PowerProgram& prog, const std::vector<double>& p_t,
                                const SurrogateOptions& opt) {
  if (!is_feasible(prog, p_t)) throw Error("solve_surrogate: infeasible p_t");
  Barrier bar(prog, p_t);
  SurrogateResult res;
  const int nz = bar.size();
  if (nz == 0) {
    res.p.assign(prog.num_vars, 0.0);
    res.value = surrogate_value(prog, p_t, res.p);
    return res;
  }

  Eigen::VectorXd z = bar.start_point(p_t, opt.t_initial);
  Eigen::VectorXd grad(nz), dz(nz), trial(nz), dinv(nz);
  Eigen::MatrixXd hess(nz, nz), scaled(nz, nz);
  Eigen::LLT<Eigen::MatrixXd> llt;
  double t = opt.t_initial;
  const double m = bar.barrier_terms();
  for (;;) {
    int local_steps = 0;
    for (;;) {
      bar.derivatives(z, t, grad, hess);
      // Jacobi equilibration of the negated Hessian before factoring.
      for (int i = 0; i < nz; ++i) dinv[i] = 1.0 / std::sqrt(-hess(i, i));
      scaled = -(dinv.asDiagonal() * hess * dinv.asDiagonal());
      llt.compute(scaled);
      if (llt.info() != Eigen::Success) {
        scaled.diagonal().array() += 1e-12;
        llt.compute(scaled);
        if (llt.info() != Eigen::Success)
          throw SolverError("solve_surrogate: Newton system not definite");
      }
      dz = dinv.asDiagonal() * llt.solve(dinv.asDiagonal() * grad);
      const double decrement = grad.dot(dz);
      if (!(decrement > 1e-7)) break;

      // Inside the quadratic-convergence region the full step is taken and
      // only the domain is enforced; barrier values there are too large for
      // an Armijo test to resolve the improvement.
      const bool local = decrement < 0.1;
      // Quadratic convergence needs only a handful of local steps; more
      // means the decrement sits at the rounding floor for this t.
      if (local && ++local_steps > kMaxLocalSteps) break;
      const double f0 = local ? 0.0 : bar.value(z, t);
      double alpha = 1.0;
      bool moved = false;
      while (alpha > 1e-14) {
        trial = z + alpha * dz;
        double f1 = bar.value(trial, t);
        if (local ? std::isfinite(f1) : f1 >= f0 + 0.25 * alpha * decrement) {
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
      z = trial;
      if (++res.newton_steps > opt.max_newton_steps)
        throw SolverError("solve_surrogate: Newton step cap reached");
    }
    const double gap = m / t;
    if (gap <= opt.gap_tolerance * std::max(1.0, std::abs(bar.smooth_objective(z)))) {
      res.gap = gap;
      break;
    }
    t *= opt.t_growth;
    if (!std::isfinite(t) || t > 1e300)
      throw SolverError("solve_surrogate: barrier parameter overflow");
  }
  res.p = bar.to_powers(z);
  res.value = surrogate_value(prog, p_t, res.p);
  return res;
}

}  // namespace fdra
