// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The arisgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "arisgame/leader.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace arisgame {

void LeaderConfig::validate() const {
  solver.validate();
  if (!(outer_tol > 0.0) || !(inner_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (max_outer < 1 || max_inner < 1) throw std::invalid_argument("iteration caps must be at least 1");
  if (!(ridge_scale >= 0.0)) throw std::invalid_argument("ridge_scale must be non-negative");
}

PowerSolution optimize_power(const ChannelSet& ch, const ComplexVector& source_beam,
                             const ComplexVector& dest_beam, const ComplexVector& theta,
                             const SystemParams& p, const numerics::SolverConfig& cfg) {
  LeaderStrategy probe{0.0, source_beam, dest_beam, theta};
  const DirectionResult dir = best_direction(ch, probe);
  const EffectiveGains g = effective_gains(ch, probe, dir.direction, p);

  const double src_load = theta.cwiseProduct(ch.source_ris * source_beam).squaredNorm();
  const double jam_load = theta.cwiseProduct(ch.jammer_ris * dir.direction).squaredNorm();
  const double fixed_load = p.ris_noise * theta.squaredNorm();
  const bool budgeted = std::isfinite(p.ris_power_max);
  if (budgeted && fixed_load > p.ris_power_max * (1.0 + 1e-12))
    throw Infeasible("surface noise alone exceeds the surface power budget");

  const double gamma_max = std::sqrt(p.source_power_max);
  const double pj_max = p.jammer_power_max;
  const bool degenerate = !(g.jam_gain >= kDegenerateThreshold);

  PowerSolution out;
  // Reaction bound P_J >= gamma * k1 - k2; with degenerate jamming the
  // objective falls back to SNR - cost with the jammer silent.
  double k1 = 0.0, k2 = 0.0;
  double lin = 0.0;  // objective = lin * gamma - quad * gamma^2 (or in P_S when degenerate)
  if (degenerate) {
    lin = g.signal * g.signal / g.noise;
  } else if (p.jammer_cost > 0.0) {
    out.vertex_gain = std::sqrt(p.jammer_cost) * g.signal / g.jam_gain;
    k1 = g.signal / (std::sqrt(p.jammer_cost) * g.jam_gain);
    k2 = g.noise / (g.jam_gain * g.jam_gain);
    lin = out.vertex_gain;
  }
  const double quad = p.source_cost;

  // Scaled variables u = gamma / gamma_max, q = P_J / P_J_max.
  const double fscale = std::max({std::abs(lin) * (degenerate ? gamma_max * gamma_max : gamma_max),
                                  quad * gamma_max * gamma_max, 1e-300});
  numerics::ConvexProgram prog;
  prog.lower = RealVector::Zero(2);
  prog.upper = RealVector::Ones(2);
  if (!(pj_max > 0.0)) prog.upper(1) = 0.0;
  const double c1 = lin * gamma_max / fscale, c2 = quad * gamma_max * gamma_max / fscale;
  prog.objective = numerics::make_function(
      [c1, c2](const RealVector& z) { return c1 * z(0) - c2 * z(0) * z(0); },
      [c1, c2](const RealVector& z) { return RealVector{{c1 - 2.0 * c2 * z(0), 0.0}}; },
      [c2](const RealVector&) { return RealMatrix{{-2.0 * c2, 0.0}, {0.0, 0.0}}; });
  if (budgeted) {
    const double a = gamma_max * gamma_max * src_load / p.ris_power_max;
    const double b = pj_max * jam_load / p.ris_power_max;
    const double c = fixed_load / p.ris_power_max - 1.0;
    prog.constraints.push_back(numerics::make_function(
        [a, b, c](const RealVector& z) { return a * z(0) * z(0) + b * z(1) + c; },
        [a, b](const RealVector& z) { return RealVector{{2.0 * a * z(0), b}}; },
        [a](const RealVector&) { return RealMatrix{{2.0 * a, 0.0}, {0.0, 0.0}}; }));
  }
  if (!degenerate && p.jammer_cost > 0.0) {
    const double jscale = std::max({pj_max, gamma_max * k1, k2, 1e-300});
    RealVector coeffs{{gamma_max * k1 / jscale, -pj_max / jscale}};
    prog.constraints.push_back(numerics::make_affine(coeffs, -k2 / jscale));
  }

  double u = 0.0;
  if (degenerate && lin - quad > 0.0) {
    // Linear in P_S: the maximum sits at the largest admissible power.
    u = 1.0;
    if (budgeted && gamma_max * gamma_max * src_load > 0.0)
      u = std::min(1.0, std::sqrt(std::max(0.0, p.ris_power_max - fixed_load) /
                                  (gamma_max * gamma_max * src_load)));
    out.detail.x = RealVector{{u, 0.0}};
    out.detail.status = numerics::SolveStatus::Converged;
  } else if (degenerate) {
    out.detail.x = RealVector::Zero(2);
    out.detail.status = numerics::SolveStatus::Converged;
  } else {
    out.detail = numerics::maximize_concave(prog, RealVector::Zero(2), cfg);
    u = std::clamp(out.detail.x(0), 0.0, 1.0);
    // The objective depends on gamma only, so the optimum is the vertex
    // clipped to the admissible gamma interval; polish the barrier point.
    auto admissible = [&](double v) {
      const double g2 = v * v * gamma_max * gamma_max;
      const double need = std::max(0.0, v * gamma_max * k1 - k2);
      if (need > pj_max) return false;
      return !budgeted || g2 * src_load + need * jam_load + fixed_load <= p.ris_power_max;
    };
    const double vertex = quad > 0.0 ? std::clamp(lin / (2.0 * quad * gamma_max), 0.0, 1.0) : 1.0;
    if (admissible(vertex)) {
      u = vertex;
    } else if (admissible(u) && vertex > u) {
      double lo = u, hi = vertex;
      for (int i = 0; i < 100 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        (admissible(mid) ? lo : hi) = mid;
      }
      u = lo;
    }
  }

  const double gamma = u * gamma_max;
  out.source_power = gamma * gamma;
  double pj = pj_max;
  if (budgeted && jam_load > 0.0)
    pj = std::min(pj, (p.ris_power_max - out.source_power * src_load - fixed_load) / jam_load);
  out.jammer_power = std::max(pj, 0.0);
  out.objective = degenerate ? (lin - quad) * out.source_power : lin * gamma - quad * out.source_power;
  return out;
}

}  // namespace arisgame
