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

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace arisgame {

LeaderStrategy initial_strategy(const ChannelSet& ch, const SystemParams& p, const LeaderConfig& cfg) {
  LeaderStrategy l;
  Eigen::JacobiSVD<ComplexMatrix> svd(ch.source_dest, Eigen::ComputeFullU | Eigen::ComputeFullV);
  l.dest_beam = svd.matrixU().col(0);
  l.source_beam = svd.matrixV().col(0);
  l.source_power = 0.5 * p.source_power_max;
  const Eigen::Index n = ch.elements();
  l.theta = ComplexVector::Zero(n);
  if (n == 0 || !cfg.optimize_reflection) return l;

  // Equal phases at the amplitude that uses half of the surface budget with
  // the jammer at full power.
  double amp = p.amplitude_max;
  if (std::isfinite(p.ris_power_max)) {
    const ComplexVector src = ch.source_ris * l.source_beam;
    const double per_unit = l.source_power * src.squaredNorm() +
                            p.jammer_power_max * ch.jammer_ris.squaredNorm() +
                            p.ris_noise * static_cast<double>(n);
    if (per_unit > 0.0) amp = std::min(amp, std::sqrt(0.5 * p.ris_power_max / per_unit));
  }
  l.theta.setConstant(cdouble(amp, 0.0));
  return l;
}

double leader_value(const ChannelSet& ch, const LeaderStrategy& leader, const SystemParams& p,
                    JammerModel model) {
  const Response r = respond(ch, leader, p, model);
  return utility_leader(ch, leader, r.strategy, p);
}

namespace {

struct Evaluated {
  LeaderStrategy leader;
  double value = -std::numeric_limits<double>::infinity();
  bool feasible = false;
};

class Bcd {
 public:
  Bcd(const ChannelSet& ch, const SystemParams& p, const LeaderConfig& cfg) : ch_(ch), p_(p), cfg_(cfg) {}

  Evaluated evaluate(const LeaderStrategy& l) const {
    Evaluated e;
    e.leader = l;
    const Response r = respond(ch_, l, p_, cfg_.jammer);
    e.value = utility_leader(ch_, l, r.strategy, p_);
    e.feasible = check_feasible(l, r.strategy, p_, ch_, cfg_.solver.tol_feas).feasible && std::isfinite(e.value);
    return e;
  }

  // Jamming power as a function of the source power for fixed beams.
  double reaction_power(double source_power, const EffectiveGains& g) const {
    if (cfg_.jammer == JammerModel::MaxPower) return p_.jammer_power_max;
    return jammer_power_response(source_power, g.signal, g.jam_gain, g.noise, p_).power;
  }

  Evaluated power_block(const Evaluated& cur, std::string& note) {
    const LeaderStrategy& l = cur.leader;
    std::vector<double> candidates;
    try {
      const PowerSolution sol = optimize_power(ch_, l.source_beam, l.dest_beam, l.theta, p_, cfg_.solver);
      candidates.push_back(sol.source_power);
      last_power_jammer_ = sol.jammer_power;
    } catch (const Infeasible&) {
      note = "power subproblem infeasible";
    }

    // Exact search over the pieces of the projected reaction.
    const DirectionResult dir = best_direction(ch_, l);
    const EffectiveGains g = effective_gains(ch_, l, dir.direction, p_);
    const double src_load = l.theta.cwiseProduct(ch_.source_ris * l.source_beam).squaredNorm();
    const double jam_load = l.theta.cwiseProduct(ch_.jammer_ris * dir.direction).squaredNorm();
    const double fixed_load = p_.ris_noise * l.theta.squaredNorm();
    auto load = [&](double ps) { return ps * src_load + reaction_power(ps, g) * jam_load + fixed_load; };
    double ps_cap = p_.source_power_max;
    if (std::isfinite(p_.ris_power_max) && load(ps_cap) > p_.ris_power_max) {
      double lo = 0.0, hi = ps_cap;
      for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (load(mid) <= p_.ris_power_max ? lo : hi) = mid;
      }
      ps_cap = lo;
    }
    candidates.push_back(0.0);
    candidates.push_back(ps_cap);
    if (cfg_.jammer == JammerModel::BestResponse && g.jam_gain >= kDegenerateThreshold &&
        p_.jammer_cost > 0.0 && g.signal > 0.0) {
      const double k1 = g.signal / (std::sqrt(p_.jammer_cost) * g.jam_gain);
      const double k2 = g.noise / (g.jam_gain * g.jam_gain);
      const double floor_gamma = k2 / k1, ceil_gamma = (p_.jammer_power_max + k2) / k1;
      candidates.push_back(floor_gamma * floor_gamma);
      candidates.push_back(ceil_gamma * ceil_gamma);
      if (p_.source_cost > 0.0) {
        const double vertex = std::sqrt(p_.jammer_cost) * g.signal / g.jam_gain / (2.0 * p_.source_cost);
        candidates.push_back(vertex * vertex);
      }
    }
    Evaluated best = cur;
    for (double c : candidates) {
      LeaderStrategy t = l;
      t.source_power = std::clamp(c, 0.0, ps_cap);
      const Evaluated e = evaluate(t);
      if (e.feasible && e.value > best.value) best = e;
    }
    return best;
  }

  Evaluated beam_block(const Evaluated& cur) {
    LeaderStrategy t = cur.leader;
    t.source_beam = update_transmit_beam(ch_, t.theta, t.dest_beam, t.source_beam).beam;
    std::vector<ComplexVector> receive;
    try {
      receive.push_back(update_receive_beam(ch_, t.theta, t.source_beam,
                                            default_receive_ridge(ch_, t.theta, cfg_.ridge_scale)));
    } catch (const SingularMatrix&) {
    }
    const double current_jam = respond(ch_, t, p_, cfg_.jammer).strategy.jammer_power;
    for (double pj : {p_.jammer_power_max, 0.0, current_jam}) {
      try {
        receive.push_back(update_receive_beam_fixed_jammer(ch_, t.theta, t.source_beam, pj, p_));
      } catch (const SingularMatrix&) {
      }
    }
    Evaluated best = evaluate(t);  // transmit update with the previous receive beam
    for (const auto& wd : receive) {
      LeaderStrategy c = t;
      c.dest_beam = wd;
      const Evaluated e = evaluate(c);
      if (e.feasible && e.value > best.value) best = e;
    }
    // Re-match the transmit beam to the chosen receive beam.
    LeaderStrategy c = best.leader;
    c.source_beam = update_transmit_beam(ch_, c.theta, c.dest_beam, c.source_beam).beam;
    const Evaluated e = evaluate(c);
    if (e.feasible && e.value > best.value) best = e;
    return best;
  }

  Evaluated reflection_block(const Evaluated& cur, int& sca_iters, std::string& note) {
    const LeaderStrategy& l = cur.leader;
    const Response r = respond(ch_, l, p_, cfg_.jammer);
    ReflectionObjective kind = ReflectionObjective::FixedJammer;
    double pj = p_.jammer_power_max;
    if (cfg_.jammer == JammerModel::BestResponse) {
      if (r.degenerate || r.unprojected_power <= 0.0) {
        pj = 0.0;
        note = "floor";
      } else if (r.unprojected_power >= p_.jammer_power_max) {
        note = "ceiling";
      } else {
        kind = ReflectionObjective::Ratio;
        note = "interior";
        // Largest jamming power the surface budget admits at the current point.
        const ReflectionData data = build_reflection_data(ch_, l.source_beam, l.dest_beam);
        const double jam_load = l.theta.cwiseAbs2().dot(data.jammer_row_energy);
        if (std::isfinite(p_.ris_power_max) && jam_load > 0.0) {
          const double rest = data.budget_load(l.theta, l.source_power, 0.0, p_);
          pj = std::min(pj, (p_.ris_power_max - rest) / jam_load);
        }
        pj = std::max(pj, r.unprojected_power);
      }
    }
    const ReflectionResult res =
        optimize_reflection(ch_, l.source_beam, l.dest_beam, l.source_power, pj, l.theta, p_, cfg_, kind);
    sca_iters += res.iterations;
    if (res.skipped) note += ", skipped";
    LeaderStrategy t = l;
    t.theta = res.theta;
    return evaluate(t);
  }

  double last_power_jammer_ = 0.0;

 private:
  const ChannelSet& ch_;
  const SystemParams& p_;
  const LeaderConfig& cfg_;
};

double eta_of(const ChannelSet& ch, const LeaderStrategy& l, const SystemParams& p) {
  const EffectiveGains g = effective_gains(ch, l, ComplexVector(), p);
  return g.jam_gain > 0.0 ? g.signal / g.jam_gain : std::numeric_limits<double>::infinity();
}

}  // namespace

EquilibriumResult solve_equilibrium(const ChannelSet& ch, const SystemParams& p, const LeaderConfig& cfg) {
  p.validate();
  cfg.validate();
  ch.validate(p);
  return solve_equilibrium_from(ch, p, cfg, initial_strategy(ch, p, cfg));
}

EquilibriumResult solve_equilibrium_from(const ChannelSet& ch, const SystemParams& p, const LeaderConfig& cfg,
                                         const LeaderStrategy& start) {
  p.validate();
  cfg.validate();
  ch.validate(p);
  start.validate(p);
  Bcd bcd(ch, p, cfg);
  EquilibriumResult res;

  Evaluated cur = bcd.evaluate(start);
  if (!cur.feasible) res.flags.push_back("infeasible_start");
  res.trace.push_back({0, Block::Init, cur.value, eta_of(ch, cur.leader, p), 0, true, ""});

  auto record = [&](int it, Block b, const Evaluated& cand, int sca, std::string note) {
    const bool accept = cand.feasible && cand.value >= cur.value;
    if (accept) cur = cand;
    res.trace.push_back({it, b, cur.value, eta_of(ch, cur.leader, p), sca, accept, std::move(note)});
  };

  const bool reflect = cfg.optimize_reflection && ch.elements() > 0;
  for (int it = 1; it <= cfg.max_outer; ++it) {
    const double start = cur.value;
    res.outer_iterations = it;

    std::string note;
    const Evaluated pw = bcd.power_block(cur, note);
    record(it, Block::Power, pw, 0, note);

    record(it, Block::Beams, bcd.beam_block(cur), 0, "");

    if (reflect) {
      int sca = 0;
      std::string rnote;
      const Evaluated rf = bcd.reflection_block(cur, sca, rnote);
      res.sca_iterations += sca;
      record(it, Block::Reflection, rf, sca, rnote);
    }

    if (std::abs(cur.value - start) < cfg.outer_tol) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged) res.flags.push_back("nonconverged");

  res.leader = cur.leader;
  const Response r = respond(ch, cur.leader, p, cfg.jammer);
  if (r.degenerate) res.flags.push_back("degenerate");
  res.follower = r.strategy;
  res.sinr = sinr(ch, res.leader, res.follower, p);
  res.leader_utility = utility_leader(ch, res.leader, res.follower, p);
  res.jammer_utility = utility_jammer(ch, res.leader, res.follower, p);
  return res;
}

}  // namespace arisgame
