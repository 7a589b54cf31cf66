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


#include "arisgame/game.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace arisgame {

namespace {

void check_unit(const ComplexVector& w, Eigen::Index len, const char* name, double tol) {
  if (w.size() != len) throw ValidationError(fmt::format("{} has length {}, expected {}", name, w.size(), len));
  if (!(std::abs(w.norm() - 1.0) <= tol)) throw ValidationError(fmt::format("{} is not unit norm", name));
}

}  // namespace

void LeaderStrategy::validate(const SystemParams& p, double tol) const {
  if (!(source_power >= 0.0) || !(source_power <= p.source_power_max + tol))
    throw ValidationError("source power outside [0, max]");
  check_unit(source_beam, p.source_antennas, "source beam", tol);
  check_unit(dest_beam, p.dest_antennas, "destination beam", tol);
  if (theta.size() != p.elements) throw ValidationError("reflection vector length mismatch");
  if (theta.size() > 0 && !(theta.cwiseAbs().maxCoeff() <= p.amplitude_max + tol))
    throw ValidationError("reflection amplitude above limit");
}

void FollowerStrategy::validate(const SystemParams& p, double tol) const {
  if (!(jammer_power >= 0.0) || !(jammer_power <= p.jammer_power_max + tol))
    throw ValidationError("jammer power outside [0, max]");
  check_unit(jammer_beam, p.jammer_antennas, "jammer beam", tol);
}

EffectiveGains effective_gains(const ChannelSet& ch, const LeaderStrategy& leader,
                               const ComplexVector& jammer_beam, const SystemParams& p) {
  const CompositeChannels cc = composite(ch, leader.theta);
  const Eigen::RowVectorXcd wd = leader.dest_beam.adjoint();
  EffectiveGains g;
  g.signal = std::abs((wd * cc.source_total * leader.source_beam)(0));
  const Eigen::RowVectorXcd jam_row = wd * cc.jammer_total;
  g.jam_gain = jam_row.norm();
  g.jam_actual = jammer_beam.size() == jam_row.size() ? std::abs((jam_row * jammer_beam)(0)) : 0.0;
  const Eigen::RowVectorXcd ris_row = (wd * ch.ris_dest).cwiseProduct(leader.theta.transpose());
  g.noise = p.ris_noise * ris_row.squaredNorm() + p.dest_noise;
  return g;
}

double sinr(const ChannelSet& ch, const LeaderStrategy& leader, const FollowerStrategy& follower,
            const SystemParams& p) {
  const EffectiveGains g = effective_gains(ch, leader, follower.jammer_beam, p);
  return leader.source_power * g.signal * g.signal /
         (follower.jammer_power * g.jam_actual * g.jam_actual + g.noise);
}

double utility_leader(const ChannelSet& ch, const LeaderStrategy& leader,
                      const FollowerStrategy& follower, const SystemParams& p) {
  return sinr(ch, leader, follower, p) - p.source_cost * leader.source_power;
}

double utility_jammer(const ChannelSet& ch, const LeaderStrategy& leader,
                      const FollowerStrategy& follower, const SystemParams& p) {
  return -sinr(ch, leader, follower, p) - p.jammer_cost * follower.jammer_power;
}

double ris_power(const ChannelSet& ch, const LeaderStrategy& leader, const FollowerStrategy& follower,
                 const SystemParams& p) {
  const ComplexVector src = leader.theta.cwiseProduct(ch.source_ris * leader.source_beam);
  const ComplexVector jam = leader.theta.cwiseProduct(ch.jammer_ris * follower.jammer_beam);
  return leader.source_power * src.squaredNorm() + follower.jammer_power * jam.squaredNorm() +
         p.ris_noise * leader.theta.squaredNorm();
}

double FeasibilityReport::slack(const std::string& name) const {
  for (const auto& c : constraints)
    if (c.name == name) return c.slack;
  throw std::out_of_range("no constraint named " + name);
}

const ConstraintSlack& FeasibilityReport::worst() const {
  return *std::min_element(constraints.begin(), constraints.end(),
                           [](const auto& a, const auto& b) { return a.slack < b.slack; });
}

FeasibilityReport check_feasible(const LeaderStrategy& leader, const FollowerStrategy& follower,
                                 const SystemParams& p, const ChannelSet& ch, double tol_feas) {
  constexpr double kNormTol = 1e-9;
  FeasibilityReport r;
  auto add = [&](std::string name, double slack) {
    r.constraints.push_back({std::move(name), slack});
    if (!(slack >= -tol_feas)) r.feasible = false;
  };
  add("source_power_min", leader.source_power);
  add("source_power_max", p.source_power_max - leader.source_power);
  add("jammer_power_min", follower.jammer_power);
  add("jammer_power_max", p.jammer_power_max - follower.jammer_power);
  add("source_beam_norm", kNormTol - std::abs(leader.source_beam.norm() - 1.0));
  add("dest_beam_norm", kNormTol - std::abs(leader.dest_beam.norm() - 1.0));
  add("jammer_beam_norm", kNormTol - std::abs(follower.jammer_beam.norm() - 1.0));
  const double amp = leader.theta.size() > 0 ? leader.theta.cwiseAbs().maxCoeff() : 0.0;
  add("amplitude", p.amplitude_max - amp);
  add("ris_budget", p.ris_power_max - ris_power(ch, leader, follower, p));
  return r;
}

const char* to_string(Block b) {
  switch (b) {
    case Block::Init: return "init";
    case Block::Power: return "power";
    case Block::Beams: return "beams";
    case Block::Reflection: return "reflection";
  }
  return "unknown";
}

}  // namespace arisgame
