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


#include "arisgame/follower.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace arisgame {

DirectionResult best_direction(const ChannelSet& ch, const LeaderStrategy& leader) {
  const CompositeChannels cc = composite(ch, leader.theta);
  ComplexVector v = cc.jammer_total.adjoint() * leader.dest_beam;
  DirectionResult out;
  const double n = v.norm();
  if (!(n >= kDegenerateThreshold)) {
    out.direction = ComplexVector::Zero(v.size());
    if (v.size() > 0) out.direction(0) = 1.0;
    out.degenerate = true;
    return out;
  }
  out.direction = v / n;
  return out;
}

PowerResult jammer_power_response(double source_power, double signal, double jam_gain, double noise,
                                  const SystemParams& p) {
  PowerResult out;
  if (!(jam_gain >= kDegenerateThreshold)) {
    out.degenerate = true;
    return out;
  }
  if (p.jammer_cost == 0.0) {
    // Free jamming: utility is non-decreasing in power.
    out.unprojected = std::numeric_limits<double>::infinity();
    out.power = p.jammer_power_max;
    return out;
  }
  out.unprojected = std::sqrt(source_power) * signal / (std::sqrt(p.jammer_cost) * jam_gain) -
                    noise / (jam_gain * jam_gain);
  out.power = std::clamp(out.unprojected, 0.0, p.jammer_power_max);
  return out;
}

PowerResult best_power(const ChannelSet& ch, const LeaderStrategy& leader, const SystemParams& p) {
  const EffectiveGains g = effective_gains(ch, leader, ComplexVector(), p);
  return jammer_power_response(leader.source_power, g.signal, g.jam_gain, g.noise, p);
}

Response best_response(const ChannelSet& ch, const LeaderStrategy& leader, const SystemParams& p) {
  return respond(ch, leader, p, JammerModel::BestResponse);
}

Response respond(const ChannelSet& ch, const LeaderStrategy& leader, const SystemParams& p,
                 JammerModel model) {
  const DirectionResult dir = best_direction(ch, leader);
  Response out;
  out.strategy.jammer_beam = dir.direction;
  if (model == JammerModel::MaxPower) {
    out.strategy.jammer_power = p.jammer_power_max;
    out.unprojected_power = p.jammer_power_max;
    out.degenerate = dir.degenerate;
    return out;
  }
  const PowerResult pw = best_power(ch, leader, p);
  out.strategy.jammer_power = pw.power;
  out.unprojected_power = pw.unprojected;
  out.degenerate = dir.degenerate || pw.degenerate;
  return out;
}

}  // namespace arisgame
