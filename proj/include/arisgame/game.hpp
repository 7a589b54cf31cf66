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


#ifndef ARISGAME_GAME_HPP
#define ARISGAME_GAME_HPP

#include "arisgame/channel.hpp"
#include "arisgame/params.hpp"

#include <string>
#include <vector>

namespace arisgame {

struct LeaderStrategy {
  double source_power = 0.0;
  ComplexVector source_beam;  // unit norm, length source_antennas
  ComplexVector dest_beam;    // unit norm, length dest_antennas
  ComplexVector theta;        // reflection coefficients, length elements

  // Throws ValidationError when a norm, box or length invariant fails.
  void validate(const SystemParams& p, double tol = 1e-9) const;
};

struct FollowerStrategy {
  double jammer_power = 0.0;
  ComplexVector jammer_beam;  // unit norm, length jammer_antennas

  void validate(const SystemParams& p, double tol = 1e-9) const;
};

// Scalar link quantities behind the SINR for fixed beams and reflection.
struct EffectiveGains {
  double signal = 0.0;      // |w_D^H H_src w_S|, source power excluded
  double jam_gain = 0.0;    // ||w_D^H H_jam||, best-direction jamming amplitude
  double jam_actual = 0.0;  // |w_D^H H_jam w_J| for the supplied jammer beam
  double noise = 0.0;       // ris_noise ||w_D^H H_rd diag(theta)||^2 + dest_noise
};

EffectiveGains effective_gains(const ChannelSet& ch, const LeaderStrategy& leader,
                               const ComplexVector& jammer_beam, const SystemParams& p);

double sinr(const ChannelSet& ch, const LeaderStrategy& leader, const FollowerStrategy& follower,
            const SystemParams& p);
double utility_leader(const ChannelSet& ch, const LeaderStrategy& leader,
                      const FollowerStrategy& follower, const SystemParams& p);
double utility_jammer(const ChannelSet& ch, const LeaderStrategy& leader,
                      const FollowerStrategy& follower, const SystemParams& p);

// Power drawn by the surface amplifiers for the given strategies.
double ris_power(const ChannelSet& ch, const LeaderStrategy& leader, const FollowerStrategy& follower,
                 const SystemParams& p);

struct ConstraintSlack {
  std::string name;
  double slack = 0.0;  // negative means violated
};

struct FeasibilityReport {
  std::vector<ConstraintSlack> constraints;
  bool feasible = true;

  double slack(const std::string& name) const;
  const ConstraintSlack& worst() const;
};

// Lists power boxes, beam norms, amplitude box and surface budget.
FeasibilityReport check_feasible(const LeaderStrategy& leader, const FollowerStrategy& follower,
                                 const SystemParams& p, const ChannelSet& ch, double tol_feas = 1e-8);

enum class Block { Init, Power, Beams, Reflection };

const char* to_string(Block b);

struct TraceEntry {
  int iteration = 0;
  Block block = Block::Init;
  double leader_utility = 0.0;  // true utility after the block (or the kept value when rejected)
  double eta = 0.0;             // signal / jam_gain
  int sca_iterations = 0;
  bool accepted = true;
  std::string note;
};

struct EquilibriumResult {
  LeaderStrategy leader;
  FollowerStrategy follower;
  double leader_utility = 0.0;
  double jammer_utility = 0.0;
  double sinr = 0.0;
  std::vector<TraceEntry> trace;
  bool converged = false;
  int outer_iterations = 0;
  int sca_iterations = 0;
  std::vector<std::string> flags;
};

}  // namespace arisgame

#endif  // ARISGAME_GAME_HPP
