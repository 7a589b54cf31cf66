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


#ifndef ARISGAME_ORACLE_HPP
#define ARISGAME_ORACLE_HPP

#include "arisgame/game.hpp"
#include "arisgame/leader.hpp"

#include <cstdint>
#include <functional>
#include <vector>

// Brute-force and sampling references for the closed forms and solvers.
namespace arisgame::oracle {

class EmptyFeasibleSet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Random feasible leader strategy: uniform source power, Haar unit beams and
// random-phase reflection scaled to 90% of the surface budget at full
// jamming power.
LeaderStrategy random_leader(const ChannelSet& ch, const SystemParams& p, std::uint64_t seed);

// Argmax of the jammer utility over `steps` uniform powers on [0, max], with
// the jamming direction matched to the receive beam.
double grid_best_power(const ChannelSet& ch, const LeaderStrategy& leader, const SystemParams& p, long steps);

struct DirectionSample {
  double best_sampled = 0.0;
  double closed_form = 0.0;
};

// Largest |w_D^H H_jam w|^2 over `count` uniformly random unit vectors.
DirectionSample sample_best_direction(const ChannelSet& ch, const LeaderStrategy& leader, long count,
                                      std::uint64_t seed);

// Signal-level simulation of the received sample after combining, with unit
// power QPSK symbols and Gaussian surface and receiver noise. Returns the
// ratio of sample signal power to sample interference-plus-noise power.
double monte_carlo_sinr(const ChannelSet& ch, const LeaderStrategy& leader, const FollowerStrategy& follower,
                        const SystemParams& p, long symbols, std::uint64_t seed);

struct ScalarGridResult {
  cdouble theta;
  double objective = -1.0;
  bool found = false;
};

// Exhaustive amplitude x phase search of the single-element reflection
// problem (ratio objective, budget, amplitude and jammer reaction bound).
ScalarGridResult grid_reflection_single_element(const ReflectionData& data, double source_power,
                                                double jammer_power, const SystemParams& p, int resolution,
                                                double amplitude_cap = -1.0);

struct GridResult {
  RealVector x;
  double value = 0.0;
};

using ScalarField = std::function<double(const RealVector&)>;

// Nested uniform grids: each level evaluates `points` per axis, then the box
// shrinks to two pitches either side of the incumbent. Constraints are g(x) <= 0.
GridResult grid_refine_search(const ScalarField& objective, const std::vector<ScalarField>& constraints,
                              const RealVector& lower, const RealVector& upper, int levels, int points = 21);

struct PowerGridResult {
  double objective = 0.0;
  double source_power = 0.0;
  double jammer_power = 0.0;
  double cell_tolerance = 0.0;  // objective variation across one grid cell
  double vertex_gain = 0.0;
  bool vertex_interior = false;  // unconstrained maximizer is admissible
};

// Grid over (sqrt(P_S), P_J) for the embedded-response power problem.
PowerGridResult grid_power(const ChannelSet& ch, const ComplexVector& source_beam, const ComplexVector& dest_beam,
                           const ComplexVector& theta, const SystemParams& p, int resolution);

struct StackelbergGridResult {
  double leader_utility = 0.0;
  double source_power = 0.0;
  double jammer_power = 0.0;
  double cell_tolerance = 0.0;
};

// No-surface equilibrium by exhaustive search: for each source power on the
// grid the jammer picks its best grid power; the leader picks the best row.
// The transmit beam is matched to the receive beam; receive beams sweep the
// frontier of achievable (signal, jamming) gain pairs.
StackelbergGridResult grid_no_ris_equilibrium(const ChannelSet& ch, const SystemParams& p, int resolution,
                                              int beam_candidates = 400);

}  // namespace arisgame::oracle

#endif  // ARISGAME_ORACLE_HPP
