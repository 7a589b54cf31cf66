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


#ifndef ARISGAME_LEADER_HPP
#define ARISGAME_LEADER_HPP

#include "arisgame/follower.hpp"
#include "arisgame/game.hpp"
#include "arisgame/numerics.hpp"

#include <array>
#include <string>
#include <vector>

namespace arisgame {

class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LeaderConfig {
  numerics::SolverConfig solver;
  double outer_tol = 1e-5;     // absolute change in leader utility
  double inner_tol = 1e-6;     // relative change in the reflection ratio
  int max_outer = 100;
  int max_inner = 50;
  double ridge_scale = 1e-10;  // receive-beam ridge relative to trace / dest_antennas
  JammerModel jammer = JammerModel::BestResponse;
  bool optimize_reflection = true;

  void validate() const;
};

// ---------------------------------------------------------------- power

struct PowerSolution {
  double source_power = 0.0;
  double jammer_power = 0.0;  // largest jamming power the constraints admit
  double objective = 0.0;     // embedded-response objective
  double vertex_gain = 0.0;   // sqrt(c_J) |signal| / jam_gain
  numerics::SolveResult detail;
};

// Maximizes the embedded-response objective over (sqrt(P_S), P_J) with the
// surface budget, the jammer reaction bound and both power boxes. Throws
// Infeasible when the surface noise alone exceeds the budget.
PowerSolution optimize_power(const ChannelSet& ch, const ComplexVector& source_beam,
                             const ComplexVector& dest_beam, const ComplexVector& theta,
                             const SystemParams& p, const numerics::SolverConfig& cfg = {});

// ---------------------------------------------------------------- beams

struct BeamResult {
  ComplexVector beam;
  bool degenerate = false;
};

// Maximum-ratio transmit beam for the current receive beam; keeps `previous`
// when the effective channel vanishes.
BeamResult update_transmit_beam(const ChannelSet& ch, const ComplexVector& theta,
                                const ComplexVector& dest_beam, const ComplexVector& previous);

// ridge_scale * trace(H_jam H_jam^H) / dest_antennas
double default_receive_ridge(const ChannelSet& ch, const ComplexVector& theta, double ridge_scale = 1e-10);

// Whitened matched filter (H_jam H_jam^H + ridge I)^-1 H_src w_S, normalized.
ComplexVector update_receive_beam(const ChannelSet& ch, const ComplexVector& theta,
                                  const ComplexVector& source_beam, double ridge);

// Receive beam maximizing the SINR when the jammer transmits `jammer_power`
// along its matched direction: M^-1 H_src w_S with
// M = P_J H_jam H_jam^H + ris_noise H_rd diag|theta|^2 H_rd^H + dest_noise I.
ComplexVector update_receive_beam_fixed_jammer(const ChannelSet& ch, const ComplexVector& theta,
                                               const ComplexVector& source_beam, double jammer_power,
                                               const SystemParams& p);

// ---------------------------------------------------------------- reflection

// Reflection-vector form of the link quantities for fixed beams:
//   w_D^H H_src w_S          = a^H theta + b
//   w_D^H H_jam              = theta^T C + d^H
//   ||w_D^H H_rd diag theta|| = ||diag(weights) theta||
struct ReflectionData {
  ComplexVector a;
  cdouble b;
  ComplexMatrix C;               // elements x jammer_antennas
  ComplexVector d;               // jammer_antennas
  ComplexVector weights;         // (w_D^H H_rd)^T, the diagonal of D
  ComplexVector source_at_ris;   // H_SR w_S
  RealVector jammer_row_energy;  // squared row norms of H_JR

  Eigen::Index elements() const { return a.size(); }
  cdouble numerator(const ComplexVector& theta) const;
  Eigen::RowVectorXcd jam_row(const ComplexVector& theta) const;
  double noise(const ComplexVector& theta, const SystemParams& p) const;
  double ratio(const ComplexVector& theta) const;  // |numerator| / ||jam_row||
  // Left side of the surface budget with the Frobenius bound on the jammer term.
  double budget_load(const ComplexVector& theta, double source_power, double jammer_power,
                     const SystemParams& p) const;
  // Jammer reaction bound: sqrt(P_S/c_J) |num| / ||row|| - noise / ||row||^2.
  double reaction(const ComplexVector& theta, double source_power, const SystemParams& p) const;
};

// Throws std::logic_error if the vectorized form disagrees with the direct
// matrix products beyond 1e-12 relative.
ReflectionData build_reflection_data(const ChannelSet& ch, const ComplexVector& source_beam,
                                     const ComplexVector& dest_beam);

// Expansion point of the convex surrogate, in natural units.
struct SurrogateState {
  ComplexVector theta0;
  double phi0 = 0.0;   // phi0^2 = |num|
  double psi0 = 0.0;   // ||row||
  double mu0 = 0.0;    // mu0^2 = |num|
  double nu0 = 0.0;    // ||row||
  double xi0 = 0.0;    // xi0^2 = noise
  double zeta0 = 0.0;  // ||row||^2
};

SurrogateState tight_state(const ReflectionData& data, const ComplexVector& theta0, const SystemParams& p);

// Convex lower-bounding surrogate of the reflection problem around a state.
// Variables z = [Re theta; Im theta; phi, psi, mu, nu, xi, zeta], with the
// magnitudes rescaled so every auxiliary is O(1).
class ReflectionSurrogate {
 public:
  enum Aux : int { kPhi = 0, kPsi, kMu, kNu, kXi, kZeta, kAuxCount };

  ReflectionSurrogate(const ReflectionData& data, const SurrogateState& state, double source_power,
                      double jammer_power, const SystemParams& p);

  const numerics::ConvexProgram& program() const { return program_; }
  Eigen::Index dimension() const { return 2 * n_ + kAuxCount; }
  Eigen::Index aux_index(Aux a) const { return 2 * n_ + a; }

  // Natural-unit state <-> scaled variable vector.
  RealVector pack(const SurrogateState& s) const;
  SurrogateState unpack(const RealVector& z) const;

  // Surrogate objective in natural units (lower bound on the ratio).
  double objective(const RealVector& z) const;

  // Surrogate pieces against the functions they replace, at the expansion
  // point. Gradients are with respect to z.
  struct Tangency {
    std::string name;
    double surrogate = 0.0;
    double exact = 0.0;
    RealVector surrogate_grad;
    RealVector exact_grad;
  };
  std::vector<Tangency> tangency() const;

  struct Scales;

 private:
  Eigen::Index n_;
  std::shared_ptr<const Scales> scales_;
  numerics::ConvexProgram program_;
};

// Convex surrogate for a jammer pinned at a fixed power: maximizes
// |num|^2 / (P_J ||row||^2 + noise) through z = [Re theta; Im theta; phi, psi].
class FixedJammerSurrogate {
 public:
  FixedJammerSurrogate(const ReflectionData& data, const ComplexVector& theta0, double source_power,
                       double jammer_power, const SystemParams& p);

  const numerics::ConvexProgram& program() const { return program_; }
  RealVector start() const;
  ComplexVector theta(const RealVector& z) const;
  double objective(const RealVector& z) const;  // natural units, lower bound on |num|^2 / Dtot

  struct Scales;

 private:
  Eigen::Index n_;
  std::shared_ptr<const Scales> scales_;
  numerics::ConvexProgram program_;
};

struct InnerStep {
  ComplexVector theta;
  SurrogateState state;        // tight at the new theta
  double surrogate_value = 0.0;
  double start_value = 0.0;    // surrogate objective at the expansion point
  numerics::SolveResult detail;
};

// One convex surrogate solve. Propagates InfeasibleStart.
InnerStep sca_inner_solve(const ReflectionData& data, const SurrogateState& state, double source_power,
                          double jammer_power, const SystemParams& p,
                          const numerics::SolverConfig& cfg = {});

enum class ReflectionObjective {
  Ratio,        // |num| / ||row|| under the jammer reaction bound
  FixedJammer,  // |num|^2 / (P_J ||row||^2 + noise)
};

struct ReflectionResult {
  ComplexVector theta;
  std::vector<double> objective_trace;  // true objective per accepted iterate, starting value first
  std::vector<double> surrogate_trace;
  int iterations = 0;
  bool restored = false;  // start was shrunk to reach feasibility
  bool skipped = false;   // no feasible start; theta_init returned
  bool converged = false;
  double kkt_residual = 0.0;
};

// Iterated surrogate solves from theta_init. The returned theta satisfies the
// surface budget (Frobenius form), the amplitude box and, for Ratio, the
// jammer reaction bound with jammer_power.
ReflectionResult optimize_reflection(const ChannelSet& ch, const ComplexVector& source_beam,
                                     const ComplexVector& dest_beam, double source_power,
                                     double jammer_power, const ComplexVector& theta_init,
                                     const SystemParams& p, const LeaderConfig& cfg,
                                     ReflectionObjective kind = ReflectionObjective::Ratio);

// ---------------------------------------------------------------- equilibrium

// Deterministic feasible starting strategy.
LeaderStrategy initial_strategy(const ChannelSet& ch, const SystemParams& p, const LeaderConfig& cfg);

// Leader utility with the follower responding per cfg.jammer.
double leader_value(const ChannelSet& ch, const LeaderStrategy& leader, const SystemParams& p,
                    JammerModel model);

// Block coordinate ascent over power, beams and reflection with the follower
// response embedded. A block is kept only if it does not lower the leader
// utility.
EquilibriumResult solve_equilibrium(const ChannelSet& ch, const SystemParams& p, const LeaderConfig& cfg = {});

// Same iteration started from a given leader strategy.
EquilibriumResult solve_equilibrium_from(const ChannelSet& ch, const SystemParams& p, const LeaderConfig& cfg,
                                         const LeaderStrategy& start);

}  // namespace arisgame

#endif  // ARISGAME_LEADER_HPP
