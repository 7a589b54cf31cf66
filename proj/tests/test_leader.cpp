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
#include "arisgame/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace arisgame;

namespace {

struct Instance {
  SystemParams p;
  ChannelSet ch;
  LeaderStrategy leader;
};

Instance make_instance(std::uint64_t seed, SystemParams p = {}) {
  Instance in;
  in.p = p;
  in.ch = generate_channel_set(in.p, seed);
  in.leader = oracle::random_leader(in.ch, in.p, seed + 900);
  return in;
}

ComplexVector random_unit(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  ComplexVector w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = cdouble(g(rng), g(rng));
  return w.normalized();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

// ------------------------------------------------------------------ power

TEST_CASE("power vertex when constraints are inactive") {
  SystemParams p;
  p.ris_power_max = std::numeric_limits<double>::infinity();
  p.jammer_power_max = 1e6;
  p.source_power_max = 1e3;
  int checked = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Instance in = make_instance(s, p);
    const PowerSolution sol = optimize_power(in.ch, in.leader.source_beam, in.leader.dest_beam, in.leader.theta, p);
    const double vertex = std::pow(sol.vertex_gain / (2.0 * p.source_cost), 2.0);
    if (vertex >= p.source_power_max) continue;
    ++checked;
    CHECK(rel(sol.source_power, vertex) <= 1e-6);
  }
  CHECK(checked > 5);
}

TEST_CASE("prohibitive source cost silences the source") {
  SystemParams p;
  p.source_cost = 1e12;
  const Instance in = make_instance(2, p);
  const PowerSolution sol = optimize_power(in.ch, in.leader.source_beam, in.leader.dest_beam, in.leader.theta, p);
  CHECK(sol.source_power <= 1e-6);
}

TEST_CASE("power solution agrees with the two-dimensional grid") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const Instance in = make_instance(s);
    const PowerSolution sol =
        optimize_power(in.ch, in.leader.source_beam, in.leader.dest_beam, in.leader.theta, in.p);
    const auto grid = oracle::grid_power(in.ch, in.leader.source_beam, in.leader.dest_beam, in.leader.theta, in.p, 500);
    CHECK(std::abs(sol.objective - grid.objective) <= grid.cell_tolerance);
    CHECK(sol.source_power <= in.p.source_power_max);
    CHECK(sol.jammer_power <= in.p.jammer_power_max);
  }
}

TEST_CASE("surface noise beyond the budget is infeasible") {
  SystemParams p;
  p.ris_noise = 1.0;
  Instance in = make_instance(3);
  in.p = p;
  in.leader.theta.setConstant(1.0);
  CHECK_THROWS_AS(optimize_power(in.ch, in.leader.source_beam, in.leader.dest_beam, in.leader.theta, p), Infeasible);
}

// ------------------------------------------------------------------ beams

TEST_CASE("transmit beam is maximum ratio") {
  std::mt19937_64 rng(5);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Instance in = make_instance(s);
    const ComplexVector w = update_transmit_beam(in.ch, in.leader.theta, in.leader.dest_beam, in.leader.source_beam).beam;
    const ComplexMatrix h = composite(in.ch, in.leader.theta).source_total;
    const double best = std::abs(in.leader.dest_beam.dot(h * w));
    CHECK(std::abs(w.norm() - 1.0) < 1e-14);
    for (int k = 0; k < 1000; ++k)
      CHECK(std::abs(in.leader.dest_beam.dot(h * random_unit(rng, 4))) <= best * (1.0 + 1e-12));
  }
  SystemParams single;
  single.source_antennas = 1;
  const Instance in = make_instance(1, single);
  const ComplexVector w = update_transmit_beam(in.ch, in.leader.theta, in.leader.dest_beam, in.leader.source_beam).beam;
  CHECK(std::abs(std::abs(w(0)) - 1.0) < 1e-14);
  CHECK(in.leader.dest_beam.dot(composite(in.ch, in.leader.theta).source_total * w).imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("transmit beam keeps an already matched beam") {
  Instance in = make_instance(6);
  in.leader.theta.setZero();
  in.leader.dest_beam = ComplexVector::Unit(2, 0);
  in.ch.source_dest.setZero();
  in.ch.source_dest(0, 0) = 2.0;
  const ComplexVector w = update_transmit_beam(in.ch, in.leader.theta, in.leader.dest_beam, in.leader.source_beam).beam;
  CHECK((w - ComplexVector::Unit(4, 0)).norm() == 0.0);
}

TEST_CASE("receive beam maximizes the signal to jamming ratio") {
  std::mt19937_64 rng(8);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Instance in = make_instance(s);
    const ComplexVector w = update_receive_beam(in.ch, in.leader.theta, in.leader.source_beam,
                                                default_receive_ridge(in.ch, in.leader.theta));
    const CompositeChannels c = composite(in.ch, in.leader.theta);
    auto ratio = [&](const ComplexVector& wd) {
      return std::abs(wd.dot(c.source_total * in.leader.source_beam)) / (wd.adjoint() * c.jammer_total).norm();
    };
    const double best = ratio(w);
    for (int k = 0; k < 10000; ++k) CHECK(ratio(random_unit(rng, 2)) <= best * (1.0 + 1e-6));
  }
}

TEST_CASE("receive beam with an identity whitener is maximum ratio combining") {
  Instance in = make_instance(7);
  in.leader.theta.setZero();
  in.ch.jammer_dest = ComplexMatrix::Zero(2, 4);
  in.ch.jammer_dest(0, 0) = 1.0;
  in.ch.jammer_dest(1, 1) = 1.0;
  const ComplexVector w = update_receive_beam(in.ch, in.leader.theta, in.leader.source_beam, 0.0);
  const ComplexVector mrc = (in.ch.source_dest * in.leader.source_beam).normalized();
  CHECK(std::abs(std::abs(w.dot(mrc)) - 1.0) < 1e-12);

  SystemParams single;
  single.dest_antennas = 1;
  const Instance one = make_instance(2, single);
  const ComplexVector w1 = update_receive_beam(one.ch, one.leader.theta, one.leader.source_beam, 1e-10);
  CHECK(std::abs(std::abs(w1(0)) - 1.0) < 1e-14);
}

TEST_CASE("fixed-jammer receive beam maximizes the SINR") {
  std::mt19937_64 rng(9);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Instance in = make_instance(s);
    const double pj = 2.5;
    const ComplexVector w =
        update_receive_beam_fixed_jammer(in.ch, in.leader.theta, in.leader.source_beam, pj, in.p);
    auto value = [&](const ComplexVector& wd) {
      LeaderStrategy l = in.leader;
      l.dest_beam = wd;
      const FollowerStrategy f{pj, best_direction(in.ch, l).direction};
      return sinr(in.ch, l, f, in.p);
    };
    const double best = value(w);
    for (int k = 0; k < 2000; ++k) CHECK(value(random_unit(rng, 2)) <= best * (1.0 + 1e-9));
  }
}

// ------------------------------------------------------------------ reflection

TEST_CASE("reflection data identities") {
  std::mt19937_64 rng(10);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Instance in = make_instance(s);
    const ReflectionData d = build_reflection_data(in.ch, in.leader.source_beam, in.leader.dest_beam);
    const ComplexVector th = in.leader.theta;
    const CompositeChannels c = composite(in.ch, th);
    const cdouble num = in.leader.dest_beam.dot(c.source_total * in.leader.source_beam);
    CHECK(std::abs(d.numerator(th) - num) <= 1e-12 * std::abs(num));
    const Eigen::RowVectorXcd row = in.leader.dest_beam.adjoint() * c.jammer_total;
    CHECK((d.jam_row(th) - row).norm() <= 1e-12 * row.norm());
    const EffectiveGains g = effective_gains(in.ch, in.leader, ComplexVector(), in.p);
    CHECK(rel(d.noise(th, in.p), g.noise) < 1e-12);
    CHECK(rel(d.ratio(th), g.signal / g.jam_gain) < 1e-12);
    const FollowerStrategy f{in.p.jammer_power_max, random_unit(rng, 4)};
    CHECK(ris_power(in.ch, in.leader, f, in.p) <=
          d.budget_load(th, in.leader.source_power, in.p.jammer_power_max, in.p) * (1.0 + 1e-12));
    const double reaction = d.reaction(th, in.leader.source_power, in.p);
    CHECK(rel(std::min(std::max(reaction, 0.0), in.p.jammer_power_max), best_power(in.ch, in.leader, in.p).power) < 1e-9);
  }
}

TEST_CASE("surrogate is tight and tangent at the expansion point") {
  SystemParams p;
  p.elements = 8;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Instance in = make_instance(s, p);
    const ReflectionData d = build_reflection_data(in.ch, in.leader.source_beam, in.leader.dest_beam);
    const SurrogateState st = tight_state(d, in.leader.theta, p);
    const ReflectionSurrogate sur(d, st, in.leader.source_power, p.jammer_power_max, p);
    for (const auto& t : sur.tangency()) {
      INFO(t.name);
      CHECK(std::abs(t.surrogate - t.exact) <= 1e-10 * std::max(1.0, std::abs(t.exact)));
      CHECK((t.surrogate_grad - t.exact_grad).cwiseAbs().maxCoeff() <=
            1e-10 * std::max(1.0, t.exact_grad.cwiseAbs().maxCoeff()));
    }
    CHECK(rel(sur.objective(sur.pack(st)), d.ratio(in.leader.theta)) < 1e-10);
    const SurrogateState back = sur.unpack(sur.pack(st));
    CHECK((back.theta0 - st.theta0).norm() <= 1e-14 * std::max(1.0, st.theta0.norm()));
    CHECK(rel(back.psi0, st.psi0) < 1e-12);

    const FixedJammerSurrogate fj(d, in.leader.theta, in.leader.source_power, p.jammer_power_max, p);
    const double exact = std::norm(d.numerator(in.leader.theta)) /
                         (p.jammer_power_max * d.jam_row(in.leader.theta).squaredNorm() + d.noise(in.leader.theta, p));
    CHECK(rel(fj.objective(fj.start()), exact) < 1e-10);
    CHECK((fj.theta(fj.start()) - in.leader.theta).norm() <= 1e-14 * std::max(1.0, in.leader.theta.norm()));
  }
}

TEST_CASE("surrogate program gradients match finite differences") {
  SystemParams p;
  p.elements = 6;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Instance in = make_instance(s, p);
    const ReflectionData d = build_reflection_data(in.ch, in.leader.source_beam, in.leader.dest_beam);
    const ReflectionSurrogate sur(d, tight_state(d, in.leader.theta, p), in.leader.source_power, p.jammer_power_max, p);
    const auto& prog = sur.program();
    for (int k = 0; k < 10; ++k) {
      RealVector z(prog.dimension());
      for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = prog.lower(i) + (0.2 + 0.6 * u(rng)) * (prog.upper(i) - prog.lower(i));
      CHECK(numerics::check_gradient(*prog.objective, z).max_relative_error <= 1e-4);
      for (const auto& g : prog.constraints) CHECK(numerics::check_gradient(*g, z).max_relative_error <= 1e-4);
    }
  }
}

TEST_CASE("one surrogate step improves the ratio and bounds it from below") {
  SystemParams p;
  p.elements = 10;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Instance in = make_instance(s, p);
    const ReflectionData d = build_reflection_data(in.ch, in.leader.source_beam, in.leader.dest_beam);
    const SurrogateState st = tight_state(d, in.leader.theta, p);
    const InnerStep step = sca_inner_solve(d, st, in.leader.source_power, p.jammer_power_max, p);
    CHECK(step.surrogate_value >= step.start_value * (1.0 - 1e-9));
    CHECK(d.ratio(step.theta) >= step.surrogate_value * (1.0 - 1e-9));
    CHECK(rel(step.start_value, d.ratio(in.leader.theta)) < 1e-9);
  }
}

TEST_CASE("reflection loop is monotone and feasible") {
  const LeaderConfig cfg;
  for (std::uint64_t s = 0; s < 4; ++s) {
    const Instance in = make_instance(s);
    const double pj = in.p.jammer_power_max;
    const ReflectionResult r = optimize_reflection(in.ch, in.leader.source_beam, in.leader.dest_beam,
                                                   in.leader.source_power, pj, in.leader.theta, in.p, cfg);
    CHECK_FALSE(r.skipped);
    for (std::size_t k = 1; k < r.objective_trace.size(); ++k)
      CHECK(r.objective_trace[k] >= r.objective_trace[k - 1] * (1.0 - 1e-12));
    for (std::size_t k = 0; k < r.surrogate_trace.size(); ++k)
      CHECK(r.objective_trace[k + 1] >= r.surrogate_trace[k] * (1.0 - 1e-9));
    const ReflectionData d = build_reflection_data(in.ch, in.leader.source_beam, in.leader.dest_beam);
    CHECK(r.theta.cwiseAbs().maxCoeff() <= in.p.amplitude_max * (1.0 + 1e-8));
    CHECK(d.budget_load(r.theta, in.leader.source_power, pj, in.p) <= in.p.ris_power_max * (1.0 + 1e-8));
    CHECK(d.reaction(r.theta, in.leader.source_power, in.p) <= pj * (1.0 + 1e-6));
    CHECK(r.objective_trace.back() > r.objective_trace.front());
    if (r.converged) CHECK(r.kkt_residual <= 1e-4);
  }
}

TEST_CASE("reflection loop with a vanishing reflected source path shrinks jamming") {
  Instance in = make_instance(11);
  in.ch.source_ris.setZero();
  const ReflectionResult r = optimize_reflection(in.ch, in.leader.source_beam, in.leader.dest_beam,
                                                 in.leader.source_power, in.p.jammer_power_max, in.leader.theta,
                                                 in.p, LeaderConfig{});
  const ReflectionData d = build_reflection_data(in.ch, in.leader.source_beam, in.leader.dest_beam);
  CHECK(d.a.norm() == 0.0);
  for (std::size_t k = 1; k < r.objective_trace.size(); ++k)
    CHECK(r.objective_trace[k] >= r.objective_trace[k - 1] * (1.0 - 1e-12));
  CHECK(d.jam_row(r.theta).norm() <= d.jam_row(in.leader.theta).norm() * (1.0 + 1e-12));
  CHECK(d.ratio(r.theta) >= std::abs(d.b) / d.jam_row(in.leader.theta).norm() * (1.0 - 1e-12));
}

TEST_CASE("infeasible starts are shrunk into the feasible set") {
  SystemParams p;
  p.ris_power_max = 1e-7;
  const Instance in = make_instance(12, p);
  ComplexVector big = ComplexVector::Constant(50, in.p.amplitude_max);
  const ReflectionResult r = optimize_reflection(in.ch, in.leader.source_beam, in.leader.dest_beam,
                                                 in.leader.source_power, in.p.jammer_power_max, big, in.p, LeaderConfig{});
  CHECK(r.restored);
  const ReflectionData d = build_reflection_data(in.ch, in.leader.source_beam, in.leader.dest_beam);
  CHECK(d.budget_load(r.theta, in.leader.source_power, in.p.jammer_power_max, in.p) <= in.p.ris_power_max * (1.0 + 1e-8));
}

// ------------------------------------------------------------------ equilibrium

TEST_CASE("initial strategy is feasible and uses half the surface budget") {
  const SystemParams p;
  const ChannelSet ch = generate_channel_set(p, 3);
  const LeaderStrategy l = initial_strategy(ch, p, LeaderConfig{});
  CHECK_NOTHROW(l.validate(p));
  CHECK(l.source_power == p.source_power_max / 2);
  const FollowerStrategy worst{p.jammer_power_max, best_direction(ch, l).direction};
  CHECK(ris_power(ch, l, worst, p) <= 0.5 * p.ris_power_max * (1.0 + 1e-12));
  LeaderConfig off;
  off.optimize_reflection = false;
  CHECK(initial_strategy(ch, p, off).theta.norm() == 0.0);
}

TEST_CASE("equilibrium invariants") {
  const SystemParams p;
  for (std::uint64_t s = 0; s < 3; ++s) {
    const ChannelSet ch = generate_channel_set(p, s);
    const EquilibriumResult r = solve_equilibrium(ch, p);
    CHECK(r.converged);
    double last = -std::numeric_limits<double>::infinity();
    for (const auto& t : r.trace) {
      CHECK(t.leader_utility >= last);
      last = t.leader_utility;
    }
    CHECK(check_feasible(r.leader, r.follower, p, ch).feasible);
    const Response br = best_response(ch, r.leader, p);
    CHECK(std::abs(br.strategy.jammer_power - r.follower.jammer_power) <= 1e-6);
    CHECK(rel(r.leader_utility, utility_leader(ch, r.leader, r.follower, p)) < 1e-12);
    CHECK(r.leader_utility >= r.trace.front().leader_utility);
    CHECK(r.leader_utility == doctest::Approx(r.trace.back().leader_utility).epsilon(1e-12));

    const EquilibriumResult again = solve_equilibrium(ch, p);
    CHECK(again.leader_utility == r.leader_utility);
    CHECK(again.leader.theta == r.leader.theta);
  }
}

TEST_CASE("equilibrium without a surface") {
  SystemParams p;
  p.elements = 0;
  const ChannelSet ch = generate_channel_set(p, 4);
  const EquilibriumResult r = solve_equilibrium(ch, p);
  CHECK(r.leader.theta.size() == 0);
  CHECK(r.sca_iterations == 0);
  CHECK(check_feasible(r.leader, r.follower, p, ch).feasible);
}

TEST_CASE("max-power jammer model") {
  const SystemParams p;
  const ChannelSet ch = generate_channel_set(p, 5);
  LeaderConfig cfg;
  cfg.jammer = JammerModel::MaxPower;
  const EquilibriumResult r = solve_equilibrium(ch, p, cfg);
  CHECK(r.follower.jammer_power == p.jammer_power_max);
  CHECK(check_feasible(r.leader, r.follower, p, ch).feasible);
}

TEST_CASE("leader configuration validation") {
  LeaderConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.max_outer = 0;
  CHECK_THROWS(cfg.validate());
  cfg = {};
  cfg.outer_tol = -1.0;
  CHECK_THROWS(cfg.validate());
}
