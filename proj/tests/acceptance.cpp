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



// Acceptance suite. Usage: acceptance [criterion...]; with no argument every
// criterion runs. Prints one line per criterion and exits non-zero on failure.

#include "arisgame/harness.hpp"
#include "arisgame/oracle.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <random>
#include <thread>
#include <string>
#include <vector>

using namespace arisgame;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Instance {
  SystemParams p;
  ChannelSet ch;
  LeaderStrategy leader;
};

// Default-parameter instance with a random feasible leader strategy.
Instance random_instance(std::uint64_t stream, std::uint64_t index, SystemParams p = {}) {
  Instance in;
  in.p = p;
  in.ch = generate_channel_set(in.p, mix_seed(stream, index));
  in.leader = oracle::random_leader(in.ch, in.p, mix_seed(stream + 1, index));
  return in;
}

Outcome time_limit(Outcome o, Clock::time_point t0, double limit_s) {
  const double t = seconds_since(t0);
  o.detail += fmt::format("; runtime {:.1f} s (limit {:.0f} s)", t, limit_s);
  if (t > limit_s) o.passed = false;
  return o;
}

// ------------------------------------------------------------------ 1

Outcome criterion1() {
  const auto t0 = Clock::now();
  constexpr long kSteps = 1'000'001;  // pitch 1e-5 of the range
  double worst = 0.0;
  int interior = 0;
  double step = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Instance in = random_instance(101, i);
    const PowerResult closed = best_power(in.ch, in.leader, in.p);
    const double grid = oracle::grid_best_power(in.ch, in.leader, in.p, kSteps);
    step = in.p.jammer_power_max / static_cast<double>(kSteps - 1);
    worst = std::max(worst, std::abs(closed.power - grid));
    if (closed.power > 0.0 && closed.power < in.p.jammer_power_max) ++interior;
  }
  const bool ok = worst <= step * (1.0 + 1e-9);
  return time_limit({ok, fmt::format("200 instances, max |closed - grid| = {:.3g} W, step {:.3g} W, {} interior",
                                     worst, step, interior)},
                    t0, 120);
}

// ------------------------------------------------------------------ 2

Outcome criterion2() {
  const auto t0 = Clock::now();
  double worst_abs = -1e300, worst_rel = -1e300, closest = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Instance in = random_instance(202, i);
    const auto s = oracle::sample_best_direction(in.ch, in.leader, 100'000, mix_seed(203, i));
    worst_abs = std::max(worst_abs, s.best_sampled - s.closed_form);
    worst_rel = std::max(worst_rel, (s.best_sampled - s.closed_form) / s.closed_form);
    closest = std::max(closest, s.best_sampled / s.closed_form);
  }
  const bool ok = worst_abs <= 1e-9 && worst_rel <= 1e-9;
  return time_limit({ok, fmt::format("100 x 1e5 samples, max excess {:.3g} absolute, {:.3g} relative; "
                                     "best sample reaches {:.6f} of the closed form",
                                     worst_abs, worst_rel, closest)},
                    t0, 120);
}

// ------------------------------------------------------------------ 3

Outcome criterion3() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Instance in = random_instance(303, i);
    const FollowerStrategy f = best_response(in.ch, in.leader, in.p).strategy;
    const double formula = sinr(in.ch, in.leader, f, in.p);
    const double mc = oracle::monte_carlo_sinr(in.ch, in.leader, f, in.p, 1'000'000, mix_seed(304, i));
    worst = std::max(worst, rel_diff(mc, formula));
  }
  return time_limit({worst <= 0.01, fmt::format("20 x 1e6 symbols, max relative error {:.3g}", worst)}, t0, 180);
}

// ------------------------------------------------------------------ 4

Outcome criterion4() {
  const auto t0 = Clock::now();
  double worst_excess = 0.0, worst_vertex = 0.0;
  int unconstrained = 0;
  bool ok = true;
  for (int i = 0; i < 100; ++i) {
    const Instance in = random_instance(404, i);
    const auto& l = in.leader;
    const PowerSolution sol = optimize_power(in.ch, l.source_beam, l.dest_beam, l.theta, in.p);
    const auto g = oracle::grid_power(in.ch, l.source_beam, l.dest_beam, l.theta, in.p, 2000);
    const double gap = std::abs(sol.objective - g.objective);
    const double allowed = g.cell_tolerance + 1e-12 * std::abs(g.objective);
    worst_excess = std::max(worst_excess, gap / std::max(allowed, 1e-300));
    if (gap > allowed) ok = false;
    if (g.vertex_interior) {
      ++unconstrained;
      const double vertex = std::pow(g.vertex_gain / (2.0 * in.p.source_cost), 2);
      const double r = rel_diff(sol.source_power, vertex);
      worst_vertex = std::max(worst_vertex, r);
      if (r > 1e-6) ok = false;
    }
  }
  if (unconstrained == 0) ok = false;

  // Tightened limits so the box, reaction and budget constraints bind.
  std::mt19937_64 rng(405);
  std::uniform_real_distribution<double> logu(-3.0, 0.0);
  double worst_stressed = 0.0;
  int binding = 0;
  for (int i = 0; i < 100; ++i) {
    const Instance base = random_instance(404, i);
    const auto& l = base.leader;
    const auto free = oracle::grid_power(base.ch, l.source_beam, l.dest_beam, l.theta, base.p, 50);
    const double vertex = std::pow(free.vertex_gain / (2.0 * base.p.source_cost), 2);
    SystemParams p = base.p;
    p.source_power_max = std::max(l.source_power, vertex * std::pow(10.0, logu(rng) + 0.5));
    p.jammer_power_max = base.p.jammer_power_max * std::pow(10.0, logu(rng));
    const double load = ris_power(base.ch, l, best_response(base.ch, l, base.p).strategy, base.p);
    p.ris_power_max = std::max(load, base.p.ris_power_max * std::pow(10.0, logu(rng)));
    const PowerSolution sol = optimize_power(base.ch, l.source_beam, l.dest_beam, l.theta, p);
    const auto g = oracle::grid_power(base.ch, l.source_beam, l.dest_beam, l.theta, p, 2000);
    if (!g.vertex_interior) ++binding;
    const double gap = std::abs(sol.objective - g.objective);
    const double allowed = g.cell_tolerance + 1e-12 * std::abs(g.objective);
    worst_stressed = std::max(worst_stressed, gap / std::max(allowed, 1e-300));
    if (gap > allowed) ok = false;
  }
  return time_limit({ok, fmt::format("100 instances, max |solver - grid| / cell = {:.3g}; {} unconstrained, "
                                     "max vertex error {:.3g}; 100 tightened instances ({} binding), "
                                     "max |solver - grid| / cell = {:.3g}",
                                     worst_excess, unconstrained, worst_vertex, binding, worst_stressed)},
                    t0, 180);
}

// ------------------------------------------------------------------ 5

double tangency_mismatch(const ReflectionSurrogate& sur) {
  double worst = 0.0;
  for (const auto& t : sur.tangency()) {
    worst = std::max(worst, std::abs(t.surrogate - t.exact) / std::max(1.0, std::abs(t.exact)));
    const double gs = std::max(1.0, t.exact_grad.cwiseAbs().maxCoeff());
    worst = std::max(worst, (t.surrogate_grad - t.exact_grad).cwiseAbs().maxCoeff() / gs);
  }
  return worst;
}

Outcome criterion5() {
  const auto t0 = Clock::now();
  bool ok = true;

  // (a) every expansion point of the surrogate iteration
  double tang = 0.0;
  int points = 0, skipped = 0;
  for (int i = 0; i < 10; ++i) {
    const Instance in = random_instance(505, i);
    const auto& l = in.leader;
    const ReflectionData d = build_reflection_data(in.ch, l.source_beam, l.dest_beam);
    const double pj = in.p.jammer_power_max;
    SurrogateState st = tight_state(d, l.theta, in.p);
    for (int k = 0; k < 15; ++k) {
      const ReflectionSurrogate sur(d, st, l.source_power, pj, in.p);
      tang = std::max(tang, tangency_mismatch(sur));
      tang = std::max(tang, rel_diff(sur.objective(sur.pack(st)), d.ratio(st.theta0)));
      const FixedJammerSurrogate fj(d, st.theta0, l.source_power, pj, in.p);
      const double exact = std::norm(d.numerator(st.theta0)) /
                           (pj * d.jam_row(st.theta0).squaredNorm() + d.noise(st.theta0, in.p));
      tang = std::max(tang, rel_diff(fj.objective(fj.start()), exact));
      ++points;
      try {
        st = sca_inner_solve(d, st, l.source_power, pj, in.p).state;
      } catch (const std::exception&) {
        ++skipped;
        break;
      }
    }
  }
  const bool ok_a = tang <= 1e-10;

  // (b) finite differences on 50 random interior points
  double grad = 0.0;
  std::mt19937_64 rng(506);
  std::uniform_real_distribution<double> u(0.2, 0.8);
  SystemParams small;
  small.elements = 6;
  for (int i = 0; i < 50; ++i) {
    const Instance in = random_instance(507, i, small);
    const auto& l = in.leader;
    const ReflectionData d = build_reflection_data(in.ch, l.source_beam, l.dest_beam);
    const ReflectionSurrogate sur(d, tight_state(d, l.theta, small), l.source_power, small.jammer_power_max, small);
    const FixedJammerSurrogate fj(d, l.theta, l.source_power, small.jammer_power_max, small);
    for (const numerics::ConvexProgram* prog : {&sur.program(), &fj.program()}) {
      RealVector z(prog->dimension());
      for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = prog->lower(k) + u(rng) * (prog->upper(k) - prog->lower(k));
      grad = std::max(grad, numerics::check_gradient(*prog->objective, z).max_relative_error);
      for (const auto& g : prog->constraints) grad = std::max(grad, numerics::check_gradient(*g, z).max_relative_error);
    }
  }
  const bool ok_b = grad <= 1e-4;

  // (c) single element against the exhaustive grid
  SystemParams one;
  one.elements = 1;
  const LeaderConfig cfg;
  double single = 0.0;
  int compared = 0;
  for (int i = 0; i < 50; ++i) {
    const Instance in = random_instance(508, i, one);
    const auto& l = in.leader;
    const ReflectionData d = build_reflection_data(in.ch, l.source_beam, l.dest_beam);
    const auto res = optimize_reflection(in.ch, l.source_beam, l.dest_beam, l.source_power, one.jammer_power_max,
                                         ComplexVector::Zero(1), one, cfg);
    const auto grid = oracle::grid_reflection_single_element(d, l.source_power, one.jammer_power_max, one, 2000);
    if (!grid.found) continue;
    ++compared;
    single = std::max(single, rel_diff(d.ratio(res.theta), grid.objective));
  }
  const bool ok_c = single <= 1e-3 && compared == 50;

  ok = ok_a && ok_b && ok_c;
  return time_limit({ok, fmt::format("(a) {} expansion points, max mismatch {:.3g}{}; (b) max gradient error {:.3g}; "
                                     "(c) {} single-element instances, max relative gap {:.3g}",
                                     points, tang, skipped ? fmt::format(" ({} stopped early)", skipped) : "", grad,
                                     compared, single)},
                    t0, 300);
}

// ------------------------------------------------------------------ 6

LeaderStrategy perturb(const LeaderStrategy& l, const SystemParams& p, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(-4.0, -1.0);
  const double scale = std::pow(10.0, u(rng));
  auto cvec = [&](Eigen::Index len) {
    ComplexVector v(len);
    for (Eigen::Index i = 0; i < len; ++i) {
      const double re = n(rng);
      v(i) = cdouble(re, n(rng));
    }
    return v;
  };
  LeaderStrategy d = l;
  d.source_power = std::clamp(l.source_power + scale * p.source_power_max * n(rng), 0.0, p.source_power_max);
  d.source_beam = (l.source_beam + scale * cvec(l.source_beam.size())).normalized();
  d.dest_beam = (l.dest_beam + scale * cvec(l.dest_beam.size())).normalized();
  if (l.theta.size() > 0) {
    d.theta = l.theta + scale * p.amplitude_max * cvec(l.theta.size());
    for (Eigen::Index i = 0; i < d.theta.size(); ++i)
      if (std::abs(d.theta(i)) > p.amplitude_max) d.theta(i) *= p.amplitude_max / std::abs(d.theta(i));
  }
  return d;
}

Outcome criterion6() {
  const auto t0 = Clock::now();
  const SystemParams p;
  const LeaderConfig cfg;
  bool ok_a = true;
  double fixed_point = 0.0, deviation = -1e300;
  long feasible_devs = 0, drawn = 0;
  double single_solve = 0.0;
  std::mt19937_64 rng(606);
  for (int i = 0; i < 50; ++i) {
    const ChannelSet ch = generate_channel_set(p, mix_seed(601, i));
    const auto ts = Clock::now();
    const EquilibriumResult r = solve_equilibrium(ch, p, cfg);
    single_solve = std::max(single_solve, seconds_since(ts));

    double prev = -1e300;
    for (const auto& e : r.trace) {
      if (!e.accepted) continue;
      if (e.leader_utility < prev) ok_a = false;
      prev = e.leader_utility;
    }

    LeaderConfig once = cfg;
    once.max_outer = 1;
    const EquilibriumResult again = solve_equilibrium_from(ch, p, once, r.leader);
    fixed_point = std::max(fixed_point, std::abs(again.leader_utility - r.leader_utility));

    int found = 0;
    while (found < 1000 && drawn < 1000L * 50 * 20) {
      ++drawn;
      const LeaderStrategy dev = perturb(r.leader, p, rng);
      const FollowerStrategy f = best_response(ch, dev, p).strategy;
      if (!check_feasible(dev, f, p, ch, cfg.solver.tol_feas).feasible) continue;
      ++found;
      const double u = utility_leader(ch, dev, f, p);
      deviation = std::max(deviation, (u - r.leader_utility) / std::max(std::abs(r.leader_utility), 1e-12));
    }
    feasible_devs += found;
  }
  const bool ok_b = fixed_point < 1e-4;
  const bool ok_c = deviation <= 1e-4 && feasible_devs == 50L * 1000;

  SystemParams none = p;
  none.elements = 0;
  double worst_cell = 0.0;
  bool ok_d = true;
  for (int i = 0; i < 50; ++i) {
    const ChannelSet ch = generate_channel_set(none, mix_seed(601, i));
    const EquilibriumResult r = solve_equilibrium(ch, none, cfg);
    const auto g = oracle::grid_no_ris_equilibrium(ch, none, 2000);
    const double allowed = g.cell_tolerance + 1e-12 * std::abs(g.leader_utility);
    const double gap = std::abs(r.leader_utility - g.leader_utility);
    worst_cell = std::max(worst_cell, gap / std::max(allowed, 1e-300));
    if (gap > allowed) ok_d = false;
  }
  const bool ok_t = single_solve <= 300.0;
  return {ok_a && ok_b && ok_c && ok_d && ok_t,
          fmt::format("(a) traces {}; (b) max fixed-point change {:.3g}; (c) {} feasible deviations, "
                      "max relative gain {:.3g}; (d) max |solve - grid| / cell = {:.3g}; slowest N=50 solve {:.2f} s "
                      "(limit 300 s); runtime {:.1f} s",
                      ok_a ? "non-decreasing" : "DECREASE", fixed_point, feasible_devs, deviation, worst_cell,
                      single_solve, seconds_since(t0))};
}

// ------------------------------------------------------------------ 7

struct Series {
  std::vector<double> x;
  std::vector<Statistic> stat;
  std::vector<std::vector<double>> samples;  // per grid point, ordered by trial
};

enum class Quantity { SourcePower, JammerPower, LeaderUtility, JammerUtility };

double pick(const SweepRecord& r, Quantity q) {
  switch (q) {
    case Quantity::SourcePower: return r.source_power;
    case Quantity::JammerPower: return r.jammer_power;
    case Quantity::LeaderUtility: return r.leader_utility;
    case Quantity::JammerUtility: return r.jammer_utility;
  }
  return 0.0;
}

Series series(const Scenario& s, const std::vector<SweepRecord>& recs, Quantity q) {
  Series out;
  for (double v : s.grid) {
    std::vector<double> vals;
    for (const auto& r : recs)
      if (r.swept_value == v && !r.failed) vals.push_back(pick(r, q));
    out.x.push_back(v);
    out.stat.push_back(mean_ci95(vals));
    out.samples.push_back(std::move(vals));
  }
  return out;
}

struct Comparison {
  std::string label;
  Statistic hi, lo;  // expected hi >= lo (or hi > lo when strict)
  std::vector<double> hi_samples, lo_samples;
  bool strict = false;
};

struct Tally {
  int held = 0, flagged = 0, failed = 0;
  std::vector<std::string> notes;
};

constexpr double kTieTolerance = 1e-3;

void judge(const Comparison& c, Tally& t) {
  const double diff = c.hi.mean - c.lo.mean;
  const double tie = kTieTolerance * std::max({std::abs(c.hi.mean), std::abs(c.lo.mean), 1e-300});
  const bool holds = c.strict ? diff > 0.0 : diff >= -tie;
  const bool tied = std::abs(diff) <= tie;
  const bool separated = std::abs(diff) > c.hi.half_width + c.lo.half_width;
  std::string paired;
  if (c.hi_samples.size() == c.lo_samples.size() && !c.hi_samples.empty()) {
    std::vector<double> d(c.hi_samples.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = c.hi_samples[k] - c.lo_samples[k];
    const Statistic pd = mean_ci95(d);
    paired = fmt::format(", paired diff {:.4g} +- {:.3g}", pd.mean, pd.half_width);
  }
  const std::string line = fmt::format("{}: {:.5g} vs {:.5g} (CI +- {:.3g}, +- {:.3g}{})", c.label, c.hi.mean,
                                       c.lo.mean, c.hi.half_width, c.lo.half_width, paired);
  if (!holds) {
    ++t.failed;
    t.notes.push_back("VIOLATED " + line);
  } else if (!separated && !(tied && !c.strict)) {
    ++t.flagged;
    t.notes.push_back("FLAGGED (CIs overlap) " + line);
  } else {
    ++t.held;
  }
}

// Adjacent pairs of a series in the expected non-increasing direction.
void monotone(const std::string& name, const Series& s, bool increasing, Tally& t) {
  for (std::size_t k = 0; k + 1 < s.x.size(); ++k) {
    const std::size_t a = increasing ? k + 1 : k, b = increasing ? k : k + 1;
    judge({fmt::format("{} at {:g} vs {:g}", name, s.x[a], s.x[b]), s.stat[a], s.stat[b], s.samples[a],
           s.samples[b], false},
          t);
  }
}

int workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<SweepRecord> sweep(Scenario& s) {
  SweepOptions opt;
  opt.workers = workers();
  s.validate();
  return run_sweep(s, opt);
}

Scenario scenario(SweepAxis axis, Scheme scheme, std::vector<double> grid = {}) {
  Scenario s;
  s.id = fmt::format("{}-{}", to_string(axis), to_string(scheme));
  s.axis = axis;
  s.scheme = scheme;
  s.grid = grid.empty() ? default_grid(axis) : std::move(grid);
  s.trials = 100;
  s.base_seed = 1;
  return s;
}

int failures(const std::vector<SweepRecord>& recs) {
  return static_cast<int>(std::count_if(recs.begin(), recs.end(), [](const auto& r) { return r.failed; }));
}

Outcome criterion7() {
  const auto t0 = Clock::now();
  Tally t;
  int failed_runs = 0;

  // (a), (b) cost sweeps
  Scenario cs = scenario(SweepAxis::SourceCost, Scheme::ActiveRis);
  const auto cs_rec = sweep(cs);
  failed_runs += failures(cs_rec);
  monotone("P_S over c_S", series(cs, cs_rec, Quantity::SourcePower), false, t);

  Scenario cj = scenario(SweepAxis::JammerCost, Scheme::ActiveRis);
  const auto cj_rec = sweep(cj);
  failed_runs += failures(cj_rec);
  monotone("P_S over c_J", series(cj, cj_rec, Quantity::SourcePower), true, t);
  monotone("P_J over c_J", series(cj, cj_rec, Quantity::JammerPower), false, t);

  // (c) schemes over the element count
  std::map<Scheme, Series> ul, uj;
  for (Scheme sc : {Scheme::ActiveRis, Scheme::PassiveRis, Scheme::NoRis}) {
    Scenario s = scenario(SweepAxis::Elements, sc);
    const auto rec = sweep(s);
    failed_runs += failures(rec);
    ul[sc] = series(s, rec, Quantity::LeaderUtility);
    uj[sc] = series(s, rec, Quantity::JammerUtility);
  }
  const auto& grid_n = ul[Scheme::ActiveRis].x;
  for (std::size_t k = 0; k < grid_n.size(); ++k) {
    const auto& a = ul[Scheme::ActiveRis];
    const auto& b = ul[Scheme::PassiveRis];
    const auto& c = ul[Scheme::NoRis];
    judge({fmt::format("u_L active > passive at N={:g}", grid_n[k]), a.stat[k], b.stat[k], a.samples[k],
           b.samples[k], true},
          t);
    judge({fmt::format("u_L passive > no-surface at N={:g}", grid_n[k]), b.stat[k], c.stat[k], b.samples[k],
           c.samples[k], true},
          t);
  }

  // (d) jammer utility at N = 50
  Scenario mp = scenario(SweepAxis::Elements, Scheme::MaxPowerJammer, {50.0});
  const auto mp_rec = sweep(mp);
  failed_runs += failures(mp_rec);
  const Series mp_uj = series(mp, mp_rec, Quantity::JammerUtility);
  for (Scheme sc : {Scheme::ActiveRis, Scheme::PassiveRis, Scheme::NoRis}) {
    const Series& o = uj[sc];
    const auto k = static_cast<std::size_t>(std::find(o.x.begin(), o.x.end(), 50.0) - o.x.begin());
    judge({fmt::format("u_J {} > max-power jammer at N=50", to_string(sc)), o.stat[k], mp_uj.stat[0], o.samples[k],
           mp_uj.samples[0], true},
          t);
  }

  // (e) jammer moving toward the destination
  Scenario jx = scenario(SweepAxis::JammerX, Scheme::ActiveRis);
  const auto jx_rec = sweep(jx);
  failed_runs += failures(jx_rec);
  Series loc = series(jx, jx_rec, Quantity::LeaderUtility);
  const Point3 dest = jx.params.geometry.destination;
  std::vector<std::size_t> order(loc.x.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return distance(jammer_on_path(loc.x[a]), dest) > distance(jammer_on_path(loc.x[b]), dest);
  });
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const std::size_t a = order[k], b = order[k + 1];
    judge({fmt::format("u_L at jammer x={:g} vs closer x={:g}", loc.x[a], loc.x[b]), loc.stat[a], loc.stat[b],
           loc.samples[a], loc.samples[b], false},
          t);
  }

  const double runtime = seconds_since(t0);
  const bool ok = t.failed == 0 && failed_runs == 0 && runtime <= 3600.0;
  std::string detail = fmt::format("{} comparisons held with separated CIs, {} flagged, {} violated; {} failed runs; "
                                   "runtime {:.1f} s (limit 3600 s)",
                                   t.held, t.flagged, t.failed, failed_runs, runtime);
  for (const auto& n : t.notes) detail += "\n    " + n;
  return {ok, detail};
}

// ------------------------------------------------------------------ 8

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion8() {
  const char* cli = std::getenv("ARISGAME_CLI");
  if (!cli) return {false, "ARISGAME_CLI is not set"};
  const std::string cfg = "determinism.ini";
  {
    std::ofstream out(cfg);
    out << "[system]\nelements = 8\n\n[scenario]\nid = determinism\nscheme = active-ris\nsweep = c_j\n"
           "grid = 2, 6, 10\ntrials = 4\nbase_seed = 17\n";
  }
  std::vector<std::string> files;
  for (const auto& [name, w] : std::vector<std::pair<std::string, int>>{{"a", 1}, {"b", 1}, {"c", 3}}) {
    const std::string path = "determinism_" + name + ".csv";
    const std::string cmd = fmt::format("\"{}\" sweep --config {} --out {} --workers {}", cli, cfg, path, w);
    if (std::system(cmd.c_str()) != 0) return {false, "sweep command failed: " + cmd};
    files.push_back(slurp(path));
  }
  const bool same = !files[0].empty() && files[0] == files[1] && files[0] == files[2];
  return {same, fmt::format("three runs ({} bytes each), workers 1, 1 and 3: {}", files[0].size(),
                            same ? "byte-identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                          criterion5, criterion6, criterion7, criterion8};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) which.push_back(i);

  int failed = 0;
  for (int c : which) {
    if (c < 1 || c > static_cast<int>(criteria.size())) {
      fmt::print("criterion {}: FAIL unknown criterion\n", c);
      ++failed;
      continue;
    }
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(c - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("raised: ") + e.what()};
    }
    fmt::print("criterion {}: {} {}\n", c, o.passed ? "PASS" : "FAIL", o.detail);
    std::fflush(stdout);
    if (!o.passed) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
