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


#include "arisgame/harness.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

namespace arisgame {

SystemParams scheme_params(Scheme scheme, const SystemParams& p) {
  SystemParams q = p;
  if (scheme == Scheme::PassiveRis) {
    q.amplitude_max = 1.0;
    q.ris_noise = 0.0;
    q.ris_power_max = std::numeric_limits<double>::infinity();
  }
  return q;
}

LeaderConfig scheme_config(Scheme scheme, const LeaderConfig& cfg) {
  LeaderConfig c = cfg;
  if (scheme == Scheme::NoRis) c.optimize_reflection = false;
  if (scheme == Scheme::MaxPowerJammer) c.jammer = JammerModel::MaxPower;
  return c;
}

EquilibriumResult run_baseline(Scheme scheme, const ChannelSet& ch, const SystemParams& p,
                               const LeaderConfig& cfg) {
  return solve_equilibrium(ch, scheme_params(scheme, p), scheme_config(scheme, cfg));
}

std::uint64_t trial_seed(std::uint64_t base_seed, int trial) {
  return mix_seed(base_seed, 0x1000u + static_cast<std::uint64_t>(trial));
}

namespace {

SweepRecord solve_task(const Scenario& s, double value, int trial, const SweepOptions& opt) {
  SweepRecord r;
  r.scenario_id = s.id;
  r.seed = trial_seed(s.base_seed, trial);
  r.swept_name = to_string(s.axis);
  r.swept_value = value;
  r.scheme = s.scheme;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const SystemParams p = params_at(s, value);
    const ChannelSet ch = generate_channel_set(p, r.seed);
    EquilibriumResult res = run_baseline(s.scheme, ch, p, s.solver);
    r.source_power = res.leader.source_power;
    r.jammer_power = res.follower.jammer_power;
    r.leader_utility = res.leader_utility;
    r.jammer_utility = res.jammer_utility;
    r.sinr = res.sinr;
    r.outer_iterations = res.outer_iterations;
    r.sca_iterations = res.sca_iterations;
    r.flags = res.flags;
    if (!check_feasible(res.leader, res.follower, scheme_params(s.scheme, p), ch).feasible)
      r.flags.push_back("infeasible");
    if (opt.keep_results) r.result = std::move(res);
  } catch (const std::exception& e) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.source_power = r.jammer_power = r.leader_utility = r.jammer_utility = r.sinr = nan;
    r.failed = true;
    std::string msg = e.what();
    std::replace_if(msg.begin(), msg.end(), [](char c) { return c == ',' || c == '|' || c == '\n' || c == '"'; }, ' ');
    r.flags.push_back("error:" + msg);
  }
  if (opt.timing)
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const Scenario& s, const SweepOptions& opt) {
  s.validate();
  if (opt.workers < 1) throw std::invalid_argument("workers must be at least 1");
  const std::size_t total = s.grid.size() * static_cast<std::size_t>(s.trials);
  std::vector<SweepRecord> records(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::size_t g = k / static_cast<std::size_t>(s.trials);
      const int trial = static_cast<int>(k % static_cast<std::size_t>(s.trials));
      records[k] = solve_task(s, s.grid[g], trial, opt);
    }
  };
  const int n = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(opt.workers), total));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return records;
}

Statistic mean_ci95(const std::vector<double>& values) {
  Statistic st;
  const std::size_t n = values.size();
  if (n == 0) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  double sum = 0.0;
  for (double v : values) sum += v;
  st.mean = sum / static_cast<double>(n);
  if (n < 2) {
    st.half_width = std::numeric_limits<double>::infinity();
    return st;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - st.mean) * (v - st.mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  st.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * sd / std::sqrt(static_cast<double>(n));
  return st;
}

std::vector<GridSummary> summarize(const Scenario& s, const std::vector<SweepRecord>& records) {
  std::vector<GridSummary> out;
  for (double v : s.grid) {
    GridSummary g;
    g.swept_value = v;
    std::vector<double> ps, pj, ul, uj, sn;
    for (const auto& r : records) {
      if (r.swept_value != v) continue;
      if (r.failed) {
        ++g.failures;
        continue;
      }
      ps.push_back(r.source_power);
      pj.push_back(r.jammer_power);
      ul.push_back(r.leader_utility);
      uj.push_back(r.jammer_utility);
      sn.push_back(r.sinr);
    }
    g.count = static_cast<int>(ps.size());
    g.source_power = mean_ci95(ps);
    g.jammer_power = mean_ci95(pj);
    g.leader_utility = mean_ci95(ul);
    g.jammer_utility = mean_ci95(uj);
    g.sinr = mean_ci95(sn);
    out.push_back(g);
  }
  return out;
}

const char* const kCsvHeader =
    "scenario_id,seed,swept_name,swept_value,scheme,P_S_w,P_J_w,u_L,u_J,sinr,outer_iters,sca_iters,runtime_ms,flags";

namespace {

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += '|';
    out += f;
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const Scenario& s, const std::vector<SweepRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.scenario_id, r.seed, r.swept_name,
                      r.swept_value, to_string(r.scheme), r.source_power, r.jammer_power, r.leader_utility,
                      r.jammer_utility, r.sinr, r.outer_iterations, r.sca_iterations, r.runtime_ms,
                      join_flags(r.flags));
  }
  os << fmt::format("# scenario {} scheme {} axis {} trials {} base_seed {} params_hash {:016x}\n", s.id,
                    to_string(s.scheme), to_string(s.axis), s.trials, s.base_seed, params_hash(s.params));
  if (s.scheme == Scheme::PassiveRis)
    os << "# assumption passive-ris: amplitude_max 1, ris_noise 0, no surface power budget\n";
  if (s.axis == SweepAxis::JammerX)
    os << "# assumption jammer_x: jammer at (x, 400 - (x - 100) * 350 / 300, 0)\n";
  os << "# summary,swept_value,n,failures,P_S_mean,P_S_ci95,P_J_mean,P_J_ci95,u_L_mean,u_L_ci95,"
        "u_J_mean,u_J_ci95,sinr_mean,sinr_ci95\n";
  for (const auto& g : summarize(s, records)) {
    os << fmt::format("# summary,{},{},{},{},{},{},{},{},{},{},{},{},{}\n", g.swept_value, g.count, g.failures,
                      g.source_power.mean, g.source_power.half_width, g.jammer_power.mean,
                      g.jammer_power.half_width, g.leader_utility.mean, g.leader_utility.half_width,
                      g.jammer_utility.mean, g.jammer_utility.half_width, g.sinr.mean, g.sinr.half_width);
  }
}

void write_svg(std::ostream& os, const Scenario& s, const std::vector<GridSummary>& summary) {
  constexpr double width = 640.0, height = 400.0, left = 70.0, right = 20.0, top = 30.0, bottom = 50.0;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& g : summary) {
    xmin = std::min(xmin, g.swept_value);
    xmax = std::max(xmax, g.swept_value);
    for (double y : {g.leader_utility.mean, g.jammer_utility.mean}) {
      if (!std::isfinite(y)) continue;
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0;
  if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
  if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
  if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (width - left - right); };
  auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * (height - top - bottom); };

  os << fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
                    "font-size=\"12\">\n",
                    width, height);
  os << fmt::format("<text x=\"{}\" y=\"18\">{} ({}): mean utility vs {}</text>\n", left, s.id, to_string(s.scheme),
                    to_string(s.axis));
  os << fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left, top,
                    width - left - right, height - top - bottom);
  for (int i = 0; i <= 4; ++i) {
    const double y = ymin + (ymax - ymin) * i / 4.0;
    os << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>\n", left - 6, py(y) + 4, y);
  }
  for (const auto& g : summary)
    os << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.4g}</text>\n", px(g.swept_value),
                      height - bottom + 18, g.swept_value);
  os << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", (left + width - right) / 2,
                    height - 10, to_string(s.axis));
  const std::pair<const char*, const char*> series[] = {{"u_L", "#1f77b4"}, {"u_J", "#d62728"}};
  for (int k = 0; k < 2; ++k) {
    std::string pts;
    for (const auto& g : summary) {
      const double y = k == 0 ? g.leader_utility.mean : g.jammer_utility.mean;
      if (std::isfinite(y)) pts += fmt::format("{:.2f},{:.2f} ", px(g.swept_value), py(y));
    }
    os << fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", series[k].second,
                      pts);
    os << fmt::format("<text x=\"{}\" y=\"{}\" fill=\"{}\">{}</text>\n", width - right - 40, top + 16 + 16 * k,
                      series[k].second, series[k].first);
  }
  os << "</svg>\n";
}

}  // namespace arisgame
