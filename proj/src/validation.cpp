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
#include "arisgame/oracle.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace arisgame {

namespace {

constexpr std::uint64_t kValidationSeed = 20260101;

SuiteCheck follower_power_check() {
  const SystemParams p;
  const long steps = 100001;
  const double step = p.jammer_power_max / static_cast<double>(steps - 1);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const ChannelSet ch = generate_channel_set(p, mix_seed(kValidationSeed, i));
    const LeaderStrategy l = oracle::random_leader(ch, p, mix_seed(kValidationSeed + 1, i));
    const double closed = best_power(ch, l, p).power;
    worst = std::max(worst, std::abs(closed - oracle::grid_best_power(ch, l, p, steps)));
  }
  return {"follower power vs grid", worst <= step, fmt::format("max gap {:.3g} W, step {:.3g} W", worst, step)};
}

SuiteCheck follower_direction_check() {
  const SystemParams p;
  double worst = -1.0;
  for (int i = 0; i < 20; ++i) {
    const ChannelSet ch = generate_channel_set(p, mix_seed(kValidationSeed, 100 + i));
    const LeaderStrategy l = oracle::random_leader(ch, p, mix_seed(kValidationSeed + 2, i));
    const auto s = oracle::sample_best_direction(ch, l, 2000, mix_seed(kValidationSeed + 3, i));
    worst = std::max(worst, (s.best_sampled - s.closed_form) / s.closed_form);
  }
  return {"follower direction vs sampling", worst <= 1e-9,
          fmt::format("max relative excess {:.3g}", worst)};
}

SuiteCheck sinr_check() {
  const SystemParams p;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const ChannelSet ch = generate_channel_set(p, mix_seed(kValidationSeed, 200 + i));
    const LeaderStrategy l = oracle::random_leader(ch, p, mix_seed(kValidationSeed + 4, i));
    const FollowerStrategy f = best_response(ch, l, p).strategy;
    const double closed = sinr(ch, l, f, p);
    const double mc = oracle::monte_carlo_sinr(ch, l, f, p, 200000, mix_seed(kValidationSeed + 5, i));
    worst = std::max(worst, std::abs(mc - closed) / closed);
  }
  return {"sinr vs signal simulation", worst <= 0.02, fmt::format("max relative error {:.3g}", worst)};
}

SuiteCheck power_check() {
  const SystemParams p;
  double worst = -1e300;
  for (int i = 0; i < 10; ++i) {
    const ChannelSet ch = generate_channel_set(p, mix_seed(kValidationSeed, 300 + i));
    const LeaderStrategy l = oracle::random_leader(ch, p, mix_seed(kValidationSeed + 6, i));
    const PowerSolution sol = optimize_power(ch, l.source_beam, l.dest_beam, l.theta, p);
    const auto grid = oracle::grid_power(ch, l.source_beam, l.dest_beam, l.theta, p, 400);
    worst = std::max(worst, (grid.objective - sol.objective) - grid.cell_tolerance);
  }
  return {"power subproblem vs grid", worst <= 0.0,
          fmt::format("worst shortfall beyond one cell {:.3g}", worst)};
}

SuiteCheck tangency_check() {
  SystemParams p;
  p.elements = 4;
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const ChannelSet ch = generate_channel_set(p, mix_seed(kValidationSeed, 400 + i));
    const LeaderStrategy l = oracle::random_leader(ch, p, mix_seed(kValidationSeed + 7, i));
    const ReflectionData data = build_reflection_data(ch, l.source_beam, l.dest_beam);
    const ReflectionSurrogate sur(data, tight_state(data, l.theta, p), l.source_power, p.jammer_power_max, p);
    for (const auto& t : sur.tangency()) {
      const double scale = std::max(1.0, std::abs(t.exact));
      worst = std::max(worst, std::abs(t.surrogate - t.exact) / scale);
      const double gscale = std::max(1.0, t.exact_grad.cwiseAbs().maxCoeff());
      worst = std::max(worst, (t.surrogate_grad - t.exact_grad).cwiseAbs().maxCoeff() / gscale);
    }
  }
  return {"surrogate tangency", worst <= 1e-10, fmt::format("max mismatch {:.3g}", worst)};
}

SuiteCheck single_element_check() {
  SystemParams p;
  p.elements = 1;
  const LeaderConfig cfg;
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const ChannelSet ch = generate_channel_set(p, mix_seed(kValidationSeed, 500 + i));
    const LeaderStrategy l = oracle::random_leader(ch, p, mix_seed(kValidationSeed + 8, i));
    const ReflectionData data = build_reflection_data(ch, l.source_beam, l.dest_beam);
    const auto res = optimize_reflection(ch, l.source_beam, l.dest_beam, l.source_power, p.jammer_power_max,
                                         ComplexVector::Zero(1), p, cfg);
    const auto grid = oracle::grid_reflection_single_element(data, l.source_power, p.jammer_power_max, p, 400);
    if (!grid.found) continue;
    worst = std::max(worst, (grid.objective - data.ratio(res.theta)) / grid.objective);
  }
  return {"single-element reflection vs grid", worst <= 1e-3, fmt::format("max relative shortfall {:.3g}", worst)};
}

}  // namespace

std::vector<SuiteCheck> run_validation(const std::string& suite) {
  if (suite != "follower" && suite != "power" && suite != "reflection" && suite != "all")
    throw std::invalid_argument("unknown suite '" + suite + "' (follower, power, reflection, all)");
  std::vector<SuiteCheck> out;
  auto run = [&](SuiteCheck (*fn)()) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({"check raised", false, e.what()});
    }
  };
  if (suite == "follower" || suite == "all") {
    run(follower_power_check);
    run(follower_direction_check);
    run(sinr_check);
  }
  if (suite == "power" || suite == "all") run(power_check);
  if (suite == "reflection" || suite == "all") {
    run(tangency_check);
    run(single_element_check);
  }
  return out;
}

}  // namespace arisgame
