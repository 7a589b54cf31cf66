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

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>

using namespace arisgame;

namespace {

constexpr const char* kVersion = "arisgame 1.0.0";

std::string format_vector(const ComplexVector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out += fmt::format("{}{},{}", i ? " " : "", v(i).real(), v(i).imag());
  return out;
}

int run_equilibrium(const std::string& config, std::uint64_t seed, const std::string& dump) {
  const Scenario s = load_config(config);
  const SystemParams p = params_at(s, s.grid.front());
  const ChannelSet ch = generate_channel_set(p, seed);
  if (!dump.empty()) {
    std::ofstream out(dump);
    if (!out) throw std::runtime_error("cannot write '" + dump + "'");
    write_channel_dump(out, ch, seed, p);
  }
  const EquilibriumResult r = run_baseline(s.scheme, ch, p, s.solver);
  std::cout << fmt::format("scheme: {}\nseed: {}\nP_S_w: {}\nP_J_w: {}\nu_L: {}\nu_J: {}\nsinr: {}\n",
                           to_string(s.scheme), seed, r.leader.source_power, r.follower.jammer_power,
                           r.leader_utility, r.jammer_utility, r.sinr);
  std::cout << fmt::format("outer_iters: {}\nsca_iters: {}\nconverged: {}\n", r.outer_iterations,
                           r.sca_iterations, r.converged);
  std::string flags;
  for (const auto& f : r.flags) flags += (flags.empty() ? "" : "|") + f;
  std::cout << "flags: " << flags << '\n';
  std::cout << "source_beam: " << format_vector(r.leader.source_beam) << '\n';
  std::cout << "dest_beam: " << format_vector(r.leader.dest_beam) << '\n';
  std::cout << "jammer_beam: " << format_vector(r.follower.jammer_beam) << '\n';
  std::cout << "theta: " << format_vector(r.leader.theta) << '\n';
  return 0;
}

int run_sweep_cmd(const std::string& config, const std::string& out_path, int workers, const std::string& svg,
                  bool timing) {
  const Scenario s = load_config(config);
  SweepOptions opt;
  opt.workers = workers;
  opt.timing = timing;
  const auto records = run_sweep(s, opt);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  write_csv(out, s, records);
  if (!svg.empty()) {
    std::ofstream os(svg);
    if (!os) throw std::runtime_error("cannot write '" + svg + "'");
    write_svg(os, s, summarize(s, records));
  }
  int failed = 0;
  for (const auto& r : records) failed += r.failed ? 1 : 0;
  std::cerr << fmt::format("{} records written to {} ({} failed)\n", records.size(), out_path, failed);
  return 0;
}

int run_validate(const std::string& suite) {
  bool ok = true;
  for (const auto& c : run_validation(suite)) {
    std::cout << fmt::format("{} {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
    ok = ok && c.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anti-jamming Stackelberg game solver with an active reflecting surface"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config, dump, out, svg, suite = "all";
  std::uint64_t seed = 0;
  int workers = 1;
  bool timing = false;

  auto* eq = app.add_subcommand("equilibrium", "Solve one instance and print the equilibrium");
  eq->add_option("--config", config, "Scenario file")->required()->check(CLI::ExistingFile);
  eq->add_option("--seed", seed, "Channel seed")->required();
  eq->add_option("--dump-channels", dump, "Write the generated channels to this file");

  auto* sw = app.add_subcommand("sweep", "Run a Monte Carlo sweep and write CSV");
  sw->add_option("--config", config, "Scenario file")->required()->check(CLI::ExistingFile);
  sw->add_option("--out", out, "CSV output path")->required();
  sw->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  sw->add_option("--svg", svg, "Write a line chart of mean utilities");
  sw->add_flag("--timing", timing, "Record wall-clock runtime per solve (output is then not reproducible)");

  auto* va = app.add_subcommand("validate", "Run oracle agreement checks");
  va->add_option("--suite", suite, "follower, power, reflection or all")
      ->check(CLI::IsMember({"follower", "power", "reflection", "all"}));

  CLI11_PARSE(app, argc, argv);
  try {
    if (*eq) return run_equilibrium(config, seed, dump);
    if (*sw) return run_sweep_cmd(config, out, workers, svg, timing);
    if (*va) return run_validate(suite);
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid value: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
