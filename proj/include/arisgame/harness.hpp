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


#ifndef ARISGAME_HARNESS_HPP
#define ARISGAME_HARNESS_HPP

#include "arisgame/leader.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arisgame {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, std::string key, const std::string& message);

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

enum class Scheme { ActiveRis, PassiveRis, NoRis, MaxPowerJammer };
enum class SweepAxis { None, SourceCost, JammerCost, Elements, JammerX };

const char* to_string(Scheme s);
const char* to_string(SweepAxis a);
Scheme parse_scheme(const std::string& name);    // throws std::invalid_argument
SweepAxis parse_axis(const std::string& name);   // throws std::invalid_argument

struct Scenario {
  std::string id = "default";
  SystemParams params;
  Scheme scheme = Scheme::ActiveRis;
  SweepAxis axis = SweepAxis::None;
  std::vector<double> grid{0.0};
  int trials = 100;
  std::uint64_t base_seed = 1;
  LeaderConfig solver;

  // Throws ValidationError.
  void validate() const;
};

// Grid used when a sweep axis is given without an explicit grid.
std::vector<double> default_grid(SweepAxis axis);

// Jammer position on the location sweep for a given x coordinate.
Point3 jammer_on_path(double x);

// Parses the sectioned key = value format. Omitted keys keep their defaults.
// Throws ParseError for syntax, unknown or duplicate keys and ValidationError
// for out-of-range values.
Scenario parse_config(const std::string& text);
Scenario load_config(const std::string& path);

// Parameters and solver settings for one grid point of a scenario.
SystemParams params_at(const Scenario& s, double swept_value);

// Scheme-specific parameter and solver adjustments.
SystemParams scheme_params(Scheme scheme, const SystemParams& p);
LeaderConfig scheme_config(Scheme scheme, const LeaderConfig& cfg);

// Solves one instance under the given scheme. `p` holds the unadjusted
// parameters; the scheme adjustments are applied here.
EquilibriumResult run_baseline(Scheme scheme, const ChannelSet& ch, const SystemParams& p,
                               const LeaderConfig& cfg);

// Seed of trial `trial`, shared by every grid point.
std::uint64_t trial_seed(std::uint64_t base_seed, int trial);

struct SweepRecord {
  std::string scenario_id;
  std::uint64_t seed = 0;
  std::string swept_name;
  double swept_value = 0.0;
  Scheme scheme = Scheme::ActiveRis;
  double source_power = 0.0;
  double jammer_power = 0.0;
  double leader_utility = 0.0;
  double jammer_utility = 0.0;
  double sinr = 0.0;
  int outer_iterations = 0;
  int sca_iterations = 0;
  double runtime_ms = 0.0;
  std::vector<std::string> flags;
  bool failed = false;
  // Kept for replay; not written to CSV.
  std::optional<EquilibriumResult> result;
};

struct SweepOptions {
  int workers = 1;
  bool timing = false;        // record wall-clock runtime instead of 0
  bool keep_results = false;  // retain full strategies in each record
};

// Records ordered by grid point, then trial.
std::vector<SweepRecord> run_sweep(const Scenario& s, const SweepOptions& opt = {});

struct Statistic {
  double mean = 0.0;
  double half_width = 0.0;  // 95% confidence half-width of the mean
};

Statistic mean_ci95(const std::vector<double>& values);

struct GridSummary {
  double swept_value = 0.0;
  int count = 0;
  int failures = 0;
  Statistic source_power, jammer_power, leader_utility, jammer_utility, sinr;
};

std::vector<GridSummary> summarize(const Scenario& s, const std::vector<SweepRecord>& records);

extern const char* const kCsvHeader;

void write_csv(std::ostream& os, const Scenario& s, const std::vector<SweepRecord>& records);
void write_svg(std::ostream& os, const Scenario& s, const std::vector<GridSummary>& summary);

// Oracle agreement suites behind the `validate` command.
struct SuiteCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// suite: follower, power, reflection or all. Throws std::invalid_argument.
std::vector<SuiteCheck> run_validation(const std::string& suite);

}  // namespace arisgame

#endif  // ARISGAME_HARNESS_HPP
