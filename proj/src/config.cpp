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

#include <fmt/format.h>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace arisgame {

ParseError::ParseError(int line, std::string key, const std::string& message)
    : std::runtime_error(key.empty() ? fmt::format("line {}: {}", line, message)
                                     : fmt::format("line {}: {}: {}", line, key, message)),
      line_(line),
      key_(std::move(key)) {}

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::ActiveRis: return "active-ris";
    case Scheme::PassiveRis: return "passive-ris";
    case Scheme::NoRis: return "no-ris";
    case Scheme::MaxPowerJammer: return "max-power-jammer";
  }
  return "?";
}

const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::None: return "none";
    case SweepAxis::SourceCost: return "c_s";
    case SweepAxis::JammerCost: return "c_j";
    case SweepAxis::Elements: return "elements";
    case SweepAxis::JammerX: return "jammer_x";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  for (Scheme s : {Scheme::ActiveRis, Scheme::PassiveRis, Scheme::NoRis, Scheme::MaxPowerJammer})
    if (name == to_string(s)) return s;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

SweepAxis parse_axis(const std::string& name) {
  for (SweepAxis a : {SweepAxis::None, SweepAxis::SourceCost, SweepAxis::JammerCost, SweepAxis::Elements,
                      SweepAxis::JammerX})
    if (name == to_string(a)) return a;
  throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

std::vector<double> default_grid(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::None: return {0.0};
    case SweepAxis::SourceCost:
    case SweepAxis::JammerCost: return {2.0, 4.0, 6.0, 8.0, 10.0};
    case SweepAxis::Elements: return {10.0, 20.0, 30.0, 40.0, 50.0};
    case SweepAxis::JammerX: {
      std::vector<double> g;
      for (int i = 0; i < 10; ++i) g.push_back(100.0 + 300.0 * i / 9.0);
      return g;
    }
  }
  return {0.0};
}

Point3 jammer_on_path(double x) { return {x, 400.0 - (x - 100.0) / 300.0 * 350.0, 0.0}; }

SystemParams params_at(const Scenario& s, double v) {
  SystemParams p = s.params;
  switch (s.axis) {
    case SweepAxis::None: break;
    case SweepAxis::SourceCost: p.source_cost = v; break;
    case SweepAxis::JammerCost: p.jammer_cost = v; break;
    case SweepAxis::Elements: p.elements = static_cast<int>(std::lround(v)); break;
    case SweepAxis::JammerX: p.geometry.jammer = jammer_on_path(v); break;
  }
  return p;
}

void Scenario::validate() const {
  if (id.empty()) throw ValidationError("id must not be empty");
  for (char c : id)
    if (c == ',' || c == '"' || c == '\n' || c == '\r') throw ValidationError("id must not contain commas, quotes or newlines");
  if (trials < 1) throw ValidationError("trials must be at least 1");
  if (grid.empty()) throw ValidationError("grid must not be empty");
  if (axis == SweepAxis::None && grid.size() != 1) throw ValidationError("grid requires a sweep axis");
  for (double v : grid) {
    if (!std::isfinite(v)) throw ValidationError("grid values must be finite");
    if (axis == SweepAxis::Elements && (v < 0.0 || v != std::floor(v)))
      throw ValidationError("elements grid values must be non-negative integers");
    if ((axis == SweepAxis::SourceCost || axis == SweepAxis::JammerCost) && v < 0.0)
      throw ValidationError("cost grid values must be non-negative");
  }
  params.validate();
  for (double v : grid) {
    const SystemParams p = params_at(*this, v);
    p.validate();
    scheme_params(scheme, p).validate();
  }
  solver.validate();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Context {
  int line;
  std::string key;

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line, key, message); }
};

double parse_double(const std::string& text, const Context& ctx) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  if (t.empty()) ctx.fail("expected a number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) ctx.fail("invalid number '" + t + "'");
  return v;
}

long long parse_integer(const std::string& text, const Context& ctx) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) ctx.fail("invalid integer '" + t + "'");
  return v;
}

int parse_int(const std::string& text, const Context& ctx) {
  const long long v = parse_integer(text, ctx);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) ctx.fail("integer out of range");
  return static_cast<int>(v);
}

// Splits "NUMBER [UNIT]".
std::pair<double, std::string> number_with_unit(const std::string& text, const Context& ctx) {
  const std::string t = trim(text);
  std::size_t split = t.size();
  while (split > 0 && std::isalpha(static_cast<unsigned char>(t[split - 1]))) --split;
  std::string unit = t.substr(split);
  std::string number = trim(t.substr(0, split));
  if (number.empty() || unit == "inf") return {parse_double(t, ctx), ""};
  return {parse_double(number, ctx), unit};
}

double parse_power(const std::string& text, const Context& ctx) {
  const auto [v, unit] = number_with_unit(text, ctx);
  if (unit.empty() || unit == "W") return v;
  if (unit == "mW") return v * 1e-3;
  if (unit == "dBW") return std::pow(10.0, v / 10.0);
  if (unit == "dBm") return std::pow(10.0, (v - 30.0) / 10.0);
  ctx.fail("unknown power unit '" + unit + "' (W, mW, dBW, dBm)");
}

double parse_amplitude(const std::string& text, const Context& ctx) {
  const auto [v, unit] = number_with_unit(text, ctx);
  if (unit.empty()) return v;
  if (unit == "dB") return std::pow(10.0, v / 20.0);
  ctx.fail("unknown amplitude unit '" + unit + "' (dB)");
}

double parse_ratio(const std::string& text, const Context& ctx) {
  const auto [v, unit] = number_with_unit(text, ctx);
  if (unit.empty()) return v;
  if (unit == "dB") return std::pow(10.0, v / 10.0);
  ctx.fail("unknown ratio unit '" + unit + "' (dB)");
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

Point3 parse_point(const std::string& text, const Context& ctx) {
  const auto parts = split_commas(text);
  if (parts.size() != 3) ctx.fail("expected 'x, y, z'");
  return {parse_double(parts[0], ctx), parse_double(parts[1], ctx), parse_double(parts[2], ctx)};
}

using Setter = std::function<void(Scenario&, const std::string&, const Context&)>;

struct KeySpec {
  std::string section;
  Setter set;
};

const std::map<std::string, KeySpec>& key_table() {
  static const std::map<std::string, KeySpec> table = [] {
    std::map<std::string, KeySpec> t;
    auto power = [](double SystemParams::*field) {
      return [field](Scenario& s, const std::string& v, const Context& c) { s.params.*field = parse_power(v, c); };
    };
    auto plain = [](double SystemParams::*field) {
      return [field](Scenario& s, const std::string& v, const Context& c) { s.params.*field = parse_double(v, c); };
    };
    auto count = [](int SystemParams::*field) {
      return [field](Scenario& s, const std::string& v, const Context& c) { s.params.*field = parse_int(v, c); };
    };
    t["source_antennas"] = {"system", count(&SystemParams::source_antennas)};
    t["dest_antennas"] = {"system", count(&SystemParams::dest_antennas)};
    t["jammer_antennas"] = {"system", count(&SystemParams::jammer_antennas)};
    t["elements"] = {"system", count(&SystemParams::elements)};
    t["p_s_max"] = {"system", power(&SystemParams::source_power_max)};
    t["p_j_max"] = {"system", power(&SystemParams::jammer_power_max)};
    t["p_r_max"] = {"system", power(&SystemParams::ris_power_max)};
    t["ris_noise"] = {"system", power(&SystemParams::ris_noise)};
    t["dest_noise"] = {"system", power(&SystemParams::dest_noise)};
    t["amplitude_max"] = {"system", [](Scenario& s, const std::string& v, const Context& c) {
                            s.params.amplitude_max = parse_amplitude(v, c);
                          }};
    t["c_s"] = {"system", plain(&SystemParams::source_cost)};
    t["c_j"] = {"system", plain(&SystemParams::jammer_cost)};

    auto point = [](Point3 Geometry::*field) {
      return [field](Scenario& s, const std::string& v, const Context& c) {
        s.params.geometry.*field = parse_point(v, c);
      };
    };
    t["source"] = {"geometry", point(&Geometry::source)};
    t["destination"] = {"geometry", point(&Geometry::destination)};
    t["jammer"] = {"geometry", point(&Geometry::jammer)};
    t["ris"] = {"geometry", point(&Geometry::ris)};

    t["ground_exponent"] = {"fading", [](Scenario& s, const std::string& v, const Context& c) {
                              s.params.fading.ground_exponent = parse_double(v, c);
                            }};
    t["ris_exponent"] = {"fading", [](Scenario& s, const std::string& v, const Context& c) {
                           s.params.fading.ris_exponent = parse_double(v, c);
                         }};
    t["rician_k"] = {"fading", [](Scenario& s, const std::string& v, const Context& c) {
                       const double k = parse_ratio(v, c);
                       if (!(k > 0.0)) c.fail("rician_k must be positive");
                       s.params.fading.rician_k_db = 10.0 * std::log10(k);
                     }};
    t["ref_gain"] = {"fading", [](Scenario& s, const std::string& v, const Context& c) {
                       s.params.fading.ref_gain = parse_ratio(v, c);
                     }};

    t["id"] = {"scenario", [](Scenario& s, const std::string& v, const Context& c) {
                 if (v.empty()) c.fail("expected a name");
                 s.id = v;
               }};
    t["scheme"] = {"scenario", [](Scenario& s, const std::string& v, const Context& c) {
                     try {
                       s.scheme = parse_scheme(v);
                     } catch (const std::invalid_argument& e) {
                       c.fail(e.what());
                     }
                   }};
    t["sweep"] = {"scenario", [](Scenario& s, const std::string& v, const Context& c) {
                    try {
                      s.axis = parse_axis(v);
                    } catch (const std::invalid_argument& e) {
                      c.fail(e.what());
                    }
                  }};
    t["grid"] = {"scenario", [](Scenario& s, const std::string& v, const Context& c) {
                   s.grid.clear();
                   for (const auto& item : split_commas(v)) s.grid.push_back(parse_double(item, c));
                 }};
    t["trials"] = {"scenario", [](Scenario& s, const std::string& v, const Context& c) { s.trials = parse_int(v, c); }};
    t["base_seed"] = {"scenario", [](Scenario& s, const std::string& v, const Context& c) {
                        const std::string tv = trim(v);
                        char* end = nullptr;
                        errno = 0;
                        const unsigned long long u = std::strtoull(tv.c_str(), &end, 10);
                        if (tv.empty() || tv[0] == '-' || end != tv.c_str() + tv.size() || errno == ERANGE)
                          c.fail("expected an unsigned 64-bit integer");
                        s.base_seed = u;
                      }};

    t["outer_tol"] = {"solver", [](Scenario& s, const std::string& v, const Context& c) {
                        s.solver.outer_tol = parse_double(v, c);
                      }};
    t["inner_tol"] = {"solver", [](Scenario& s, const std::string& v, const Context& c) {
                        s.solver.inner_tol = parse_double(v, c);
                      }};
    t["max_outer"] = {"solver", [](Scenario& s, const std::string& v, const Context& c) {
                        s.solver.max_outer = parse_int(v, c);
                      }};
    t["max_inner"] = {"solver", [](Scenario& s, const std::string& v, const Context& c) {
                        s.solver.max_inner = parse_int(v, c);
                      }};
    t["tol_obj"] = {"solver", [](Scenario& s, const std::string& v, const Context& c) {
                      s.solver.solver.tol_obj = parse_double(v, c);
                    }};
    t["tol_feas"] = {"solver", [](Scenario& s, const std::string& v, const Context& c) {
                       s.solver.solver.tol_feas = parse_double(v, c);
                     }};
    t["max_iters"] = {"solver", [](Scenario& s, const std::string& v, const Context& c) {
                        s.solver.solver.max_iters = parse_int(v, c);
                      }};
    return t;
  }();
  return table;
}

}  // namespace

Scenario parse_config(const std::string& text) {
  const auto& table = key_table();
  const std::set<std::string> sections = {"system", "geometry", "fading", "scenario", "solver"};
  Scenario s;
  std::set<std::string> seen;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ParseError(line, "", "malformed section header");
      section = trim(body.substr(1, body.size() - 2));
      if (!sections.count(section)) throw ParseError(line, "", "unknown section [" + section + "]");
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(line, "", "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    const Context ctx{line, key};
    const auto it = table.find(key);
    if (it == table.end()) ctx.fail("unknown key");
    if (!section.empty() && it->second.section != section)
      ctx.fail("key belongs to section [" + it->second.section + "]");
    if (!seen.insert(key).second) ctx.fail("duplicate key");
    it->second.set(s, value, ctx);
  }
  if (!seen.count("grid")) s.grid = default_grid(s.axis);
  s.validate();
  return s;
}

Scenario load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace arisgame
