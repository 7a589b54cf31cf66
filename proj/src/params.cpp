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


#include "arisgame/params.hpp"

#include <fmt/format.h>

#include <string_view>

namespace arisgame {

double distance(const Point3& a, const Point3& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

void Geometry::validate() const {
  const Point3* pts[] = {&source, &destination, &jammer, &ris};
  const char* names[] = {"source", "destination", "jammer", "ris"};
  for (int i = 0; i < 4; ++i) {
    if (!std::isfinite(pts[i]->x) || !std::isfinite(pts[i]->y) || !std::isfinite(pts[i]->z))
      throw ValidationError(fmt::format("geometry: {} position is not finite", names[i]));
    for (int j = 0; j < i; ++j)
      if (!(distance(*pts[i], *pts[j]) > 0.0))
        throw ValidationError(fmt::format("geometry: {} and {} coincide", names[j], names[i]));
  }
}

void FadingParams::validate() const {
  if (!(ground_exponent > 0.0) || !std::isfinite(ground_exponent))
    throw ValidationError("fading: ground_exponent must be positive");
  if (!(ris_exponent > 0.0) || !std::isfinite(ris_exponent))
    throw ValidationError("fading: ris_exponent must be positive");
  if (!std::isfinite(rician_k_db)) throw ValidationError("fading: rician_k_db must be finite");
  if (!(ref_gain > 0.0) || !std::isfinite(ref_gain))
    throw ValidationError("fading: ref_gain must be positive");
}

void SystemParams::validate() const {
  auto require = [](bool ok, std::string_view what) {
    if (!ok) throw ValidationError(std::string(what));
  };
  require(source_antennas >= 1, "source_antennas must be at least 1");
  require(dest_antennas >= 1, "dest_antennas must be at least 1");
  require(jammer_antennas >= 1, "jammer_antennas must be at least 1");
  require(elements >= 0, "elements must be non-negative");
  require(source_power_max > 0.0 && std::isfinite(source_power_max), "source_power_max must be positive");
  require(jammer_power_max >= 0.0 && std::isfinite(jammer_power_max),
          "jammer_power_max must be non-negative");
  require(ris_power_max > 0.0, "ris_power_max must be positive");
  require(amplitude_max > 0.0 && std::isfinite(amplitude_max), "amplitude_max must be positive");
  require(ris_noise >= 0.0 && std::isfinite(ris_noise), "ris_noise must be non-negative");
  require(dest_noise > 0.0 && std::isfinite(dest_noise), "dest_noise must be positive");
  require(source_cost >= 0.0 && std::isfinite(source_cost), "source_cost must be non-negative");
  require(jammer_cost >= 0.0 && std::isfinite(jammer_cost), "jammer_cost must be non-negative");
  geometry.validate();
  fading.validate();
}

std::string describe(const SystemParams& p) {
  auto pt = [](const Point3& q) { return fmt::format("({},{},{})", q.x, q.y, q.z); };
  return fmt::format(
      "source_antennas={} dest_antennas={} jammer_antennas={} elements={} source_power_max={} "
      "jammer_power_max={} ris_power_max={} amplitude_max={} ris_noise={} dest_noise={} "
      "source_cost={} jammer_cost={} source={} destination={} jammer={} ris={} ground_exponent={} "
      "ris_exponent={} rician_k_db={} ref_gain={}",
      p.source_antennas, p.dest_antennas, p.jammer_antennas, p.elements, p.source_power_max,
      p.jammer_power_max, p.ris_power_max, p.amplitude_max, p.ris_noise, p.dest_noise, p.source_cost,
      p.jammer_cost, pt(p.geometry.source), pt(p.geometry.destination), pt(p.geometry.jammer),
      pt(p.geometry.ris), p.fading.ground_exponent, p.fading.ris_exponent, p.fading.rician_k_db,
      p.fading.ref_gain);
}

unsigned long long params_hash(const SystemParams& p) {
  unsigned long long h = 14695981039346656037ULL;
  for (unsigned char c : describe(p)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace arisgame
