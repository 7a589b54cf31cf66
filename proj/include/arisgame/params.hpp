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

#ifndef ARISGAME_PARAMS_HPP
#define ARISGAME_PARAMS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace arisgame {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Point3& a, const Point3& b);

// Node positions in meters. The surface height is the z coordinate of `ris`.
struct Geometry {
  Point3 source{0.0, 100.0, 0.0};
  Point3 destination{400.0, 0.0, 0.0};
  Point3 jammer{100.0, 400.0, 0.0};
  Point3 ris{200.0, 0.0, 200.0};

  void validate() const;
};

struct FadingParams {
  double ground_exponent = 3.5;
  double ris_exponent = 2.3;
  double rician_k_db = 10.0;
  double ref_gain = 1e-3;  // linear power gain at 1 m

  double rician_k() const { return std::pow(10.0, rician_k_db / 10.0); }
  void validate() const;
};

// Powers in watts, noise powers in watts, costs per watt.
struct SystemParams {
  int source_antennas = 4;
  int dest_antennas = 2;
  int jammer_antennas = 4;
  int elements = 50;

  double source_power_max = 5.0;
  double jammer_power_max = 10.0;
  double ris_power_max = 0.1;  // 20 dBm; +inf removes the budget
  double amplitude_max = 3.1622776601683795;  // 10 dB
  double ris_noise = 1e-14;   // -140 dBW
  double dest_noise = 1e-14;  // -140 dBW
  double source_cost = 5.0;
  double jammer_cost = 6.0;

  Geometry geometry;
  FadingParams fading;

  // Throws ValidationError naming the offending field.
  void validate() const;
};

// Canonical textual form, used for hashing and metadata.
std::string describe(const SystemParams& p);

// 64-bit FNV-1a over describe(p).
unsigned long long params_hash(const SystemParams& p);

}  // namespace arisgame

#endif  // ARISGAME_PARAMS_HPP
