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

#ifndef ARISGAME_CHANNEL_HPP
#define ARISGAME_CHANNEL_HPP

#include "arisgame/numerics.hpp"
#include "arisgame/params.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace arisgame {

class NonPositiveDistance : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Physical links. Rows index the receiving side, columns the transmitting side.
struct ChannelSet {
  ComplexMatrix source_dest;  // dest_antennas x source_antennas
  ComplexMatrix source_ris;   // elements x source_antennas
  ComplexMatrix ris_dest;     // dest_antennas x elements
  ComplexMatrix jammer_dest;  // dest_antennas x jammer_antennas
  ComplexMatrix jammer_ris;   // elements x jammer_antennas

  int elements() const { return static_cast<int>(source_ris.rows()); }

  // Throws DimensionMismatch or std::domain_error (non-finite entries).
  void validate() const;
  void validate(const SystemParams& p) const;
};

// Effective end-to-end channels for a given reflection vector.
struct CompositeChannels {
  ComplexMatrix source_reflected;  // ris_dest * diag(theta) * source_ris
  ComplexMatrix jammer_reflected;  // ris_dest * diag(theta) * jammer_ris
  ComplexMatrix source_total;      // source_reflected + source_dest
  ComplexMatrix jammer_total;      // jammer_reflected + jammer_dest
};

// ref_gain * distance^-exponent. Throws NonPositiveDistance.
double path_loss_gain(double distance, double exponent, double ref_gain);

// i.i.d. circularly-symmetric complex Gaussian entries with variance gain.
ComplexMatrix draw_rayleigh(int rows, int cols, double gain, std::uint64_t seed);

// sqrt(gain) * (sqrt(K/(K+1)) los + sqrt(1/(K+1)) W); W uses the same stream
// as draw_rayleigh, so K = 0 reproduces it exactly.
ComplexMatrix draw_rician(int rows, int cols, double gain, double k_factor, const ComplexMatrix& los,
                          std::uint64_t seed);

// Unit-modulus LOS matrix between half-wavelength linear arrays aligned with
// the x axis: exp(j pi (m sin_tx + n sin_rx)) for receive row n, transmit
// column m.
ComplexMatrix ula_los(int rx, int tx, const Point3& rx_pos, const Point3& tx_pos);

// Deterministic in seed. The direct links do not depend on the element count.
ChannelSet generate_channel_set(const SystemParams& p, std::uint64_t seed);

CompositeChannels composite(const ChannelSet& ch, const ComplexVector& theta);

// Plain-text replay format: header lines then "matrix NAME ROWS COLS"
// blocks with one row per line of comma-separated "re,im" pairs.
void write_channel_dump(std::ostream& os, const ChannelSet& ch, std::uint64_t seed,
                        const SystemParams& p);
ChannelSet read_channel_dump(std::istream& is);

// Stream splitter used to derive independent per-link seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace arisgame

#endif  // ARISGAME_CHANNEL_HPP
