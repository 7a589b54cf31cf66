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


#include "arisgame/channel.hpp"

#include <fmt/format.h>

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace arisgame {

namespace {

enum Link : std::uint64_t { kSourceDest = 1, kSourceRis, kRisDest, kJammerDest, kJammerRis };

void check_finite(const ComplexMatrix& m, const char* name) {
  if (!all_finite(m)) throw std::domain_error(fmt::format("channel {} has non-finite entries", name));
}

void check_shape(const ComplexMatrix& m, Eigen::Index rows, Eigen::Index cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols)
    throw DimensionMismatch(fmt::format("channel {} is {}x{}, expected {}x{}", name, m.rows(), m.cols(),
                                        rows, cols));
}

}  // namespace

void ChannelSet::validate() const {
  const Eigen::Index nd = source_dest.rows(), ns = source_dest.cols();
  const Eigen::Index n = source_ris.rows(), nj = jammer_dest.cols();
  check_shape(source_ris, n, ns, "source_ris");
  check_shape(ris_dest, nd, n, "ris_dest");
  check_shape(jammer_dest, nd, nj, "jammer_dest");
  check_shape(jammer_ris, n, nj, "jammer_ris");
  check_finite(source_dest, "source_dest");
  check_finite(source_ris, "source_ris");
  check_finite(ris_dest, "ris_dest");
  check_finite(jammer_dest, "jammer_dest");
  check_finite(jammer_ris, "jammer_ris");
}

void ChannelSet::validate(const SystemParams& p) const {
  check_shape(source_dest, p.dest_antennas, p.source_antennas, "source_dest");
  check_shape(source_ris, p.elements, p.source_antennas, "source_ris");
  check_shape(jammer_dest, p.dest_antennas, p.jammer_antennas, "jammer_dest");
  validate();
}

double path_loss_gain(double distance, double exponent, double ref_gain) {
  if (!(distance > 0.0)) throw NonPositiveDistance(fmt::format("distance {} is not positive", distance));
  return ref_gain * std::pow(distance, -exponent);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over a stream-offset state
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

ComplexMatrix standard_gaussian(int rows, int cols, std::uint64_t seed) {
  if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix w(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      w(i, j) = cdouble(re, im);
    }
  return w;
}

}  // namespace

ComplexMatrix draw_rayleigh(int rows, int cols, double gain, std::uint64_t seed) {
  if (!(gain >= 0.0)) throw std::domain_error("gain must be non-negative");
  return std::sqrt(gain) * standard_gaussian(rows, cols, seed);
}

ComplexMatrix draw_rician(int rows, int cols, double gain, double k_factor, const ComplexMatrix& los,
                          std::uint64_t seed) {
  if (!(gain >= 0.0)) throw std::domain_error("gain must be non-negative");
  if (!(k_factor >= 0.0)) throw std::domain_error("Rician factor must be non-negative");
  if (los.rows() != rows || los.cols() != cols) throw DimensionMismatch("LOS matrix shape mismatch");
  const double los_weight = std::sqrt(k_factor / (k_factor + 1.0));
  const double scatter_weight = std::sqrt(1.0 / (k_factor + 1.0));
  const ComplexMatrix w = standard_gaussian(rows, cols, seed);
  return std::sqrt(gain) * (los_weight * los + scatter_weight * w);
}

ComplexMatrix ula_los(int rx, int tx, const Point3& rx_pos, const Point3& tx_pos) {
  const double d = distance(rx_pos, tx_pos);
  if (!(d > 0.0)) throw NonPositiveDistance("coincident array positions");
  const double sin_tx = (rx_pos.x - tx_pos.x) / d;
  const double sin_rx = -sin_tx;
  ComplexMatrix los(rx, tx);
  for (int n = 0; n < rx; ++n)
    for (int m = 0; m < tx; ++m)
      los(n, m) = std::polar(1.0, std::numbers::pi * (m * sin_tx + n * sin_rx));
  return los;
}

ChannelSet generate_channel_set(const SystemParams& p, std::uint64_t seed) {
  p.validate();
  const Geometry& g = p.geometry;
  const FadingParams& f = p.fading;
  const double k = f.rician_k();
  auto ground = [&](const Point3& a, const Point3& b) {
    return path_loss_gain(distance(a, b), f.ground_exponent, f.ref_gain);
  };
  auto reflected = [&](const Point3& a, const Point3& b) {
    return path_loss_gain(distance(a, b), f.ris_exponent, f.ref_gain);
  };

  ChannelSet ch;
  ch.source_dest = draw_rayleigh(p.dest_antennas, p.source_antennas, ground(g.source, g.destination),
                                 mix_seed(seed, kSourceDest));
  ch.jammer_dest = draw_rayleigh(p.dest_antennas, p.jammer_antennas, ground(g.jammer, g.destination),
                                 mix_seed(seed, kJammerDest));
  ch.source_ris = draw_rician(p.elements, p.source_antennas, reflected(g.source, g.ris), k,
                              ula_los(p.elements, p.source_antennas, g.ris, g.source),
                              mix_seed(seed, kSourceRis));
  ch.ris_dest = draw_rician(p.dest_antennas, p.elements, reflected(g.ris, g.destination), k,
                            ula_los(p.dest_antennas, p.elements, g.destination, g.ris),
                            mix_seed(seed, kRisDest));
  ch.jammer_ris = draw_rician(p.elements, p.jammer_antennas, reflected(g.jammer, g.ris), k,
                              ula_los(p.elements, p.jammer_antennas, g.ris, g.jammer),
                              mix_seed(seed, kJammerRis));
  return ch;
}

CompositeChannels composite(const ChannelSet& ch, const ComplexVector& theta) {
  if (theta.size() != ch.source_ris.rows())
    throw DimensionMismatch(fmt::format("theta has length {}, expected {}", theta.size(),
                                        ch.source_ris.rows()));
  CompositeChannels out;
  const ComplexMatrix weighted = ch.ris_dest * theta.asDiagonal();
  out.source_reflected = weighted * ch.source_ris;
  out.jammer_reflected = weighted * ch.jammer_ris;
  out.source_total = out.source_reflected + ch.source_dest;
  out.jammer_total = out.jammer_reflected + ch.jammer_dest;
  return out;
}

namespace {

constexpr const char* kDumpMagic = "arisgame-channels 1";

void write_matrix(std::ostream& os, const char* name, const ComplexMatrix& m) {
  os << fmt::format("matrix {} {} {}\n", name, m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::string line;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) line += ' ';
      line += fmt::format("{:.17g},{:.17g}", m(i, j).real(), m(i, j).imag());
    }
    os << line << '\n';
  }
}

ComplexMatrix read_matrix(std::istream& is, const std::string& expected) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("channel dump truncated before " + expected);
  std::istringstream head(line);
  std::string tag, name;
  Eigen::Index rows = -1, cols = -1;
  head >> tag >> name >> rows >> cols;
  if (tag != "matrix" || name != expected || rows < 0 || cols < 0)
    throw std::runtime_error("channel dump: bad header line '" + line + "'");
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("channel dump truncated in " + expected);
    std::istringstream row(line);
    for (Eigen::Index j = 0; j < cols; ++j) {
      std::string cell;
      if (!(row >> cell)) throw std::runtime_error("channel dump: short row in " + expected);
      const auto comma = cell.find(',');
      if (comma == std::string::npos) throw std::runtime_error("channel dump: bad entry '" + cell + "'");
      m(i, j) = cdouble(std::stod(cell.substr(0, comma)), std::stod(cell.substr(comma + 1)));
    }
  }
  return m;
}

}  // namespace

void write_channel_dump(std::ostream& os, const ChannelSet& ch, std::uint64_t seed,
                        const SystemParams& p) {
  os << kDumpMagic << '\n';
  os << fmt::format("seed {}\n", seed);
  os << fmt::format("params_hash {:016x}\n", params_hash(p));
  os << fmt::format("dims source={} dest={} jammer={} elements={}\n", ch.source_dest.cols(),
                    ch.source_dest.rows(), ch.jammer_dest.cols(), ch.source_ris.rows());
  write_matrix(os, "source_dest", ch.source_dest);
  write_matrix(os, "source_ris", ch.source_ris);
  write_matrix(os, "ris_dest", ch.ris_dest);
  write_matrix(os, "jammer_dest", ch.jammer_dest);
  write_matrix(os, "jammer_ris", ch.jammer_ris);
}

ChannelSet read_channel_dump(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kDumpMagic) throw std::runtime_error("not a channel dump");
  for (int i = 0; i < 3; ++i)
    if (!std::getline(is, line)) throw std::runtime_error("channel dump header truncated");
  ChannelSet ch;
  ch.source_dest = read_matrix(is, "source_dest");
  ch.source_ris = read_matrix(is, "source_ris");
  ch.ris_dest = read_matrix(is, "ris_dest");
  ch.jammer_dest = read_matrix(is, "jammer_dest");
  ch.jammer_ris = read_matrix(is, "jammer_ris");
  ch.validate();
  return ch;
}

}  // namespace arisgame
