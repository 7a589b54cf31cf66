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


#include "arisgame/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace arisgame::oracle {

namespace {

// Link scalars computed straight from the matrices.
struct DirectScalars {
  double signal_sq = 0.0;  // |w_D^H H_src w_S|^2
  double jam_sq = 0.0;     // ||w_D^H H_jam||^2
  double noise = 0.0;
  ComplexMatrix src, jam;  // effective channels
};

DirectScalars direct_scalars(const ChannelSet& ch, const ComplexVector& ws, const ComplexVector& wd,
                             const ComplexVector& theta, const SystemParams& p) {
  DirectScalars s;
  ComplexMatrix rd_theta = ch.ris_dest;
  for (Eigen::Index n = 0; n < theta.size(); ++n) rd_theta.col(n) *= theta(n);
  s.src = rd_theta * ch.source_ris + ch.source_dest;
  s.jam = rd_theta * ch.jammer_ris + ch.jammer_dest;
  s.signal_sq = std::norm((wd.adjoint() * s.src * ws)(0));
  s.jam_sq = (wd.adjoint() * s.jam).squaredNorm();
  s.noise = p.ris_noise * (wd.adjoint() * rd_theta).squaredNorm() + p.dest_noise;
  return s;
}

ComplexVector random_unit(std::mt19937_64& rng, std::normal_distribution<double>& normal, Eigen::Index n) {
  ComplexVector w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    w(i) = cdouble(re, im);
  }
  return w / w.norm();
}

}  // namespace

LeaderStrategy random_leader(const ChannelSet& ch, const SystemParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LeaderStrategy l;
  l.source_power = p.source_power_max * unit(rng);
  l.source_beam = random_unit(rng, normal, p.source_antennas);
  l.dest_beam = random_unit(rng, normal, p.dest_antennas);
  const Eigen::Index n = ch.elements();
  l.theta.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double amp = p.amplitude_max * unit(rng);
    l.theta(i) = std::polar(amp, 2.0 * std::numbers::pi * unit(rng));
  }
  if (std::isfinite(p.ris_power_max) && n > 0) {
    const RealVector per = l.source_power * (ch.source_ris * l.source_beam).cwiseAbs2() +
                           p.jammer_power_max * ch.jammer_ris.rowwise().squaredNorm() +
                           RealVector::Constant(n, p.ris_noise);
    const double load = l.theta.cwiseAbs2().dot(per);
    if (load > 0.9 * p.ris_power_max) l.theta *= std::sqrt(0.9 * p.ris_power_max / load);
  }
  return l;
}

double grid_best_power(const ChannelSet& ch, const LeaderStrategy& leader, const SystemParams& p, long steps) {
  if (steps < 2) throw std::invalid_argument("grid_best_power needs at least two steps");
  const DirectScalars s = direct_scalars(ch, leader.source_beam, leader.dest_beam, leader.theta, p);
  const double signal = leader.source_power * s.signal_sq;
  double best_p = 0.0, best_u = -std::numeric_limits<double>::infinity();
  for (long k = 0; k < steps; ++k) {
    const double pj = p.jammer_power_max * static_cast<double>(k) / static_cast<double>(steps - 1);
    const double u = -signal / (pj * s.jam_sq + s.noise) - p.jammer_cost * pj;
    if (u > best_u) {
      best_u = u;
      best_p = pj;
    }
  }
  return best_p;
}

DirectionSample sample_best_direction(const ChannelSet& ch, const LeaderStrategy& leader, long count,
                                      std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_best_direction needs at least one sample");
  const DirectScalars s = direct_scalars(ch, leader.source_beam, leader.dest_beam, leader.theta,
                                         SystemParams{});
  const Eigen::RowVectorXcd row = leader.dest_beam.adjoint() * s.jam;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  DirectionSample out;
  for (long k = 0; k < count; ++k) {
    const ComplexVector w = random_unit(rng, normal, row.size());
    out.best_sampled = std::max(out.best_sampled, std::norm((row * w)(0)));
  }
  const DirectionResult dir = best_direction(ch, leader);
  out.closed_form = std::norm((row * dir.direction)(0));
  return out;
}

double monte_carlo_sinr(const ChannelSet& ch, const LeaderStrategy& leader, const FollowerStrategy& follower,
                        const SystemParams& p, long symbols, std::uint64_t seed) {
  if (symbols < 1) throw std::invalid_argument("monte_carlo_sinr needs at least one symbol");
  const DirectScalars s = direct_scalars(ch, leader.source_beam, leader.dest_beam, leader.theta, p);
  ComplexMatrix rd_theta = ch.ris_dest;
  for (Eigen::Index n = 0; n < leader.theta.size(); ++n) rd_theta.col(n) *= leader.theta(n);
  const ComplexVector hs = std::sqrt(leader.source_power) * (s.src * leader.source_beam);
  const ComplexVector hj = std::sqrt(follower.jammer_power) * (s.jam * follower.jammer_beam);
  const Eigen::Index nd = hs.size(), n = leader.theta.size();
  const double sr = std::sqrt(p.ris_noise / 2.0), sd = std::sqrt(p.dest_noise / 2.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> quadrant(0, 3);
  const cdouble qpsk[4] = {cdouble(1, 1) / std::sqrt(2.0), cdouble(-1, 1) / std::sqrt(2.0),
                           cdouble(-1, -1) / std::sqrt(2.0), cdouble(1, -1) / std::sqrt(2.0)};
  ComplexVector nr(n), y(nd);
  double signal_power = 0.0, other_power = 0.0;
  for (long k = 0; k < symbols; ++k) {
    const cdouble xs = qpsk[quadrant(rng)];
    const cdouble xj = qpsk[quadrant(rng)];
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      nr(i) = cdouble(sr * re, sr * im);
    }
    y = hj * xj + rd_theta * nr;
    for (Eigen::Index i = 0; i < nd; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      y(i) += cdouble(sd * re, sd * im);
    }
    signal_power += std::norm(leader.dest_beam.dot(hs * xs));
    other_power += std::norm(leader.dest_beam.dot(y));
  }
  if (signal_power == 0.0) return 0.0;
  return signal_power / other_power;
}

ScalarGridResult grid_reflection_single_element(const ReflectionData& data, double source_power,
                                                double jammer_power, const SystemParams& p, int resolution,
                                                double amplitude_cap) {
  if (data.elements() != 1) throw std::invalid_argument("single-element oracle needs one element");
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  const double cap = amplitude_cap > 0.0 ? amplitude_cap : p.amplitude_max;
  const cdouble a = std::conj(data.a(0)), b = data.b;
  const Eigen::Index nj = data.d.size();
  const double load_per = source_power * std::norm(data.source_at_ris(0)) +
                          jammer_power * data.jammer_row_energy(0) + p.ris_noise;
  const double w_sq = std::norm(data.weights(0));
  const bool budgeted = std::isfinite(p.ris_power_max);
  ScalarGridResult best;
  for (int i = 0; i < resolution; ++i) {
    const double r = cap * static_cast<double>(i) / static_cast<double>(resolution - 1);
    if (budgeted && r * r * load_per > p.ris_power_max) break;
    const double noise = p.ris_noise * w_sq * r * r + p.dest_noise;
    for (int j = 0; j < resolution; ++j) {
      const cdouble th = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) / resolution);
      const double num = std::abs(a * th + b);
      double row_sq = 0.0;
      for (Eigen::Index k = 0; k < nj; ++k) row_sq += std::norm(th * data.C(0, k) + std::conj(data.d(k)));
      const double row = std::sqrt(row_sq);
      if (p.jammer_cost > 0.0) {
        const double reaction = std::sqrt(source_power / p.jammer_cost) * num / row - noise / row_sq;
        if (reaction > jammer_power) continue;
      } else if (source_power * num > 0.0) {
        continue;
      }
      const double obj = num / row;
      if (obj > best.objective) {
        best.objective = obj;
        best.theta = th;
        best.found = true;
      }
      if (r == 0.0) break;  // every phase is the same point
    }
  }
  return best;
}

GridResult grid_refine_search(const ScalarField& objective, const std::vector<ScalarField>& constraints,
                              const RealVector& lower, const RealVector& upper, int levels, int points) {
  const Eigen::Index dim = lower.size();
  if (dim < 1 || dim > 5 || upper.size() != dim) throw std::invalid_argument("grid search supports 1 to 5 dimensions");
  if (levels < 1 || points < 2) throw std::invalid_argument("grid search needs levels >= 1 and points >= 2");
  RealVector lo = lower, hi = upper;
  GridResult best;
  bool have = false;
  std::vector<int> idx(static_cast<std::size_t>(dim));
  RealVector x(dim);
  for (int level = 0; level < levels; ++level) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      for (Eigen::Index d = 0; d < dim; ++d)
        x(d) = lo(d) + (hi(d) - lo(d)) * idx[static_cast<std::size_t>(d)] / static_cast<double>(points - 1);
      bool ok = true;
      for (const auto& g : constraints)
        if (!(g(x) <= 0.0)) {
          ok = false;
          break;
        }
      if (ok) {
        const double v = objective(x);
        if (!have || v > best.value) {
          best.value = v;
          best.x = x;
          have = true;
        }
      }
      Eigen::Index d = 0;
      while (d < dim && ++idx[static_cast<std::size_t>(d)] == points) idx[static_cast<std::size_t>(d++)] = 0;
      if (d == dim) break;
    }
    if (!have) throw EmptyFeasibleSet("no feasible grid point at the coarsest level");
    for (Eigen::Index d = 0; d < dim; ++d) {
      const double pitch = (hi(d) - lo(d)) / static_cast<double>(points - 1);
      lo(d) = std::max(lower(d), best.x(d) - 2.0 * pitch);
      hi(d) = std::min(upper(d), best.x(d) + 2.0 * pitch);
    }
  }
  return best;
}

PowerGridResult grid_power(const ChannelSet& ch, const ComplexVector& source_beam, const ComplexVector& dest_beam,
                           const ComplexVector& theta, const SystemParams& p, int resolution) {
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  const DirectScalars s = direct_scalars(ch, source_beam, dest_beam, theta, p);
  const Eigen::RowVectorXcd row = dest_beam.adjoint() * s.jam;
  const ComplexVector wj = row.adjoint() / row.norm();
  const double x = std::sqrt(s.signal_sq), nrm = std::sqrt(s.jam_sq);
  const double a = std::sqrt(p.jammer_cost) * x / nrm;
  const double k1 = x / (std::sqrt(p.jammer_cost) * nrm), k2 = s.noise / s.jam_sq;
  const double src_load = theta.cwiseProduct(ch.source_ris * source_beam).squaredNorm();
  const double jam_load = theta.cwiseProduct(ch.jammer_ris * wj).squaredNorm();
  const double fixed = p.ris_noise * theta.squaredNorm();
  const double gmax = std::sqrt(p.source_power_max);
  const bool budgeted = std::isfinite(p.ris_power_max);

  PowerGridResult out;
  out.vertex_gain = a;
  out.objective = -std::numeric_limits<double>::infinity();
  const double denom = static_cast<double>(resolution - 1);
  for (int i = 0; i < resolution; ++i) {
    const double g = gmax * i / denom;
    for (int j = 0; j < resolution; ++j) {
      const double pj = p.jammer_power_max * j / denom;
      if (pj < g * k1 - k2) continue;
      if (budgeted && g * g * src_load + pj * jam_load + fixed > p.ris_power_max) break;
      const double f = a * g - p.source_cost * g * g;
      if (f > out.objective) {
        out.objective = f;
        out.source_power = g * g;
        out.jammer_power = pj;
      }
      break;  // the objective does not depend on P_J
    }
  }
  if (p.source_cost > 0.0) {
    const double gv = a / (2.0 * p.source_cost);
    const double need = std::max(0.0, gv * k1 - k2);
    out.vertex_interior = gv < gmax && need <= p.jammer_power_max &&
                          (!budgeted || gv * gv * src_load + need * jam_load + fixed <= p.ris_power_max);
  }
  const double lip = std::max(std::abs(a), std::abs(a - 2.0 * p.source_cost * gmax));
  const double pitch_g = gmax / denom, pitch_p = p.jammer_power_max / denom;
  out.cell_tolerance = lip * (pitch_g + (k1 > 0.0 ? pitch_p / k1 : 0.0));
  return out;
}

StackelbergGridResult grid_no_ris_equilibrium(const ChannelSet& ch, const SystemParams& p, int resolution,
                                              int beam_candidates) {
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  if (beam_candidates < 2) throw std::invalid_argument("beam_candidates must be at least 2");
  const ComplexMatrix& hs = ch.source_dest;
  const ComplexMatrix& hj = ch.jammer_dest;
  const Eigen::Index nd = hs.rows();
  const ComplexMatrix signal_cov = hs * hs.adjoint();
  const ComplexMatrix jam_cov = hj * hj.adjoint();
  const double scale = signal_cov.trace().real() / std::max(jam_cov.trace().real(), 1e-300);

  // Receive beams on the upper-left frontier of {(w^H S w, w^H A w)}: top
  // eigenvectors of S - mu A, from mu = 0 to the smallest-jamming beam.
  std::vector<ComplexVector> beams;
  const int sweep = beam_candidates - 1;
  for (int k = 0; k < sweep; ++k) {
    const double mu = k == 0 ? 0.0 : scale * std::pow(10.0, -6.0 + 12.0 * (k - 1) / std::max(sweep - 2, 1));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(signal_cov - mu * jam_cov);
    beams.push_back(es.eigenvectors().col(nd - 1));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_min(jam_cov);
  beams.push_back(es_min.eigenvectors().col(0));

  const double denom = static_cast<double>(resolution - 1);
  const double noise = p.dest_noise;
  struct BeamBest {
    double value;
    int i, j;
  };
  std::vector<BeamBest> per_beam;
  std::vector<double> sig_of, jam_of;

  for (const auto& wd : beams) {
    const ComplexVector ws = (hs.adjoint() * wd).normalized();
    const double sig = std::norm(wd.dot(hs * ws));
    const double jam = (wd.adjoint() * hj).squaredNorm();
    sig_of.push_back(sig);
    jam_of.push_back(jam);
    BeamBest bb{-std::numeric_limits<double>::infinity(), 0, 0};
    for (int i = 0; i < resolution; ++i) {
      const double ps = p.source_power_max * i / denom;
      auto uj = [&](int j) {
        const double pj = p.jammer_power_max * j / denom;
        return -ps * sig / (pj * jam + noise) - p.jammer_cost * pj;
      };
      // Concave sequence: shrink the bracket, then scan what remains.
      int lo = 0, hi = resolution - 1;
      while (hi - lo > 3) {
        const int m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        const double f1 = uj(m1), f2 = uj(m2);
        if (f1 < f2) lo = m1 + 1;
        else if (f1 > f2) hi = m2 - 1;
        else { lo = m1; hi = m2; }
      }
      int arg = lo;
      for (int j = lo + 1; j <= hi; ++j)
        if (uj(j) > uj(arg)) arg = j;
      const double pj = p.jammer_power_max * arg / denom;
      const double v = ps * sig / (pj * jam + noise) - p.source_cost * ps;
      if (v > bb.value) bb = {v, i, arg};
    }
    per_beam.push_back(bb);
  }

  std::size_t k = 0;
  for (std::size_t m = 1; m < per_beam.size(); ++m)
    if (per_beam[m].value > per_beam[k].value) k = m;
  const BeamBest& b = per_beam[k];
  StackelbergGridResult best;
  best.leader_utility = b.value;
  best.source_power = p.source_power_max * b.i / denom;
  best.jammer_power = p.jammer_power_max * b.j / denom;

  auto leader_at = [&](int i, int j) {
    const double ps = p.source_power_max * i / denom, pj = p.jammer_power_max * j / denom;
    return ps * sig_of[k] / (pj * jam_of[k] + noise) - p.source_cost * ps;
  };
  double tol = 0.0;
  for (int d : {-1, 1}) {
    if (b.i + d >= 0 && b.i + d < resolution) tol = std::max(tol, std::abs(leader_at(b.i + d, b.j) - b.value));
    if (b.j + d >= 0 && b.j + d < resolution) tol = std::max(tol, std::abs(leader_at(b.i, b.j + d) - b.value));
    const long m = static_cast<long>(k) + d;
    if (m >= 0 && m < static_cast<long>(per_beam.size()))
      tol = std::max(tol, std::abs(per_beam[static_cast<std::size_t>(m)].value - b.value));
  }
  best.cell_tolerance = tol;
  return best;
}

}  // namespace arisgame::oracle
