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


#include "arisgame/leader.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace arisgame {

// ---------------------------------------------------------------- data

cdouble ReflectionData::numerator(const ComplexVector& theta) const { return a.dot(theta) + b; }

Eigen::RowVectorXcd ReflectionData::jam_row(const ComplexVector& theta) const {
  return (C.transpose() * theta).transpose() + d.adjoint();
}

double ReflectionData::noise(const ComplexVector& theta, const SystemParams& p) const {
  return p.ris_noise * weights.cwiseProduct(theta).squaredNorm() + p.dest_noise;
}

double ReflectionData::ratio(const ComplexVector& theta) const {
  return std::abs(numerator(theta)) / jam_row(theta).norm();
}

double ReflectionData::budget_load(const ComplexVector& theta, double source_power, double jammer_power,
                                   const SystemParams& p) const {
  const RealVector mag = theta.cwiseAbs2();
  const RealVector per_element = source_power * source_at_ris.cwiseAbs2() + jammer_power * jammer_row_energy;
  return mag.dot(per_element) + p.ris_noise * mag.sum();
}

double ReflectionData::reaction(const ComplexVector& theta, double source_power, const SystemParams& p) const {
  const double row = jam_row(theta).norm();
  if (!(row > 0.0)) return -std::numeric_limits<double>::infinity();
  const double num = std::abs(numerator(theta));
  if (p.jammer_cost == 0.0)
    return source_power * num > 0.0 ? std::numeric_limits<double>::infinity() : -noise(theta, p) / (row * row);
  return std::sqrt(source_power / p.jammer_cost) * num / row - noise(theta, p) / (row * row);
}

ReflectionData build_reflection_data(const ChannelSet& ch, const ComplexVector& source_beam,
                                     const ComplexVector& dest_beam) {
  ReflectionData data;
  const ComplexVector r = ch.ris_dest.transpose() * dest_beam.conjugate();  // (w_D^H H_rd)^T
  data.source_at_ris = ch.source_ris * source_beam;
  data.a = r.cwiseProduct(data.source_at_ris).conjugate();
  data.b = dest_beam.dot(ch.source_dest * source_beam);
  data.C = r.asDiagonal() * ch.jammer_ris;
  data.d = ch.jammer_dest.adjoint() * dest_beam;
  data.weights = r;
  data.jammer_row_energy = ch.jammer_ris.rowwise().squaredNorm();

  // Cross-check against the direct products at a fixed probe point.
  const Eigen::Index n = r.size();
  ComplexVector probe(n);
  for (Eigen::Index i = 0; i < n; ++i) probe(i) = std::polar(1.0, 0.7 * static_cast<double>(i) + 0.3);
  const CompositeChannels cc = composite(ch, probe);
  const cdouble direct_num = dest_beam.dot(cc.source_total * source_beam);
  const Eigen::RowVectorXcd direct_row = dest_beam.adjoint() * cc.jammer_total;
  const double direct_noise =
      (dest_beam.adjoint() * ch.ris_dest * probe.asDiagonal()).squaredNorm();
  const double num_scale = std::abs(data.b) + data.a.cwiseAbs().sum() + 1e-300;
  const double row_scale = data.d.norm() + data.C.cwiseAbs().sum() + 1e-300;
  const double noise_scale = r.squaredNorm() + 1e-300;
  if (std::abs(data.numerator(probe) - direct_num) > 1e-12 * num_scale ||
      (data.jam_row(probe) - direct_row).norm() > 1e-12 * row_scale ||
      std::abs(data.weights.cwiseProduct(probe).squaredNorm() - direct_noise) > 1e-12 * noise_scale)
    throw std::logic_error("reflection data disagrees with direct channel products");
  return data;
}

SurrogateState tight_state(const ReflectionData& data, const ComplexVector& theta0, const SystemParams& p) {
  SurrogateState s;
  s.theta0 = theta0;
  const double num = std::abs(data.numerator(theta0));
  const double row = data.jam_row(theta0).norm();
  s.phi0 = std::sqrt(num);
  s.psi0 = row;
  s.mu0 = std::sqrt(num);
  s.nu0 = row;
  s.xi0 = std::sqrt(data.noise(theta0, p));
  s.zeta0 = row * row;
  return s;
}

// ---------------------------------------------------------------- helpers

namespace {

using numerics::FunctionPtr;
using numerics::SmoothFunction;

// Realified affine map theta -> stacked [Re u_k, Im u_k] for u = Q^H theta + c,
// over z_theta = [Re theta; Im theta].
struct RealAffine {
  RealMatrix R;
  RealVector r;
  RealMatrix RtR;

  RealVector apply(ConstVecRef zt) const { return R * zt + r; }
};

RealAffine realify_affine(const ComplexMatrix& q, const ComplexVector& c, double scale) {
  const Eigen::Index n = q.rows(), k = q.cols();
  RealAffine m;
  m.R = RealMatrix::Zero(2 * k, 2 * n);
  m.r = RealVector::Zero(2 * k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const RealVector qr = q.col(j).real() / scale, qi = q.col(j).imag() / scale;
    m.R.block(2 * j, 0, 1, n) = qr.transpose();
    m.R.block(2 * j, n, 1, n) = qi.transpose();
    m.R.block(2 * j + 1, 0, 1, n) = -qi.transpose();
    m.R.block(2 * j + 1, n, 1, n) = qr.transpose();
    m.r(2 * j) = c(j).real() / scale;
    m.r(2 * j + 1) = c(j).imag() / scale;
  }
  m.RtR = m.R.transpose() * m.R;
  return m;
}

// Maps for the numerator and the jamming row in realified coordinates.
RealAffine numerator_map(const ReflectionData& data, double scale) {
  ComplexMatrix q = data.a;
  ComplexVector c(1);
  c(0) = data.b;
  return realify_affine(q, c, scale);
}

RealAffine row_map(const ReflectionData& data, double scale) {
  // theta^T C + d^H has entries (conj(C_k))^H theta + conj(d_k).
  return realify_affine(data.C.conjugate(), data.d.conjugate(), scale);
}

double source_scale(const ReflectionData& data, double alpha) {
  return std::abs(data.b) + alpha * data.a.cwiseAbs().sum();
}

double row_scale(const ReflectionData& data, double alpha) {
  return data.d.norm() + alpha * data.C.rowwise().norm().sum();
}

// Generic closure-free function with an analytic Hessian.
template <class Value, class Grad, class Hess>
class Lambda final : public SmoothFunction {
 public:
  Lambda(Value v, Grad g, Hess h) : v_(std::move(v)), g_(std::move(g)), h_(std::move(h)) {}
  double value(ConstVecRef z) const override { return v_(z); }
  void gradient(ConstVecRef z, RealVector& grad) const override {
    grad.setZero(z.size());
    g_(z, grad);
  }
  bool add_hessian(ConstVecRef z, double w, MatRef h) const override {
    h_(z, w, h);
    return true;
  }

 private:
  Value v_;
  Grad g_;
  Hess h_;
};

template <class Value, class Grad, class Hess>
FunctionPtr lambda(Value v, Grad g, Hess h) {
  return std::make_shared<Lambda<Value, Grad, Hess>>(std::move(v), std::move(g), std::move(h));
}

// Box and budget pieces shared by both surrogates.
struct FeasibleRegion {
  Eigen::Index n = 0;
  RealVector budget_weights;  // per element, scaled by the budget
  bool budgeted = false;
  double amp_sq = 0.0;
};

FeasibleRegion make_region(const ReflectionData& data, double source_power, double budget_jammer_power,
                           const SystemParams& p) {
  FeasibleRegion f;
  f.n = data.elements();
  f.amp_sq = p.amplitude_max * p.amplitude_max;
  f.budgeted = std::isfinite(p.ris_power_max);
  if (f.budgeted) {
    f.budget_weights = (source_power * data.source_at_ris.cwiseAbs2() +
                        budget_jammer_power * data.jammer_row_energy +
                        RealVector::Constant(f.n, p.ris_noise)) /
                       p.ris_power_max;
  }
  return f;
}

void add_region_constraints(const FeasibleRegion& f, numerics::ConvexProgram& prog) {
  const Eigen::Index n = f.n;
  if (f.budgeted) {
    const RealVector w = f.budget_weights;
    prog.constraints.push_back(lambda(
        [w, n](ConstVecRef z) {
          return w.dot(z.head(n).cwiseAbs2()) + w.dot(z.segment(n, n).cwiseAbs2()) - 1.0;
        },
        [w, n](ConstVecRef z, RealVector& g) {
          g.head(n) = 2.0 * w.cwiseProduct(z.head(n));
          g.segment(n, n) = 2.0 * w.cwiseProduct(z.segment(n, n));
        },
        [w, n](ConstVecRef, double s, MatRef h) {
          for (Eigen::Index i = 0; i < n; ++i) {
            h(i, i) += 2.0 * s * w(i);
            h(n + i, n + i) += 2.0 * s * w(i);
          }
        }));
  }
  const double inv = 1.0 / f.amp_sq;
  for (Eigen::Index i = 0; i < n; ++i) {
    prog.constraints.push_back(lambda(
        [i, n, inv](ConstVecRef z) { return (z(i) * z(i) + z(n + i) * z(n + i)) * inv - 1.0; },
        [i, n, inv](ConstVecRef z, RealVector& g) {
          g(i) = 2.0 * z(i) * inv;
          g(n + i) = 2.0 * z(n + i) * inv;
        },
        [i, n, inv](ConstVecRef, double s, MatRef h) {
          h(i, i) += 2.0 * s * inv;
          h(n + i, n + i) += 2.0 * s * inv;
        }));
  }
}

void set_theta_box(Eigen::Index n, double alpha, numerics::ConvexProgram& prog) {
  prog.lower.head(2 * n).setConstant(-alpha * (1.0 + 1e-3));
  prog.upper.head(2 * n).setConstant(alpha * (1.0 + 1e-3));
}

bool strictly_inside(const numerics::ConvexProgram& prog, const RealVector& z) {
  for (Eigen::Index j = 0; j < z.size(); ++j)
    if (prog.lower(j) < prog.upper(j) && !(z(j) > prog.lower(j) && z(j) < prog.upper(j))) return false;
  for (const auto& g : prog.constraints)
    if (!(g->value(z) < 0.0)) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- ratio surrogate

struct ReflectionSurrogate::Scales {
  Eigen::Index n = 0;
  double s_num = 1.0, s_den = 1.0;
  double kappa = 0.0;
  bool reaction = false;
  double jammer_power = 0.0, reaction_scale = 1.0;
  RealAffine num, row;
  RealVector noise_w;  // per element, scaled by s_den^2
  double noise_c = 0.0;
  RealVector z0;
  RealVector n0, u0;
  double phi0 = 0, psi0 = 0, mu0 = 0, nu0 = 0, xi0 = 0, zeta0 = 0;
  double lnum0 = 0, lrow0 = 0, lnoise0 = 0;
  RealVector gnum, grow, gnoise;  // theta gradients of the linearized pieces
};

ReflectionSurrogate::ReflectionSurrogate(const ReflectionData& data, const SurrogateState& state,
                                         double source_power, double jammer_power, const SystemParams& p)
    : n_(data.elements()) {
  if (state.theta0.size() != n_) throw DimensionMismatch("surrogate expansion point has wrong length");
  if (!(state.phi0 > 0.0) || !(state.psi0 > 0.0) || !(state.mu0 > 0.0) || !(state.nu0 > 0.0) ||
      !(state.xi0 > 0.0) || !(state.zeta0 > 0.0))
    throw std::domain_error("surrogate expansion point is degenerate");

  auto sc = std::make_shared<Scales>();
  const Eigen::Index n = n_;
  sc->n = n;
  sc->s_num = source_scale(data, p.amplitude_max);
  sc->s_den = row_scale(data, p.amplitude_max);
  if (!(sc->s_num > 0.0) || !(sc->s_den > 0.0)) throw std::domain_error("surrogate scales vanish");
  sc->num = numerator_map(data, sc->s_num);
  sc->row = row_map(data, sc->s_den);
  const double s2 = sc->s_den * sc->s_den;
  sc->noise_w = p.ris_noise * data.weights.cwiseAbs2() / s2;
  sc->noise_c = p.dest_noise / s2;
  sc->reaction = p.jammer_cost > 0.0;
  sc->kappa = sc->reaction ? std::sqrt(source_power / p.jammer_cost) * sc->s_num / sc->s_den : 0.0;
  sc->jammer_power = jammer_power;

  sc->phi0 = state.phi0 / std::sqrt(sc->s_num);
  sc->psi0 = state.psi0 / sc->s_den;
  sc->mu0 = state.mu0 / std::sqrt(sc->s_num);
  sc->nu0 = state.nu0 / sc->s_den;
  sc->xi0 = state.xi0 / sc->s_den;
  sc->zeta0 = state.zeta0 / s2;

  RealVector zt = numerics::realify(state.theta0);
  sc->n0 = sc->num.apply(zt);
  sc->u0 = sc->row.apply(zt);
  sc->lnum0 = sc->n0.squaredNorm();
  sc->lrow0 = sc->u0.squaredNorm();
  RealVector mag(2 * n);
  mag << sc->noise_w, sc->noise_w;
  sc->lnoise0 = mag.dot(zt.cwiseAbs2()) + sc->noise_c;
  sc->gnum = 2.0 * sc->num.R.transpose() * sc->n0;
  sc->grow = 2.0 * sc->row.R.transpose() * sc->u0;
  sc->gnoise = 2.0 * mag.cwiseProduct(zt);
  sc->reaction_scale = std::max({jammer_power, sc->kappa * sc->mu0 * sc->mu0 / sc->nu0,
                                 sc->xi0 * sc->xi0 / sc->zeta0, 1e-300});

  const Eigen::Index dim = 2 * n + kAuxCount;
  sc->z0.resize(dim);
  sc->z0.head(2 * n) = zt;
  sc->z0(2 * n + kPhi) = sc->phi0;
  sc->z0(2 * n + kPsi) = sc->psi0;
  sc->z0(2 * n + kMu) = sc->mu0;
  sc->z0(2 * n + kNu) = sc->nu0;
  sc->z0(2 * n + kXi) = sc->xi0;
  sc->z0(2 * n + kZeta) = sc->zeta0;
  scales_ = sc;

  const Eigen::Index iphi = 2 * n + kPhi, ipsi = 2 * n + kPsi, imu = 2 * n + kMu;
  const Eigen::Index inu = 2 * n + kNu, ixi = 2 * n + kXi, izeta = 2 * n + kZeta;
  const Scales* s = sc.get();
  auto keep = sc;  // each closure holds the shared scales

  program_.lower = RealVector::Zero(dim);
  program_.upper = RealVector::Zero(dim);
  set_theta_box(n, p.amplitude_max, program_);
  const double noise_max = p.ris_noise * p.amplitude_max * p.amplitude_max * data.weights.squaredNorm() / s2 +
                           sc->noise_c;
  program_.upper(iphi) = 1.5;
  program_.upper(ipsi) = 2.0;
  program_.lower(imu) = 0.5 * s->mu0;
  program_.upper(imu) = (1.0 + s->mu0 * s->mu0) / s->mu0 + 1.0;
  program_.upper(inu) = 2.0;
  program_.upper(ixi) = 1.5 * std::sqrt(noise_max);
  program_.upper(izeta) = 2.0;

  // Objective: linearized phi^2 / psi, normalized to 1 at the expansion point.
  RealVector c = RealVector::Zero(dim);
  c(iphi) = 2.0 / s->phi0;
  c(ipsi) = -1.0 / s->psi0;
  program_.objective = numerics::make_affine(c, 0.0);

  // phi^4 <= tangent of |num|^2, written as phi^2 - sqrt(tangent) <= 0
  program_.constraints.push_back(lambda(
      [keep, n, iphi](ConstVecRef z) {
        const double lin = keep->lnum0 + keep->gnum.dot(z.head(2 * n) - keep->z0.head(2 * n));
        if (!(lin > 0.0)) return std::numeric_limits<double>::infinity();
        return z(iphi) * z(iphi) - std::sqrt(lin);
      },
      [keep, n, iphi](ConstVecRef z, RealVector& g) {
        const double lin = keep->lnum0 + keep->gnum.dot(z.head(2 * n) - keep->z0.head(2 * n));
        const double root = std::sqrt(std::max(lin, 1e-300));
        g.head(2 * n) = -keep->gnum / (2.0 * root);
        g(iphi) = 2.0 * z(iphi);
      },
      [keep, n, iphi](ConstVecRef z, double w, MatRef h) {
        const double lin = std::max(keep->lnum0 + keep->gnum.dot(z.head(2 * n) - keep->z0.head(2 * n)), 1e-300);
        h.topLeftCorner(2 * n, 2 * n) += (w / (4.0 * lin * std::sqrt(lin))) * keep->gnum * keep->gnum.transpose();
        h(iphi, iphi) += 2.0 * w;
      }));

  // ||row|| <= psi as ||row||^2 / psi - psi <= 0
  program_.constraints.push_back(lambda(
      [keep, n, ipsi](ConstVecRef z) {
        return keep->row.apply(z.head(2 * n)).squaredNorm() / z(ipsi) - z(ipsi);
      },
      [keep, n, ipsi](ConstVecRef z, RealVector& g) {
        const RealVector u = keep->row.apply(z.head(2 * n));
        const double psi = z(ipsi);
        g.head(2 * n) = 2.0 * keep->row.R.transpose() * u / psi;
        g(ipsi) = -u.squaredNorm() / (psi * psi) - 1.0;
      },
      [keep, n, ipsi](ConstVecRef z, double w, MatRef h) {
        const RealVector u = keep->row.apply(z.head(2 * n));
        const double psi = z(ipsi);
        h.topLeftCorner(2 * n, 2 * n) += (2.0 * w / psi) * keep->row.RtR;
        const RealVector cross = (-2.0 * w / (psi * psi)) * (keep->row.R.transpose() * u);
        h.col(ipsi).head(2 * n) += cross;
        h.row(ipsi).head(2 * n) += cross.transpose();
        h(ipsi, ipsi) += 2.0 * w * u.squaredNorm() / (psi * psi * psi);
      }));

  // ||row||^2 <= zeta
  program_.constraints.push_back(lambda(
      [keep, n, izeta](ConstVecRef z) { return keep->row.apply(z.head(2 * n)).squaredNorm() - z(izeta); },
      [keep, n, izeta](ConstVecRef z, RealVector& g) {
        g.head(2 * n) = 2.0 * keep->row.R.transpose() * keep->row.apply(z.head(2 * n));
        g(izeta) = -1.0;
      },
      [keep, n](ConstVecRef, double w, MatRef h) { h.topLeftCorner(2 * n, 2 * n) += 2.0 * w * keep->row.RtR; }));

  // |num| <= 2 mu0 mu - mu0^2 as |num|^2 / t - t <= 0
  program_.constraints.push_back(lambda(
      [keep, n, imu](ConstVecRef z) {
        const double t = 2.0 * keep->mu0 * z(imu) - keep->mu0 * keep->mu0;
        return keep->num.apply(z.head(2 * n)).squaredNorm() / t - t;
      },
      [keep, n, imu](ConstVecRef z, RealVector& g) {
        const RealVector v = keep->num.apply(z.head(2 * n));
        const double t = 2.0 * keep->mu0 * z(imu) - keep->mu0 * keep->mu0;
        g.head(2 * n) = 2.0 * keep->num.R.transpose() * v / t;
        g(imu) = (-v.squaredNorm() / (t * t) - 1.0) * 2.0 * keep->mu0;
      },
      [keep, n, imu](ConstVecRef z, double w, MatRef h) {
        const RealVector v = keep->num.apply(z.head(2 * n));
        const double dt = 2.0 * keep->mu0;
        const double t = dt * z(imu) - keep->mu0 * keep->mu0;
        h.topLeftCorner(2 * n, 2 * n) += (2.0 * w / t) * keep->num.RtR;
        const RealVector cross = (-2.0 * w * dt / (t * t)) * (keep->num.R.transpose() * v);
        h.col(imu).head(2 * n) += cross;
        h.row(imu).head(2 * n) += cross.transpose();
        h(imu, imu) += 2.0 * w * v.squaredNorm() * dt * dt / (t * t * t);
      }));

  // nu^2 <= tangent of ||row||^2
  program_.constraints.push_back(lambda(
      [keep, n, inu](ConstVecRef z) {
        return z(inu) * z(inu) - (keep->lrow0 + keep->grow.dot(z.head(2 * n) - keep->z0.head(2 * n)));
      },
      [keep, n, inu](ConstVecRef z, RealVector& g) {
        g.head(2 * n) = -keep->grow;
        g(inu) = 2.0 * z(inu);
      },
      [inu](ConstVecRef, double w, MatRef h) { h(inu, inu) += 2.0 * w; }));

  // xi^2 <= tangent of the noise term
  program_.constraints.push_back(lambda(
      [keep, n, ixi](ConstVecRef z) {
        return z(ixi) * z(ixi) - (keep->lnoise0 + keep->gnoise.dot(z.head(2 * n) - keep->z0.head(2 * n)));
      },
      [keep, n, ixi](ConstVecRef z, RealVector& g) {
        g.head(2 * n) = -keep->gnoise;
        g(ixi) = 2.0 * z(ixi);
      },
      [ixi](ConstVecRef, double w, MatRef h) { h(ixi, ixi) += 2.0 * w; }));

  // Jammer reaction bound: kappa mu^2 / nu - tangent(xi^2 / zeta) <= P_J
  if (s->reaction) {
    program_.constraints.push_back(lambda(
        [keep, imu, inu, ixi, izeta](ConstVecRef z) {
          const Scales& k = *keep;
          const double lin = 2.0 * k.xi0 * z(ixi) / k.zeta0 - k.xi0 * k.xi0 * z(izeta) / (k.zeta0 * k.zeta0);
          return (k.kappa * z(imu) * z(imu) / z(inu) - lin - k.jammer_power) / k.reaction_scale;
        },
        [keep, imu, inu, ixi, izeta](ConstVecRef z, RealVector& g) {
          const Scales& k = *keep;
          const double inv = 1.0 / k.reaction_scale;
          g(imu) = 2.0 * k.kappa * z(imu) / z(inu) * inv;
          g(inu) = -k.kappa * z(imu) * z(imu) / (z(inu) * z(inu)) * inv;
          g(ixi) = -2.0 * k.xi0 / k.zeta0 * inv;
          g(izeta) = k.xi0 * k.xi0 / (k.zeta0 * k.zeta0) * inv;
        },
        [keep, imu, inu](ConstVecRef z, double w, MatRef h) {
          const Scales& k = *keep;
          const double s = w * k.kappa / k.reaction_scale;
          const double mu = z(imu), nu = z(inu);
          h(imu, imu) += 2.0 * s / nu;
          h(imu, inu) += -2.0 * s * mu / (nu * nu);
          h(inu, imu) += -2.0 * s * mu / (nu * nu);
          h(inu, inu) += 2.0 * s * mu * mu / (nu * nu * nu);
        }));
  }

  add_region_constraints(make_region(data, source_power, jammer_power, p), program_);
}

RealVector ReflectionSurrogate::pack(const SurrogateState& st) const {
  const Scales& s = *scales_;
  RealVector z(dimension());
  z.head(2 * n_) = numerics::realify(st.theta0);
  z(2 * n_ + kPhi) = st.phi0 / std::sqrt(s.s_num);
  z(2 * n_ + kPsi) = st.psi0 / s.s_den;
  z(2 * n_ + kMu) = st.mu0 / std::sqrt(s.s_num);
  z(2 * n_ + kNu) = st.nu0 / s.s_den;
  z(2 * n_ + kXi) = st.xi0 / s.s_den;
  z(2 * n_ + kZeta) = st.zeta0 / (s.s_den * s.s_den);
  return z;
}

SurrogateState ReflectionSurrogate::unpack(const RealVector& z) const {
  const Scales& s = *scales_;
  SurrogateState st;
  st.theta0 = numerics::complexify(z.head(2 * n_));
  st.phi0 = z(2 * n_ + kPhi) * std::sqrt(s.s_num);
  st.psi0 = z(2 * n_ + kPsi) * s.s_den;
  st.mu0 = z(2 * n_ + kMu) * std::sqrt(s.s_num);
  st.nu0 = z(2 * n_ + kNu) * s.s_den;
  st.xi0 = z(2 * n_ + kXi) * s.s_den;
  st.zeta0 = z(2 * n_ + kZeta) * s.s_den * s.s_den;
  return st;
}

double ReflectionSurrogate::objective(const RealVector& z) const {
  const Scales& s = *scales_;
  const double r = s.phi0 / s.psi0;
  return s.s_num / s.s_den * (2.0 * r * z(2 * n_ + kPhi) - r * r * z(2 * n_ + kPsi));
}

std::vector<ReflectionSurrogate::Tangency> ReflectionSurrogate::tangency() const {
  const Scales& s = *scales_;
  const Eigen::Index dim = dimension(), n = n_;
  const RealVector& z = s.z0;
  const Eigen::Index iphi = 2 * n + kPhi, ipsi = 2 * n + kPsi, imu = 2 * n + kMu;
  const Eigen::Index ixi = 2 * n + kXi, izeta = 2 * n + kZeta;
  std::vector<Tangency> out;
  auto blank = [dim] { return RealVector::Zero(dim).eval(); };

  {
    Tangency t{"objective", 0.0, 0.0, blank(), blank()};
    t.surrogate = (2.0 * s.phi0 * s.psi0 * z(iphi) - s.phi0 * s.phi0 * z(ipsi)) / (s.psi0 * s.psi0);
    t.exact = z(iphi) * z(iphi) / z(ipsi);
    t.surrogate_grad(iphi) = 2.0 * s.phi0 / s.psi0;
    t.surrogate_grad(ipsi) = -s.phi0 * s.phi0 / (s.psi0 * s.psi0);
    t.exact_grad(iphi) = 2.0 * z(iphi) / z(ipsi);
    t.exact_grad(ipsi) = -z(iphi) * z(iphi) / (z(ipsi) * z(ipsi));
    out.push_back(std::move(t));
  }
  {
    Tangency t{"numerator_sq", 0.0, 0.0, blank(), blank()};
    const RealVector v = s.num.apply(z.head(2 * n));
    t.surrogate = s.lnum0 + s.gnum.dot(z.head(2 * n) - s.z0.head(2 * n));
    t.exact = v.squaredNorm();
    t.surrogate_grad.head(2 * n) = s.gnum;
    t.exact_grad.head(2 * n) = 2.0 * s.num.R.transpose() * v;
    out.push_back(std::move(t));
  }
  {
    Tangency t{"mu_bound", 0.0, 0.0, blank(), blank()};
    t.surrogate = 2.0 * s.mu0 * z(imu) - s.mu0 * s.mu0;
    t.exact = z(imu) * z(imu);
    t.surrogate_grad(imu) = 2.0 * s.mu0;
    t.exact_grad(imu) = 2.0 * z(imu);
    out.push_back(std::move(t));
  }
  {
    Tangency t{"jam_row_sq", 0.0, 0.0, blank(), blank()};
    const RealVector u = s.row.apply(z.head(2 * n));
    t.surrogate = s.lrow0 + s.grow.dot(z.head(2 * n) - s.z0.head(2 * n));
    t.exact = u.squaredNorm();
    t.surrogate_grad.head(2 * n) = s.grow;
    t.exact_grad.head(2 * n) = 2.0 * s.row.R.transpose() * u;
    out.push_back(std::move(t));
  }
  {
    Tangency t{"noise", 0.0, 0.0, blank(), blank()};
    RealVector mag(2 * n);
    mag << s.noise_w, s.noise_w;
    t.surrogate = s.lnoise0 + s.gnoise.dot(z.head(2 * n) - s.z0.head(2 * n));
    t.exact = mag.dot(z.head(2 * n).cwiseAbs2()) + s.noise_c;
    t.surrogate_grad.head(2 * n) = s.gnoise;
    t.exact_grad.head(2 * n) = 2.0 * mag.cwiseProduct(z.head(2 * n));
    out.push_back(std::move(t));
  }
  {
    Tangency t{"noise_ratio", 0.0, 0.0, blank(), blank()};
    t.surrogate = (2.0 * s.xi0 * z(ixi) * s.zeta0 - s.xi0 * s.xi0 * z(izeta)) / (s.zeta0 * s.zeta0);
    t.exact = z(ixi) * z(ixi) / z(izeta);
    t.surrogate_grad(ixi) = 2.0 * s.xi0 / s.zeta0;
    t.surrogate_grad(izeta) = -s.xi0 * s.xi0 / (s.zeta0 * s.zeta0);
    t.exact_grad(ixi) = 2.0 * z(ixi) / z(izeta);
    t.exact_grad(izeta) = -z(ixi) * z(ixi) / (z(izeta) * z(izeta));
    out.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------- fixed-jammer surrogate

struct FixedJammerSurrogate::Scales {
  Eigen::Index n = 0;
  double s_num = 1.0, s_tot = 1.0;
  RealAffine num, row;  // row folded with sqrt(P_J / s_tot)
  RealVector noise_w;
  double noise_c = 0.0;
  RealVector z0;
  RealVector n0;
  double phi0 = 0.0, psi0 = 1.0, lnum0 = 0.0;
  RealVector gnum;
  bool jammed = false;
};

FixedJammerSurrogate::FixedJammerSurrogate(const ReflectionData& data, const ComplexVector& theta0,
                                           double source_power, double jammer_power, const SystemParams& p)
    : n_(data.elements()) {
  if (theta0.size() != n_) throw DimensionMismatch("surrogate expansion point has wrong length");
  auto sc = std::make_shared<Scales>();
  const Eigen::Index n = n_;
  sc->n = n;
  sc->s_num = source_scale(data, p.amplitude_max);
  const double row0 = data.jam_row(theta0).squaredNorm();
  sc->s_tot = jammer_power * row0 + data.noise(theta0, p);
  if (!(sc->s_num > 0.0) || !(sc->s_tot > 0.0)) throw std::domain_error("surrogate scales vanish");
  sc->num = numerator_map(data, sc->s_num);
  sc->jammed = jammer_power > 0.0;
  sc->row = row_map(data, sc->jammed ? std::sqrt(sc->s_tot / jammer_power) : 1.0);
  sc->noise_w = p.ris_noise * data.weights.cwiseAbs2() / sc->s_tot;
  sc->noise_c = p.dest_noise / sc->s_tot;

  const RealVector zt = numerics::realify(theta0);
  sc->n0 = sc->num.apply(zt);
  sc->lnum0 = sc->n0.squaredNorm();
  sc->phi0 = std::sqrt(sc->lnum0);
  if (!(sc->phi0 > 0.0)) throw std::domain_error("surrogate expansion point is degenerate");
  sc->psi0 = 1.0;
  sc->gnum = 2.0 * sc->num.R.transpose() * sc->n0;
  const Eigen::Index dim = 2 * n + 2, iphi = 2 * n, ipsi = 2 * n + 1;
  sc->z0.resize(dim);
  sc->z0.head(2 * n) = zt;
  sc->z0(iphi) = sc->phi0;
  sc->z0(ipsi) = sc->psi0;
  scales_ = sc;
  auto keep = sc;

  program_.lower = RealVector::Zero(dim);
  program_.upper = RealVector::Zero(dim);
  set_theta_box(n, p.amplitude_max, program_);
  const double row_max = row_scale(data, p.amplitude_max);
  const double tot_max = (jammer_power * row_max * row_max +
                          p.ris_noise * p.amplitude_max * p.amplitude_max * data.weights.squaredNorm() +
                          p.dest_noise) /
                         sc->s_tot;
  program_.upper(iphi) = 1.5;
  program_.upper(ipsi) = 1.5 * tot_max + 1.0;

  RealVector c = RealVector::Zero(dim);
  c(iphi) = 2.0 / sc->phi0;
  c(ipsi) = -1.0 / sc->psi0;
  program_.objective = numerics::make_affine(c, 0.0);

  // phi^2 <= tangent of |num|^2
  program_.constraints.push_back(lambda(
      [keep, n, iphi](ConstVecRef z) {
        return z(iphi) * z(iphi) - (keep->lnum0 + keep->gnum.dot(z.head(2 * n) - keep->z0.head(2 * n)));
      },
      [keep, n, iphi](ConstVecRef z, RealVector& g) {
        g.head(2 * n) = -keep->gnum;
        g(iphi) = 2.0 * z(iphi);
      },
      [iphi](ConstVecRef, double w, MatRef h) { h(iphi, iphi) += 2.0 * w; }));

  // P_J ||row||^2 + noise <= psi
  program_.constraints.push_back(lambda(
      [keep, n, ipsi](ConstVecRef z) {
        const auto zt = z.head(2 * n);
        double v = keep->noise_w.dot(zt.head(n).cwiseAbs2()) + keep->noise_w.dot(zt.tail(n).cwiseAbs2()) +
                   keep->noise_c - z(ipsi);
        if (keep->jammed) v += keep->row.apply(zt).squaredNorm();
        return v;
      },
      [keep, n, ipsi](ConstVecRef z, RealVector& g) {
        const auto zt = z.head(2 * n);
        g.head(n) = 2.0 * keep->noise_w.cwiseProduct(zt.head(n));
        g.segment(n, n) = 2.0 * keep->noise_w.cwiseProduct(zt.tail(n));
        if (keep->jammed) g.head(2 * n) += 2.0 * keep->row.R.transpose() * keep->row.apply(zt);
        g(ipsi) = -1.0;
      },
      [keep, n](ConstVecRef, double w, MatRef h) {
        if (keep->jammed) h.topLeftCorner(2 * n, 2 * n) += 2.0 * w * keep->row.RtR;
        for (Eigen::Index i = 0; i < n; ++i) {
          h(i, i) += 2.0 * w * keep->noise_w(i);
          h(n + i, n + i) += 2.0 * w * keep->noise_w(i);
        }
      }));

  add_region_constraints(make_region(data, source_power, p.jammer_power_max, p), program_);
}

RealVector FixedJammerSurrogate::start() const { return scales_->z0; }

ComplexVector FixedJammerSurrogate::theta(const RealVector& z) const {
  return numerics::complexify(z.head(2 * n_));
}

double FixedJammerSurrogate::objective(const RealVector& z) const {
  const Scales& s = *scales_;
  const double phi = z(2 * n_), psi = z(2 * n_ + 1);
  return s.s_num * s.s_num / s.s_tot * (2.0 * s.phi0 * s.psi0 * phi - s.phi0 * s.phi0 * psi) / (s.psi0 * s.psi0);
}

// ---------------------------------------------------------------- solves

namespace {

// Nudges a tight start strictly inside when that is cheap; otherwise the
// solver's phase I takes over.
RealVector interior_start(const numerics::ConvexProgram& prog, const RealVector& tight, Eigen::Index n,
                          const std::vector<std::pair<Eigen::Index, double>>& nudges) {
  for (double eps : {1e-6, 1e-4}) {
    for (double shrink : {1.0, 1.0 - 1e-9, 1.0 - 1e-6}) {
      RealVector z = tight;
      z.head(2 * n) *= shrink;
      for (const auto& [idx, dir] : nudges) z(idx) *= 1.0 + dir * eps;
      if (strictly_inside(prog, z)) return z;
    }
  }
  return tight;
}

}  // namespace

InnerStep sca_inner_solve(const ReflectionData& data, const SurrogateState& state, double source_power,
                          double jammer_power, const SystemParams& p, const numerics::SolverConfig& cfg) {
  const ReflectionSurrogate sur(data, state, source_power, jammer_power, p);
  const Eigen::Index n = data.elements();
  const RealVector tight = sur.pack(state);
  using A = ReflectionSurrogate;
  const RealVector start =
      interior_start(sur.program(), tight, n,
                     {{sur.aux_index(A::kPhi), -1.0}, {sur.aux_index(A::kPsi), 1.0},
                      {sur.aux_index(A::kMu), 1.0}, {sur.aux_index(A::kNu), -1.0},
                      {sur.aux_index(A::kXi), -1.0}, {sur.aux_index(A::kZeta), 1.0}});
  InnerStep out;
  out.detail = numerics::maximize_concave(sur.program(), start, cfg);
  out.theta = numerics::complexify(out.detail.x.head(2 * n));
  out.state = tight_state(data, out.theta, p);
  out.surrogate_value = sur.objective(out.detail.x);
  out.start_value = sur.objective(tight);
  return out;
}

ReflectionResult optimize_reflection(const ChannelSet& ch, const ComplexVector& source_beam,
                                     const ComplexVector& dest_beam, double source_power,
                                     double jammer_power, const ComplexVector& theta_init,
                                     const SystemParams& p, const LeaderConfig& cfg, ReflectionObjective kind) {
  const ReflectionData data = build_reflection_data(ch, source_beam, dest_beam);
  const Eigen::Index n = data.elements();
  if (theta_init.size() != n) throw DimensionMismatch("theta_init has wrong length");
  const bool ratio = kind == ReflectionObjective::Ratio;
  const double budget_power = ratio ? jammer_power : p.jammer_power_max;
  const double tol = cfg.solver.tol_feas;

  auto feasible = [&](const ComplexVector& th) {
    if (n > 0 && th.cwiseAbs2().maxCoeff() > p.amplitude_max * p.amplitude_max * (1.0 + tol)) return false;
    if (std::isfinite(p.ris_power_max) &&
        data.budget_load(th, source_power, budget_power, p) > p.ris_power_max * (1.0 + tol))
      return false;
    if (ratio && p.jammer_cost > 0.0 &&
        data.reaction(th, source_power, p) > jammer_power + 10.0 * tol * std::max(1.0, jammer_power))
      return false;
    return true;
  };
  auto value = [&](const ComplexVector& th) {
    if (ratio) return data.ratio(th);
    return std::norm(data.numerator(th)) / (jammer_power * data.jam_row(th).squaredNorm() + data.noise(th, p));
  };

  ReflectionResult out;
  out.theta = theta_init;
  ComplexVector theta = theta_init;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(theta(i)) > p.amplitude_max) theta(i) *= p.amplitude_max / std::abs(theta(i));
  if (!feasible(theta)) {
    if (!feasible(ComplexVector::Zero(n))) {
      out.skipped = true;
      return out;
    }
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid * theta) ? lo : hi) = mid;
    }
    theta *= lo;
    out.restored = true;
  }

  double current = value(theta);
  out.theta = theta;
  out.objective_trace.push_back(current);
  if (n == 0) {
    out.converged = true;
    return out;
  }

  for (int it = 0; it < cfg.max_inner; ++it) {
    ComplexVector next;
    double surrogate = 0.0;
    numerics::SolveResult detail;
    try {
      if (ratio) {
        const SurrogateState st = tight_state(data, theta, p);
        const InnerStep step = sca_inner_solve(data, st, source_power, jammer_power, p, cfg.solver);
        next = step.theta;
        surrogate = step.surrogate_value;
        detail = step.detail;
      } else {
        const FixedJammerSurrogate sur(data, theta, source_power, jammer_power, p);
        const RealVector tight = sur.start();
        const RealVector start = interior_start(sur.program(), tight, n, {{2 * n, -1.0}, {2 * n + 1, 1.0}});
        detail = numerics::maximize_concave(sur.program(), start, cfg.solver);
        next = sur.theta(detail.x);
        surrogate = sur.objective(detail.x);
      }
    } catch (const std::domain_error&) {
      break;
    } catch (const InfeasibleStart&) {
      break;
    }
    if (!feasible(next)) break;
    const double candidate = value(next);
    if (!(candidate >= current - 1e-12 * std::abs(current))) break;
    ++out.iterations;
    out.kkt_residual = detail.kkt_residual;
    out.surrogate_trace.push_back(surrogate);
    out.objective_trace.push_back(candidate);
    const double change = candidate - current;
    theta = next;
    current = candidate;
    if (change <= cfg.inner_tol * std::max(std::abs(current), 1e-300)) {
      out.converged = true;
      break;
    }
  }
  out.theta = theta;
  return out;
}

}  // namespace arisgame
