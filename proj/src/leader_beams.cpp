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

#include <cmath>

namespace arisgame {

namespace {

ComplexVector unit_or_first(const ComplexVector& v) {
  const double n = v.norm();
  if (n > 0.0 && std::isfinite(n)) return v / n;
  ComplexVector e = ComplexVector::Zero(v.size());
  if (v.size() > 0) e(0) = 1.0;
  return e;
}

}  // namespace

BeamResult update_transmit_beam(const ChannelSet& ch, const ComplexVector& theta,
                                const ComplexVector& dest_beam, const ComplexVector& previous) {
  const CompositeChannels cc = composite(ch, theta);
  const ComplexVector v = cc.source_total.adjoint() * dest_beam;
  const double n = v.norm();
  if (!(n >= kDegenerateThreshold)) return {previous, true};
  return {v / n, false};
}

double default_receive_ridge(const ChannelSet& ch, const ComplexVector& theta, double ridge_scale) {
  const CompositeChannels cc = composite(ch, theta);
  const double trace = cc.jammer_total.squaredNorm();
  const double nd = static_cast<double>(cc.jammer_total.rows());
  return trace > 0.0 ? ridge_scale * trace / nd : ridge_scale;
}

ComplexVector update_receive_beam(const ChannelSet& ch, const ComplexVector& theta,
                                  const ComplexVector& source_beam, double ridge) {
  const CompositeChannels cc = composite(ch, theta);
  const ComplexMatrix cov = cc.jammer_total * cc.jammer_total.adjoint();
  const ComplexVector h = cc.source_total * source_beam;
  return unit_or_first(numerics::regularized_solve(cov, h, ridge));
}

ComplexVector update_receive_beam_fixed_jammer(const ChannelSet& ch, const ComplexVector& theta,
                                               const ComplexVector& source_beam, double jammer_power,
                                               const SystemParams& p) {
  const CompositeChannels cc = composite(ch, theta);
  const ComplexMatrix amplified = ch.ris_dest * theta.cwiseAbs().asDiagonal();
  ComplexMatrix cov = jammer_power * (cc.jammer_total * cc.jammer_total.adjoint()) +
                      p.ris_noise * (amplified * amplified.adjoint());
  cov.diagonal().array() += p.dest_noise;
  const ComplexVector h = cc.source_total * source_beam;
  return unit_or_first(numerics::regularized_solve(cov, h, 0.0));
}

}  // namespace arisgame
