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


#ifndef ARISGAME_FOLLOWER_HPP
#define ARISGAME_FOLLOWER_HPP

#include "arisgame/game.hpp"

namespace arisgame {

inline constexpr double kDegenerateThreshold = 1e-12;

struct DirectionResult {
  ComplexVector direction;
  bool degenerate = false;  // jamming channel vanishes; direction is e_1
};

// Unit vector maximizing |w_D^H H_jam w| (matched to the effective jamming
// channel seen through the receive beam).
DirectionResult best_direction(const ChannelSet& ch, const LeaderStrategy& leader);

struct PowerResult {
  double power = 0.0;
  double unprojected = 0.0;  // stationary point before clipping to [0, max]
  bool degenerate = false;
};

// Closed-form jamming power from scalar link quantities.
PowerResult jammer_power_response(double source_power, double signal, double jam_gain, double noise,
                                  const SystemParams& p);

PowerResult best_power(const ChannelSet& ch, const LeaderStrategy& leader, const SystemParams& p);

enum class JammerModel { BestResponse, MaxPower };

struct Response {
  FollowerStrategy strategy;
  double unprojected_power = 0.0;
  bool degenerate = false;
};

Response best_response(const ChannelSet& ch, const LeaderStrategy& leader, const SystemParams& p);

// MaxPower keeps the matched direction and always transmits at the budget.
Response respond(const ChannelSet& ch, const LeaderStrategy& leader, const SystemParams& p,
                 JammerModel model);

}  // namespace arisgame

#endif  // ARISGAME_FOLLOWER_HPP
