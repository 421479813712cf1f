// Copyright 2026 The mgpo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mgpo/sampler.h"

#include <algorithm>

namespace mgpo {

int SampleIndex(std::span<const double> probs, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double cumulative = 0.0;
  int last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    cumulative += probs[i];
    last_positive = static_cast<int>(i);
    if (u < cumulative) return last_positive;
  }
  // Roundoff left u above the total mass.
  return last_positive;
}

Trajectory SampleEpisode(const ZeroSumGame& game, const Policy& mu,
                         const Policy& nu, Rng& rng) {
  const GameDims& dims = game.dims();
  if (!mu.Matches(dims, Player::kMax) || !nu.Matches(dims, Player::kMin)) {
    throw IndexMismatchError("SampleEpisode: policy shape does not match game");
  }

  const double noise = game.reward_noise();
  Trajectory traj;
  traj.reserve(dims.horizon);
  int state = game.initial_state();
  for (int h = 0; h < dims.horizon; ++h) {
    TrajectoryStep step;
    step.state = state;
    step.action_a =
        SampleIndex(mu.At(h, dims.PolicyState(Player::kMax, state)), rng);
    step.action_b =
        SampleIndex(nu.At(h, dims.PolicyState(Player::kMin, state)), rng);

    const double mean = game.reward(h, state, step.action_a, step.action_b);
    if (noise > 0.0) {
      std::uniform_real_distribution<double> dist(mean - noise, mean + noise);
      step.reward = std::clamp(dist(rng), 0.0, 1.0);
    } else {
      step.reward = mean;
    }

    if (dims.factored()) {
      const auto& fac = game.factored_transition();
      const int next1 =
          SampleIndex(fac.p1.Row(h, dims.Component1(state), step.action_a), rng);
      const int next2 =
          SampleIndex(fac.p2.Row(h, dims.Component2(state), step.action_b), rng);
      step.next_state = dims.JointState(next1, next2);
    } else {
      step.next_state = SampleIndex(
          game.single_controller_transition().p.Row(h, state, step.action_a),
          rng);
    }
    state = step.next_state;
    traj.push_back(step);
  }
  return traj;
}

}  // namespace mgpo
