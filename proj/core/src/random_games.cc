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

#include "mgpo/random_games.h"

#include <cmath>
#include <stdexcept>

namespace mgpo {
namespace {

TransitionKernel RandomKernel(int horizon, int num_states, int num_actions,
                              double sparsity, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, num_states - 1);
  TransitionKernel kernel(horizon, num_states, num_actions);
  for (int h = 0; h < horizon; ++h)
    for (int s = 0; s < num_states; ++s)
      for (int act = 0; act < num_actions; ++act) {
        auto row = kernel.MutableRow(h, s, act);
        double total = 0.0;
        for (auto& p : row) {
          // Exponential weights give a flat Dirichlet draw.
          p = unit(rng) < sparsity ? 0.0 : -std::log(1.0 - unit(rng));
          total += p;
        }
        if (total == 0.0) {
          row[pick(rng)] = 1.0;
          total = 1.0;
        }
        for (auto& p : row) p /= total;
      }
  return kernel;
}

}  // namespace

ZeroSumGame RandomGame(const RandomGameOptions& options, Rng& rng) {
  if (options.reward_noise < 0.0 || options.reward_noise > 0.5) {
    throw std::invalid_argument("RandomGame: noise must lie in [0, 0.5]");
  }
  GameDescription desc;
  desc.horizon = options.horizon;
  desc.num_actions_a = options.num_actions_a;
  desc.num_actions_b = options.num_actions_b;
  desc.reward_noise = options.reward_noise;

  int num_states = 0;
  if (options.kind == TransitionKind::kFactored) {
    auto p1 = RandomKernel(options.horizon, options.num_states1,
                           options.num_actions_a, options.sparsity, rng);
    auto p2 = RandomKernel(options.horizon, options.num_states2,
                           options.num_actions_b, options.sparsity, rng);
    num_states = options.num_states1 * options.num_states2;
    desc.transition = FactoredTransition{std::move(p1), std::move(p2)};
  } else {
    num_states = options.num_states1;
    desc.transition = SingleControllerTransition{
        RandomKernel(options.horizon, options.num_states1,
                     options.num_actions_a, options.sparsity, rng)};
  }

  std::uniform_real_distribution<double> reward(
      options.reward_noise, 1.0 - options.reward_noise);
  desc.reward.resize(static_cast<std::size_t>(options.horizon) * num_states *
                     options.num_actions_a * options.num_actions_b);
  for (auto& r : desc.reward) r = reward(rng);
  std::uniform_int_distribution<int> start(0, num_states - 1);
  desc.initial_state = start(rng);
  return ZeroSumGame::Build(std::move(desc));
}

}  // namespace mgpo
