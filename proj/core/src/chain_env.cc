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

#include "mgpo/chain_env.h"

#include <vector>

namespace mgpo {

ZeroSumGame BuildChainEnv(double reward_noise) {
  constexpr int kLast = kChainStates - 1;
  TransitionKernel kernel(kChainHorizon, kChainStates, 2);
  for (int h = 0; h < kChainHorizon; ++h) {
    // s_1: action 0 stays w.p. 0.9, action 1 advances w.p. 0.9.
    kernel.MutableRow(h, 0, 0)[0] = 0.9;
    kernel.MutableRow(h, 0, 0)[1] = 0.1;
    kernel.MutableRow(h, 0, 1)[0] = 0.1;
    kernel.MutableRow(h, 0, 1)[1] = 0.9;
    for (int i = 1; i <= kLast; ++i) {
      struct Move {
        int action;
        double up, stay, down;
      };
      for (const Move& m : {Move{0, 0.05, 0.05, 0.9}, Move{1, 0.9, 0.05, 0.05}}) {
        auto row = kernel.MutableRow(h, i, m.action);
        row[i] += m.stay;
        row[i - 1] += m.down;
        row[i < kLast ? i + 1 : i] += m.up;
      }
    }
  }

  GameDescription desc;
  desc.horizon = kChainHorizon;
  desc.num_actions_a = 2;
  desc.num_actions_b = 2;
  desc.reward.assign(static_cast<std::size_t>(kChainHorizon) * kChainStates * 4,
                     0.1);
  for (int h = 0; h < kChainHorizon; ++h) {
    const std::size_t base =
        (static_cast<std::size_t>(h) * kChainStates + kLast) * 4;
    desc.reward[base + 0] = 0.9;  // a = 0, b = 0
    desc.reward[base + 1] = 0.2;  // a = 0, b = 1
    desc.reward[base + 2] = 0.6;  // a = 1, b = 0
    desc.reward[base + 3] = 0.4;  // a = 1, b = 1
  }
  desc.transition = SingleControllerTransition{std::move(kernel)};
  desc.initial_state = 0;
  desc.reward_noise = reward_noise;
  return ZeroSumGame::Build(std::move(desc));
}

Policy ChainOptimalMu() {
  std::vector<int> actions(kChainHorizon * kChainStates, 1);
  return Policy::Deterministic(kChainHorizon, kChainStates, 2, actions);
}

Policy ChainOptimalNu() {
  std::vector<int> actions(kChainHorizon * kChainStates, 1);
  return Policy::Deterministic(kChainHorizon, kChainStates, 2, actions);
}

}  // namespace mgpo
