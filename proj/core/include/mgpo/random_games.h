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

#ifndef MGPO_RANDOM_GAMES_H_
#define MGPO_RANDOM_GAMES_H_

#include "mgpo/game.h"
#include "mgpo/sampler.h"

namespace mgpo {

struct RandomGameOptions {
  TransitionKind kind = TransitionKind::kSingleController;
  int horizon = 3;
  // Single-controller games use num_states1 only.
  int num_states1 = 3;
  int num_states2 = 1;
  int num_actions_a = 2;
  int num_actions_b = 2;
  double reward_noise = 0.0;
  // Probability that a transition entry is forced to zero before
  // normalization (a row always keeps at least one positive entry).
  double sparsity = 0.0;
};

// Rewards are uniform on [w, 1 - w] so noisy observations stay in [0, 1].
ZeroSumGame RandomGame(const RandomGameOptions& options, Rng& rng);

}  // namespace mgpo

#endif  // MGPO_RANDOM_GAMES_H_
