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

#ifndef MGPO_SAMPLER_H_
#define MGPO_SAMPLER_H_

#include <random>
#include <span>

#include "mgpo/game.h"

namespace mgpo {

using Rng = std::mt19937_64;

// Draws an index from a probability vector by inverse CDF.
int SampleIndex(std::span<const double> probs, Rng& rng);

// Plays one episode from the game's initial state. Actions are drawn from
// mu_h and nu_h at the state each player conditions on; the observed reward
// is Unif[r - w, r + w] (exactly r when w == 0). Only `rng` is mutated.
Trajectory SampleEpisode(const ZeroSumGame& game, const Policy& mu,
                         const Policy& nu, Rng& rng);

}  // namespace mgpo

#endif  // MGPO_SAMPLER_H_
