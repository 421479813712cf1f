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

#ifndef MGPO_CHAIN_ENV_H_
#define MGPO_CHAIN_ENV_H_

#include "mgpo/game.h"

namespace mgpo {

// V_1(s_1) of the chain game under ChainOptimalMu() and ChainOptimalNu().
inline constexpr double kChainReferenceValue = 0.8594323;

inline constexpr int kChainStates = 7;
inline constexpr int kChainHorizon = 7;

// Seven states in a line, H = 7, two actions per player, single-controller
// transitions, start at s_1 (index 0).
//
// Player 1's action 1 moves right with probability 0.9 and action 0 moves
// left with probability 0.9 (from s_1, "left" means staying). Interior
// states keep 0.05 for each of the two other moves. At the right end there is
// no s_8: the mass of a move past the end is added to staying.
//
// Every state but s_7 pays 0.1. At s_7 the payoff matrix is
// ((0.9, 0.2), (0.6, 0.4)) with rows indexed by a and columns by b, so the
// saddle point is (a = 1, b = 1).
ZeroSumGame BuildChainEnv(double reward_noise = 0.1);

// Always action 1.
Policy ChainOptimalMu();
// Action 1 everywhere; only (h = 7, s_7) affects the value since s_7 cannot
// be reached earlier.
Policy ChainOptimalNu();

}  // namespace mgpo

#endif  // MGPO_CHAIN_ENV_H_
