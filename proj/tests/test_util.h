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

// Independent oracles shared by the unit and acceptance tests. Nothing here
// calls into the code it is used to check beyond EvaluatePair, which has its
// own hand-computed tests.

#ifndef MGPO_TESTS_TEST_UTIL_H_
#define MGPO_TESTS_TEST_UTIL_H_

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "mgpo/exact_dp.h"
#include "mgpo/game.h"
#include "mgpo/sampler.h"

namespace mgpo::testing {

// One-step single-controller game with the given reward matrix at every
// state and a kernel that keeps each state where it is.
ZeroSumGame MatrixGame(const std::vector<double>& matrix, int num_actions_a,
                       int num_actions_b);

// Calls `visit` with every deterministic policy over (H, S, A). The number of
// policies is A^(H*S).
void ForEachDeterministic(int horizon, int num_states, int num_actions,
                          const std::function<void(const Policy&)>& visit);

// max (P1) or min (P2) over deterministic own policies of the summed exact
// value against each opponent in the history.
double BruteForceHindsight(const ZeroSumGame& game, Player player,
                           std::span<const Policy> history);

// Sum of exact values of `own` against every opponent in the history.
double SummedValue(const ZeroSumGame& game, Player player, const Policy& own,
                   std::span<const Policy> history);

// A random strictly positive policy for `player`.
Policy RandomPolicy(const GameDims& dims, Player player, Rng& rng);

// KL(p || q) over matching supports.
double KlDivergence(std::span<const double> p, std::span<const double> q);

// Pearson chi-squared statistic of observed counts against probabilities,
// skipping zero-probability cells (which must have zero counts).
double ChiSquared(std::span<const long> counts, std::span<const double> probs);

}  // namespace mgpo::testing

#endif  // MGPO_TESTS_TEST_UTIL_H_
