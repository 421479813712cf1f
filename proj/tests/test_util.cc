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

#include "test_util.h"

#include <random>
#include <stdexcept>

namespace mgpo::testing {

ZeroSumGame MatrixGame(const std::vector<double>& matrix, int num_actions_a,
                       int num_actions_b) {
  GameDescription desc;
  desc.horizon = 1;
  desc.num_actions_a = num_actions_a;
  desc.num_actions_b = num_actions_b;
  desc.reward = matrix;
  desc.transition = SingleControllerTransition{
      TransitionKernel::Identity(1, 1, num_actions_a)};
  desc.reward_noise = 0.0;
  return ZeroSumGame::Build(desc);
}

void ForEachDeterministic(int horizon, int num_states, int num_actions,
                          const std::function<void(const Policy&)>& visit) {
  const int cells = horizon * num_states;
  std::vector<int> choice(cells, 0);
  while (true) {
    visit(Policy::Deterministic(horizon, num_states, num_actions, choice));
    int i = 0;
    while (i < cells && ++choice[i] == num_actions) choice[i++] = 0;
    if (i == cells) return;
  }
}

double SummedValue(const ZeroSumGame& game, Player player, const Policy& own,
                   std::span<const Policy> history) {
  double total = 0.0;
  for (const auto& other : history) {
    const auto table = player == Player::kMax ? EvaluatePair(game, own, other)
                                              : EvaluatePair(game, other, own);
    total += table.V(0, game.initial_state());
  }
  return total;
}

double BruteForceHindsight(const ZeroSumGame& game, Player player,
                           std::span<const Policy> history) {
  const GameDims& dims = game.dims();
  const bool maximize = player == Player::kMax;
  double best = maximize ? -INFINITY : INFINITY;
  ForEachDeterministic(dims.horizon, dims.PolicyStates(player),
                       dims.NumActions(player), [&](const Policy& own) {
                         const double v = SummedValue(game, player, own, history);
                         best = maximize ? std::max(best, v) : std::min(best, v);
                       });
  return best;
}

Policy RandomPolicy(const GameDims& dims, Player player, Rng& rng) {
  std::exponential_distribution<double> draw(1.0);
  Policy out(dims.horizon, dims.PolicyStates(player), dims.NumActions(player));
  for (int h = 0; h < out.horizon(); ++h)
    for (int s = 0; s < out.num_states(); ++s) {
      auto row = out.MutableAt(h, s);
      double total = 0.0;
      for (double& x : row) total += (x = draw(rng) + 1e-3);
      for (double& x : row) x /= total;
    }
  return out;
}

double KlDivergence(std::span<const double> p, std::span<const double> q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) total += p[i] * std::log(p[i] / q[i]);
  return total;
}

double ChiSquared(std::span<const long> counts, std::span<const double> probs) {
  long n = 0;
  for (long c : counts) n += c;
  double stat = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (probs[i] == 0.0) {
      if (counts[i] != 0) return INFINITY;
      continue;
    }
    const double expected = probs[i] * static_cast<double>(n);
    const double diff = static_cast<double>(counts[i]) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

}  // namespace mgpo::testing
