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

#ifndef MGPO_EXACT_DP_H_
#define MGPO_EXACT_DP_H_

#include <span>
#include <vector>

#include "mgpo/game.h"

namespace mgpo {

// V_h(s) for h = 0..H (V_H == 0) and Q_h(s, a, b) for h = 0..H-1.
struct ValueTable {
  GameDims dims;
  std::vector<double> v;
  std::vector<double> q;

  explicit ValueTable(const GameDims& game_dims);

  double V(int h, int s) const { return v[VIndex(h, s)]; }
  double& V(int h, int s) { return v[VIndex(h, s)]; }
  double Q(int h, int s, int a, int b) const { return q[QIndex(h, s, a, b)]; }
  double& Q(int h, int s, int a, int b) { return q[QIndex(h, s, a, b)]; }

  std::span<const double> VStep(int h) const {
    return {v.data() + VIndex(h, 0), static_cast<std::size_t>(dims.num_states())};
  }

  std::size_t VIndex(int h, int s) const {
    return static_cast<std::size_t>(h) * dims.num_states() + s;
  }
  std::size_t QIndex(int h, int s, int a, int b) const {
    return ((static_cast<std::size_t>(h) * dims.num_states() + s) *
                dims.num_actions_a +
            a) *
               dims.num_actions_b +
           b;
  }
};

// mu^T M nu for an |A| x |B| row-major block.
double Bilinear(std::span<const double> mu, std::span<const double> block,
                std::span<const double> nu);

// Exact Bellman evaluation of a policy pair under the true model.
ValueTable EvaluatePair(const ZeroSumGame& game, const Policy& mu,
                        const Policy& nu);

// d_h(s) for h = 0..H-1 over the state space a kernel is defined on.
struct ReachingDistribution {
  int horizon = 0;
  int num_states = 0;
  std::vector<double> d;

  ReachingDistribution(int horizon_steps, int states)
      : horizon(horizon_steps),
        num_states(states),
        d(static_cast<std::size_t>(horizon_steps) * states, 0.0) {}

  std::span<const double> At(int h) const {
    return {d.data() + static_cast<std::size_t>(h) * num_states,
            static_cast<std::size_t>(num_states)};
  }
  std::span<double> MutableAt(int h) {
    return {d.data() + static_cast<std::size_t>(h) * num_states,
            static_cast<std::size_t>(num_states)};
  }
};

// Forward recursion
//   d_0 = point mass at initial_state,
//   d_h(s') = sum_{s, act} d_{h-1}(s) policy_{h-1}(act|s) kernel_{h-1}(s'|s,act).
// `kernel` and `policy` must share state and action spaces.
ReachingDistribution ExactReaching(const TransitionKernel& kernel,
                                   const Policy& policy, int initial_state);

// Reaching probabilities over joint states when both players act under the
// true model. For single-controller games this is nu-free.
ReachingDistribution JointReaching(const ZeroSumGame& game, const Policy& mu,
                                   const Policy& nu);

struct HindsightResult {
  Policy policy;
  // sum_k V_1^{policy, opponent_k}(s_1)
  double total_value = 0.0;
};

// Accumulates the reward a player faces against a stream of opponent
// policies so the best fixed Markov policy against the whole stream can be
// recovered exactly.
//
// Fixing the opponent's policy turns the game into an MDP for the other
// player, and with these transition structures the opponent only enters that
// MDP through its reward, linearly:
//   single-controller P1: reward  sum_k sum_b nu_k(b|s) r(s,a,b), kernel P.
//   factored P1:          reward  sum_k sum_{s2} q_k(s2) sum_b nu_k(b|s2)
//                                 r(s1,s2,a,b), kernel P1, where q_k is
//                                 nu_k's reaching distribution under P2.
//   factored P2:          symmetric, kernel P2, minimized.
//   single-controller P2: the state distribution does not depend on nu, so
//                         the objective separates per (h, s) into
//                         sum_b nu(b|s) sum_k q_k(s) sum_a mu_k(a|s) r(s,a,b).
// Ties go to the lowest action index.
class HindsightAccumulator {
 public:
  HindsightAccumulator(const ZeroSumGame& game, Player player);

  void Add(const Policy& opponent);
  HindsightResult Solve() const;

  int count() const { return count_; }
  Player player() const { return player_; }

 private:
  const ZeroSumGame* game_;
  Player player_;
  int num_states_;
  int num_actions_;
  std::vector<double> reward_;  // [h][own state][own action]
  int count_ = 0;
};

HindsightResult HindsightBestP1(const ZeroSumGame& game,
                                std::span<const Policy> opponent_history);
HindsightResult HindsightBestP2(const ZeroSumGame& game,
                                std::span<const Policy> opponent_history);

}  // namespace mgpo

#endif  // MGPO_EXACT_DP_H_
