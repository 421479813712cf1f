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

#ifndef MGPO_ESTIMATION_H_
#define MGPO_ESTIMATION_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mgpo/game.h"

namespace mgpo {

struct EstimationConfig {
  // Confidence parameter inside the bonus logarithms.
  double delta = 0.01;
  // Total episode budget K; bonuses use K, not the running episode index.
  int num_episodes = 2;
  double reward_bonus_scale = 1.0;
  double transition_bonus_scale = 1.0;

  // Requires K >= 2, delta in (0, 1) and nonnegative scales.
  void Validate() const;

  bool operator==(const EstimationConfig&) const = default;
};

// Visit counters and the estimates derived from them, for one player.
//
// Single-controller games count next states per (h, s, a). Factored games
// count each factor separately: per (h, s1, a) and per (h, s2, b).
class EmpiricalModel {
 public:
  EmpiricalModel(const GameDims& dims, int initial_state,
                 EstimationConfig config);

  // Throws IndexMismatchError for trajectories that do not fit the game.
  void Update(const Trajectory& traj);

  const GameDims& dims() const { return dims_; }
  const EstimationConfig& config() const { return config_; }
  int initial_state() const { return initial_state_; }
  // Number of trajectories absorbed so far.
  int episodes() const { return episodes_; }

  std::int64_t CountSab(int h, int s, int a, int b) const {
    return n_sab_[SabIndex(h, s, a, b)];
  }
  // N_h(state, action) in the kernel space of `player`: (s, a) for
  // single-controller P1, (s1, a) or (s2, b) for factored games.
  std::int64_t CountOwn(Player player, int h, int state, int action) const;

  // Sample mean of observed rewards; 0 when unvisited.
  double EmpiricalReward(int h, int s, int a, int b) const;

  // Count ratios; uniform over the next states when unvisited.
  std::vector<double> EmpiricalTransition(Player player, int h, int state,
                                          int action) const;
  TransitionKernel EmpiricalKernel(Player player) const;

  // sqrt(4 log(|S||A||B| H K / delta) / max(N, 1)), scaled.
  double RewardBonus(int h, int s, int a, int b) const;
  // Single-controller: sqrt(2 H^2 |S| log(|S||A| H K / delta) / max(N(s,a), 1)).
  // Factored: the same form per factor, with 2|S_i| inside the logarithm,
  // summed over the two factors. Scaled. `b` is ignored for
  // single-controller games.
  double TransitionBonus(int h, int s, int a, int b) const;

  // max(r_hat - reward bonus, 0).
  double OptimisticReward(int h, int s, int a, int b) const;

  bool operator==(const EmpiricalModel&) const = default;

 private:
  std::size_t SabIndex(int h, int s, int a, int b) const {
    return ((static_cast<std::size_t>(h) * dims_.num_states() + s) *
                dims_.num_actions_a +
            a) *
               dims_.num_actions_b +
           b;
  }
  struct FactorCounts {
    int num_states = 0;
    int num_actions = 0;
    std::vector<std::int64_t> visits;       // [h][s][act]
    std::vector<std::int64_t> transitions;  // [h][s][act][s']
    std::size_t VisitIndex(int h, int s, int act) const {
      return (static_cast<std::size_t>(h) * num_states + s) * num_actions + act;
    }
    bool operator==(const FactorCounts&) const = default;
  };
  const FactorCounts& Factor(Player player) const;
  FactorCounts& Factor(Player player) {
    return const_cast<FactorCounts&>(std::as_const(*this).Factor(player));
  }

  GameDims dims_;
  int initial_state_ = 0;
  EstimationConfig config_;
  int episodes_ = 0;
  std::vector<std::int64_t> n_sab_;
  std::vector<double> reward_sum_;
  FactorCounts factor1_;  // (s, a) or (s1, a)
  FactorCounts factor2_;  // (s2, b); unused for single-controller games
  double reward_log_ = 0.0;
  double transition_coef1_ = 0.0;
  double transition_coef2_ = 0.0;
};

}  // namespace mgpo

#endif  // MGPO_ESTIMATION_H_
