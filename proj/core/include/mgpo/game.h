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

#ifndef MGPO_GAME_H_
#define MGPO_GAME_H_

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mgpo {

// Row-sum tolerance for every probability vector in the library.
inline constexpr double kDistributionTolerance = 1e-9;

class InvalidDistributionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RewardOutOfRangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IndexMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateDistributionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class TransitionKind { kFactored, kSingleController };

// Player 1 maximizes the cumulative reward, player 2 minimizes it.
enum class Player { kMax = 0, kMin = 1 };

// Throws InvalidDistributionError unless `p` is nonnegative and sums to 1.
void CheckDistribution(std::span<const double> p, std::string_view what);

// Per-step Markov kernel P_h(s' | s, act) stored densely as [h][s][act][s'].
// Used for the single-controller kernel, for each factor of a factored
// kernel, and for empirical estimates of either.
class TransitionKernel {
 public:
  TransitionKernel() = default;
  // Zero-filled; callers fill rows through MutableRow().
  TransitionKernel(int horizon, int num_states, int num_actions);

  static TransitionKernel Uniform(int horizon, int num_states,
                                  int num_actions);
  static TransitionKernel Identity(int horizon, int num_states,
                                   int num_actions);

  int horizon() const { return horizon_; }
  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }

  std::span<const double> Row(int h, int s, int act) const {
    return {probs_.data() + Offset(h, s, act),
            static_cast<std::size_t>(num_states_)};
  }
  std::span<double> MutableRow(int h, int s, int act) {
    return {probs_.data() + Offset(h, s, act),
            static_cast<std::size_t>(num_states_)};
  }

  // <P_h(.|s, act), values>
  double Expect(int h, int s, int act, std::span<const double> values) const;

  void Validate(std::string_view name) const;

  const std::vector<double>& data() const { return probs_; }

 private:
  std::size_t Offset(int h, int s, int act) const {
    return ((static_cast<std::size_t>(h) * num_states_ + s) * num_actions_ +
            act) *
           num_states_;
  }

  int horizon_ = 0;
  int num_states_ = 0;
  int num_actions_ = 0;
  std::vector<double> probs_;
};

// P_h(s'|s,a,b) = P1_h(s1'|s1,a) * P2_h(s2'|s2,b).
struct FactoredTransition {
  TransitionKernel p1;
  TransitionKernel p2;
};

// P_h(s'|s,a,b) = P_h(s'|s,a).
struct SingleControllerTransition {
  TransitionKernel p;
};

using Transition = std::variant<FactoredTransition, SingleControllerTransition>;

// Sizes of a game. Factored joint states are encoded as
// s = s1 * |S2| + s2. Single-controller games use num_states2 == 1.
struct GameDims {
  TransitionKind kind = TransitionKind::kSingleController;
  int horizon = 0;
  int num_states1 = 0;
  int num_states2 = 1;
  int num_actions_a = 0;
  int num_actions_b = 0;

  int num_states() const { return num_states1 * num_states2; }
  bool factored() const { return kind == TransitionKind::kFactored; }

  int JointState(int s1, int s2) const { return s1 * num_states2 + s2; }
  int Component1(int s) const { return s / num_states2; }
  int Component2(int s) const { return s % num_states2; }

  // Size of the state space a player's policy is indexed by.
  int PolicyStates(Player player) const;
  // Maps a joint state to the index a player's policy is conditioned on.
  int PolicyState(Player player, int s) const;
  int NumActions(Player player) const {
    return player == Player::kMax ? num_actions_a : num_actions_b;
  }

  bool operator==(const GameDims&) const = default;
};

// pi_h(action | state) for one player, stored as [h][state][action].
class Policy {
 public:
  Policy() = default;
  // Uniform over actions at every (h, state).
  Policy(int horizon, int num_states, int num_actions);

  static Policy Uniform(const GameDims& dims, Player player);
  // Point masses; actions[h * num_states + s] is the chosen action.
  static Policy Deterministic(int horizon, int num_states, int num_actions,
                              std::span<const int> actions);

  int horizon() const { return horizon_; }
  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }

  std::span<const double> At(int h, int s) const {
    return {probs_.data() + Offset(h, s),
            static_cast<std::size_t>(num_actions_)};
  }
  std::span<double> MutableAt(int h, int s) {
    return {probs_.data() + Offset(h, s),
            static_cast<std::size_t>(num_actions_)};
  }

  void Validate() const;
  bool Matches(const GameDims& dims, Player player) const;

  const std::vector<double>& data() const { return probs_; }
  bool operator==(const Policy&) const = default;

 private:
  std::size_t Offset(int h, int s) const {
    return (static_cast<std::size_t>(h) * num_states_ + s) * num_actions_;
  }

  int horizon_ = 0;
  int num_states_ = 0;
  int num_actions_ = 0;
  std::vector<double> probs_;
};

// Everything needed to build a ZeroSumGame. Steps are 0-based internally:
// h = 0 is the first step of an episode.
struct GameDescription {
  int horizon = 0;
  int num_actions_a = 0;
  int num_actions_b = 0;
  // r_h(s, a, b) over joint states, layout [h][s][a][b].
  std::vector<double> reward;
  Transition transition;
  // Joint index; factored games pass JointState(s1, s2).
  int initial_state = 0;
  // Observed rewards are Unif[r - w, r + w].
  double reward_noise = 0.1;
};

class ZeroSumGame {
 public:
  // Validates every invariant; throws InvalidDistributionError,
  // RewardOutOfRangeError or IndexMismatchError.
  static ZeroSumGame Build(GameDescription desc);

  const GameDims& dims() const { return dims_; }
  int horizon() const { return dims_.horizon; }
  int num_states() const { return dims_.num_states(); }
  int num_actions_a() const { return dims_.num_actions_a; }
  int num_actions_b() const { return dims_.num_actions_b; }
  TransitionKind kind() const { return dims_.kind; }
  bool factored() const { return dims_.factored(); }
  int initial_state() const { return initial_state_; }
  double reward_noise() const { return reward_noise_; }

  double reward(int h, int s, int a, int b) const {
    return reward_[RewardOffset(h, s, a, b)];
  }
  const std::vector<double>& rewards() const { return reward_; }

  const Transition& transition() const { return transition_; }
  const FactoredTransition& factored_transition() const;
  const SingleControllerTransition& single_controller_transition() const;

  // Distribution over joint next states.
  std::vector<double> NextStateDistribution(int h, int s, int a, int b) const;

  // <P_h(.|s,a,b), values> over joint next states.
  double ExpectNext(int h, int s, int a, int b,
                    std::span<const double> values) const;

  std::size_t RewardOffset(int h, int s, int a, int b) const {
    return ((static_cast<std::size_t>(h) * dims_.num_states() + s) *
                dims_.num_actions_a +
            a) *
               dims_.num_actions_b +
           b;
  }

 private:
  ZeroSumGame() = default;

  GameDims dims_;
  std::vector<double> reward_;
  Transition transition_;
  int initial_state_ = 0;
  double reward_noise_ = 0.0;
};

struct TrajectoryStep {
  int state = 0;
  int action_a = 0;
  int action_b = 0;
  double reward = 0.0;
  int next_state = 0;

  bool operator==(const TrajectoryStep&) const = default;
};

// Exactly H steps; steps[h].next_state == steps[h + 1].state.
using Trajectory = std::vector<TrajectoryStep>;

}  // namespace mgpo

#endif  // MGPO_GAME_H_
