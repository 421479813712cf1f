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

#include "mgpo/estimation.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mgpo {

void EstimationConfig::Validate() const {
  if (num_episodes < 2) {
    throw std::invalid_argument("estimation: episode budget K must be >= 2");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("estimation: delta must lie in (0, 1)");
  }
  if (!(reward_bonus_scale >= 0.0) || !(transition_bonus_scale >= 0.0)) {
    throw std::invalid_argument("estimation: bonus scales must be >= 0");
  }
}

EmpiricalModel::EmpiricalModel(const GameDims& dims, int initial_state,
                               EstimationConfig config)
    : dims_(dims), initial_state_(initial_state), config_(config) {
  config_.Validate();
  if (initial_state < 0 || initial_state >= dims.num_states()) {
    throw IndexMismatchError("EmpiricalModel: initial state out of range");
  }
  const std::size_t sab = static_cast<std::size_t>(dims.horizon) *
                          dims.num_states() * dims.num_actions_a *
                          dims.num_actions_b;
  n_sab_.assign(sab, 0);
  reward_sum_.assign(sab, 0.0);

  auto init_factor = [&](FactorCounts& f, int states, int actions) {
    f.num_states = states;
    f.num_actions = actions;
    const std::size_t visits =
        static_cast<std::size_t>(dims.horizon) * states * actions;
    f.visits.assign(visits, 0);
    f.transitions.assign(visits * states, 0);
  };

  const double H = dims.horizon;
  const double K = config_.num_episodes;
  const double delta = config_.delta;
  const double S = dims.num_states();
  const double A = dims.num_actions_a;
  const double B = dims.num_actions_b;
  reward_log_ = std::log(S * A * B * H * K / delta);

  if (dims.factored()) {
    init_factor(factor1_, dims.num_states1, dims.num_actions_a);
    init_factor(factor2_, dims.num_states2, dims.num_actions_b);
    const double S1 = dims.num_states1;
    const double S2 = dims.num_states2;
    transition_coef1_ = 2.0 * H * H * S1 * std::log(2.0 * S1 * A * H * K / delta);
    transition_coef2_ = 2.0 * H * H * S2 * std::log(2.0 * S2 * B * H * K / delta);
  } else {
    init_factor(factor1_, dims.num_states(), dims.num_actions_a);
    transition_coef1_ = 2.0 * H * H * S * std::log(S * A * H * K / delta);
  }
}

const EmpiricalModel::FactorCounts& EmpiricalModel::Factor(
    Player player) const {
  if (player == Player::kMax) return factor1_;
  if (!dims_.factored()) {
    throw IndexMismatchError(
        "single-controller transitions are indexed by player 1's action");
  }
  return factor2_;
}

void EmpiricalModel::Update(const Trajectory& traj) {
  if (static_cast<int>(traj.size()) != dims_.horizon) {
    throw IndexMismatchError("trajectory length differs from horizon");
  }
  for (int h = 0; h < dims_.horizon; ++h) {
    const auto& step = traj[h];
    if (step.state < 0 || step.state >= dims_.num_states() ||
        step.next_state < 0 || step.next_state >= dims_.num_states() ||
        step.action_a < 0 || step.action_a >= dims_.num_actions_a ||
        step.action_b < 0 || step.action_b >= dims_.num_actions_b) {
      std::ostringstream msg;
      msg << "trajectory step " << h << " has out-of-range indices";
      throw IndexMismatchError(msg.str());
    }
  }

  for (int h = 0; h < dims_.horizon; ++h) {
    const auto& step = traj[h];
    const auto idx = SabIndex(h, step.state, step.action_a, step.action_b);
    ++n_sab_[idx];
    reward_sum_[idx] += step.reward;

    auto record = [h](FactorCounts& f, int s, int act, int next) {
      const auto v = f.VisitIndex(h, s, act);
      ++f.visits[v];
      ++f.transitions[v * f.num_states + next];
    };
    if (dims_.factored()) {
      record(factor1_, dims_.Component1(step.state), step.action_a,
             dims_.Component1(step.next_state));
      record(factor2_, dims_.Component2(step.state), step.action_b,
             dims_.Component2(step.next_state));
    } else {
      record(factor1_, step.state, step.action_a, step.next_state);
    }
  }
  ++episodes_;
}

std::int64_t EmpiricalModel::CountOwn(Player player, int h, int state,
                                      int action) const {
  const auto& f = Factor(player);
  return f.visits[f.VisitIndex(h, state, action)];
}

double EmpiricalModel::EmpiricalReward(int h, int s, int a, int b) const {
  const auto idx = SabIndex(h, s, a, b);
  const auto n = n_sab_[idx];
  return n == 0 ? 0.0 : reward_sum_[idx] / static_cast<double>(n);
}

std::vector<double> EmpiricalModel::EmpiricalTransition(Player player, int h,
                                                        int state,
                                                        int action) const {
  const auto& f = Factor(player);
  const auto v = f.VisitIndex(h, state, action);
  const auto n = f.visits[v];
  std::vector<double> row(f.num_states, 1.0 / f.num_states);
  if (n == 0) return row;
  for (int next = 0; next < f.num_states; ++next) {
    row[next] = static_cast<double>(f.transitions[v * f.num_states + next]) /
                static_cast<double>(n);
  }
  return row;
}

TransitionKernel EmpiricalModel::EmpiricalKernel(Player player) const {
  const auto& f = Factor(player);
  TransitionKernel kernel(dims_.horizon, f.num_states, f.num_actions);
  for (int h = 0; h < dims_.horizon; ++h)
    for (int s = 0; s < f.num_states; ++s)
      for (int act = 0; act < f.num_actions; ++act) {
        auto row = EmpiricalTransition(player, h, s, act);
        std::copy(row.begin(), row.end(), kernel.MutableRow(h, s, act).begin());
      }
  return kernel;
}

double EmpiricalModel::RewardBonus(int h, int s, int a, int b) const {
  const auto n = std::max<std::int64_t>(CountSab(h, s, a, b), 1);
  return config_.reward_bonus_scale *
         std::sqrt(4.0 * reward_log_ / static_cast<double>(n));
}

double EmpiricalModel::TransitionBonus(int h, int s, int a, int b) const {
  if (!dims_.factored()) {
    const auto n = std::max<std::int64_t>(CountOwn(Player::kMax, h, s, a), 1);
    return config_.transition_bonus_scale *
           std::sqrt(transition_coef1_ / static_cast<double>(n));
  }
  const auto n1 = std::max<std::int64_t>(
      CountOwn(Player::kMax, h, dims_.Component1(s), a), 1);
  const auto n2 = std::max<std::int64_t>(
      CountOwn(Player::kMin, h, dims_.Component2(s), b), 1);
  return config_.transition_bonus_scale *
         (std::sqrt(transition_coef1_ / static_cast<double>(n1)) +
          std::sqrt(transition_coef2_ / static_cast<double>(n2)));
}

double EmpiricalModel::OptimisticReward(int h, int s, int a, int b) const {
  return std::max(EmpiricalReward(h, s, a, b) - RewardBonus(h, s, a, b), 0.0);
}

}  // namespace mgpo
