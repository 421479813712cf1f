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

#include "mgpo/game.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace mgpo {
namespace {

// Slack for rewards sitting exactly on the [0, 1] boundary after +/- w.
constexpr double kRangeSlack = 1e-12;

void CheckKernelShape(const TransitionKernel& kernel, int horizon,
                      int num_actions, std::string_view name) {
  if (kernel.horizon() != horizon || kernel.num_actions() != num_actions ||
      kernel.num_states() <= 0) {
    std::ostringstream msg;
    msg << name << ": kernel shape (H=" << kernel.horizon()
        << ", actions=" << kernel.num_actions()
        << ") does not match game (H=" << horizon
        << ", actions=" << num_actions << ")";
    throw IndexMismatchError(msg.str());
  }
}

}  // namespace

void CheckDistribution(std::span<const double> p, std::string_view what) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw InvalidDistributionError(std::string(what) +
                                     ": negative or non-finite entry");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kDistributionTolerance) {
    std::ostringstream msg;
    msg << what << ": entries sum to " << total << ", expected 1";
    throw InvalidDistributionError(msg.str());
  }
}

TransitionKernel::TransitionKernel(int horizon, int num_states,
                                   int num_actions)
    : horizon_(horizon),
      num_states_(num_states),
      num_actions_(num_actions),
      probs_(static_cast<std::size_t>(horizon) * num_states * num_actions *
                 num_states,
             0.0) {
  if (horizon < 1 || num_states < 1 || num_actions < 1) {
    throw IndexMismatchError("TransitionKernel: sizes must be positive");
  }
}

TransitionKernel TransitionKernel::Uniform(int horizon, int num_states,
                                           int num_actions) {
  TransitionKernel kernel(horizon, num_states, num_actions);
  std::fill(kernel.probs_.begin(), kernel.probs_.end(), 1.0 / num_states);
  return kernel;
}

TransitionKernel TransitionKernel::Identity(int horizon, int num_states,
                                            int num_actions) {
  TransitionKernel kernel(horizon, num_states, num_actions);
  for (int h = 0; h < horizon; ++h)
    for (int s = 0; s < num_states; ++s)
      for (int act = 0; act < num_actions; ++act)
        kernel.MutableRow(h, s, act)[s] = 1.0;
  return kernel;
}

double TransitionKernel::Expect(int h, int s, int act,
                                std::span<const double> values) const {
  auto row = Row(h, s, act);
  double total = 0.0;
  for (int next = 0; next < num_states_; ++next) total += row[next] * values[next];
  return total;
}

void TransitionKernel::Validate(std::string_view name) const {
  for (int h = 0; h < horizon_; ++h) {
    for (int s = 0; s < num_states_; ++s) {
      for (int act = 0; act < num_actions_; ++act) {
        std::ostringstream what;
        what << name << " row (h=" << h << ", s=" << s << ", act=" << act
             << ")";
        CheckDistribution(Row(h, s, act), what.str());
      }
    }
  }
}

int GameDims::PolicyStates(Player player) const {
  if (!factored()) return num_states();
  return player == Player::kMax ? num_states1 : num_states2;
}

int GameDims::PolicyState(Player player, int s) const {
  if (!factored()) return s;
  return player == Player::kMax ? Component1(s) : Component2(s);
}

Policy::Policy(int horizon, int num_states, int num_actions)
    : horizon_(horizon),
      num_states_(num_states),
      num_actions_(num_actions),
      probs_(static_cast<std::size_t>(horizon) * num_states * num_actions,
             num_actions > 0 ? 1.0 / num_actions : 0.0) {
  if (horizon < 1 || num_states < 1 || num_actions < 1) {
    throw IndexMismatchError("Policy: sizes must be positive");
  }
}

Policy Policy::Uniform(const GameDims& dims, Player player) {
  return Policy(dims.horizon, dims.PolicyStates(player),
                dims.NumActions(player));
}

Policy Policy::Deterministic(int horizon, int num_states, int num_actions,
                             std::span<const int> actions) {
  if (actions.size() != static_cast<std::size_t>(horizon) * num_states) {
    throw IndexMismatchError("Policy::Deterministic: wrong action count");
  }
  Policy policy(horizon, num_states, num_actions);
  std::fill(policy.probs_.begin(), policy.probs_.end(), 0.0);
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < num_states; ++s) {
      int act = actions[static_cast<std::size_t>(h) * num_states + s];
      if (act < 0 || act >= num_actions) {
        throw IndexMismatchError("Policy::Deterministic: action out of range");
      }
      policy.MutableAt(h, s)[act] = 1.0;
    }
  }
  return policy;
}

void Policy::Validate() const {
  for (int h = 0; h < horizon_; ++h) {
    for (int s = 0; s < num_states_; ++s) {
      std::ostringstream what;
      what << "policy (h=" << h << ", s=" << s << ")";
      CheckDistribution(At(h, s), what.str());
    }
  }
}

bool Policy::Matches(const GameDims& dims, Player player) const {
  return horizon_ == dims.horizon &&
         num_states_ == dims.PolicyStates(player) &&
         num_actions_ == dims.NumActions(player);
}

ZeroSumGame ZeroSumGame::Build(GameDescription desc) {
  if (desc.horizon < 1) throw IndexMismatchError("horizon must be >= 1");
  if (desc.num_actions_a < 1 || desc.num_actions_b < 1) {
    throw IndexMismatchError("action spaces must be nonempty");
  }

  ZeroSumGame game;
  GameDims& dims = game.dims_;
  dims.horizon = desc.horizon;
  dims.num_actions_a = desc.num_actions_a;
  dims.num_actions_b = desc.num_actions_b;

  if (const auto* fac = std::get_if<FactoredTransition>(&desc.transition)) {
    dims.kind = TransitionKind::kFactored;
    CheckKernelShape(fac->p1, desc.horizon, desc.num_actions_a, "P1");
    CheckKernelShape(fac->p2, desc.horizon, desc.num_actions_b, "P2");
    fac->p1.Validate("P1");
    fac->p2.Validate("P2");
    dims.num_states1 = fac->p1.num_states();
    dims.num_states2 = fac->p2.num_states();
  } else {
    const auto& sc = std::get<SingleControllerTransition>(desc.transition);
    dims.kind = TransitionKind::kSingleController;
    CheckKernelShape(sc.p, desc.horizon, desc.num_actions_a, "P");
    sc.p.Validate("P");
    dims.num_states1 = sc.p.num_states();
    dims.num_states2 = 1;
  }

  const std::size_t expected = static_cast<std::size_t>(dims.horizon) *
                               dims.num_states() * dims.num_actions_a *
                               dims.num_actions_b;
  if (desc.reward.size() != expected) {
    std::ostringstream msg;
    msg << "reward tensor has " << desc.reward.size() << " entries, expected "
        << expected;
    throw IndexMismatchError(msg.str());
  }
  if (desc.initial_state < 0 || desc.initial_state >= dims.num_states()) {
    throw IndexMismatchError("initial state out of range");
  }
  if (!(desc.reward_noise >= 0.0) || !std::isfinite(desc.reward_noise)) {
    throw RewardOutOfRangeError("reward noise half-width must be >= 0");
  }
  for (std::size_t i = 0; i < desc.reward.size(); ++i) {
    const double r = desc.reward[i];
    if (!(r >= 0.0 && r <= 1.0)) {
      std::ostringstream msg;
      msg << "reward entry " << i << " = " << r << " outside [0, 1]";
      throw RewardOutOfRangeError(msg.str());
    }
    if (r - desc.reward_noise < -kRangeSlack ||
        r + desc.reward_noise > 1.0 + kRangeSlack) {
      std::ostringstream msg;
      msg << "reward entry " << i << " = " << r << " with noise +/-"
          << desc.reward_noise << " leaves [0, 1]";
      throw RewardOutOfRangeError(msg.str());
    }
  }

  game.reward_ = std::move(desc.reward);
  game.transition_ = std::move(desc.transition);
  game.initial_state_ = desc.initial_state;
  game.reward_noise_ = desc.reward_noise;
  return game;
}

const FactoredTransition& ZeroSumGame::factored_transition() const {
  if (!factored()) throw IndexMismatchError("game is not factored");
  return std::get<FactoredTransition>(transition_);
}

const SingleControllerTransition& ZeroSumGame::single_controller_transition()
    const {
  if (factored()) throw IndexMismatchError("game is not single-controller");
  return std::get<SingleControllerTransition>(transition_);
}

std::vector<double> ZeroSumGame::NextStateDistribution(int h, int s, int a,
                                                       int b) const {
  if (!factored()) {
    auto row = single_controller_transition().p.Row(h, s, a);
    return {row.begin(), row.end()};
  }
  const auto& fac = factored_transition();
  auto row1 = fac.p1.Row(h, dims_.Component1(s), a);
  auto row2 = fac.p2.Row(h, dims_.Component2(s), b);
  std::vector<double> joint(dims_.num_states());
  for (int n1 = 0; n1 < dims_.num_states1; ++n1)
    for (int n2 = 0; n2 < dims_.num_states2; ++n2)
      joint[dims_.JointState(n1, n2)] = row1[n1] * row2[n2];
  return joint;
}

double ZeroSumGame::ExpectNext(int h, int s, int a, int b,
                               std::span<const double> values) const {
  if (!factored()) {
    return single_controller_transition().p.Expect(h, s, a, values);
  }
  const auto& fac = factored_transition();
  auto row1 = fac.p1.Row(h, dims_.Component1(s), a);
  auto row2 = fac.p2.Row(h, dims_.Component2(s), b);
  double total = 0.0;
  for (int n1 = 0; n1 < dims_.num_states1; ++n1) {
    if (row1[n1] == 0.0) continue;
    double inner = 0.0;
    for (int n2 = 0; n2 < dims_.num_states2; ++n2)
      inner += row2[n2] * values[dims_.JointState(n1, n2)];
    total += row1[n1] * inner;
  }
  return total;
}

}  // namespace mgpo
