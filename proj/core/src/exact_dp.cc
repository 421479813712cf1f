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

#include "mgpo/exact_dp.h"

#include <stdexcept>
#include <utility>

namespace mgpo {
namespace {

// Ties within this margin resolve to the lower action index.
constexpr double kTieMargin = 1e-12;

void CheckPolicies(const ZeroSumGame& game, const Policy& mu,
                   const Policy& nu) {
  if (!mu.Matches(game.dims(), Player::kMax) ||
      !nu.Matches(game.dims(), Player::kMin)) {
    throw IndexMismatchError("policy shape does not match game");
  }
}

}  // namespace

ValueTable::ValueTable(const GameDims& game_dims)
    : dims(game_dims),
      v(static_cast<std::size_t>(game_dims.horizon + 1) *
            game_dims.num_states(),
        0.0),
      q(static_cast<std::size_t>(game_dims.horizon) * game_dims.num_states() *
            game_dims.num_actions_a * game_dims.num_actions_b,
        0.0) {}

double Bilinear(std::span<const double> mu, std::span<const double> block,
                std::span<const double> nu) {
  const std::size_t nb = nu.size();
  double total = 0.0;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    if (mu[a] == 0.0) continue;
    double row = 0.0;
    for (std::size_t b = 0; b < nb; ++b) row += block[a * nb + b] * nu[b];
    total += mu[a] * row;
  }
  return total;
}

ValueTable EvaluatePair(const ZeroSumGame& game, const Policy& mu,
                        const Policy& nu) {
  CheckPolicies(game, mu, nu);
  const GameDims& dims = game.dims();
  const int na = dims.num_actions_a;
  const int nb = dims.num_actions_b;
  ValueTable table(dims);
  for (int h = dims.horizon - 1; h >= 0; --h) {
    auto next = table.VStep(h + 1);
    for (int s = 0; s < dims.num_states(); ++s) {
      for (int a = 0; a < na; ++a) {
        // Single-controller successors do not depend on b.
        const double shared = game.factored() ? 0.0 : game.ExpectNext(h, s, a, 0, next);
        for (int b = 0; b < nb; ++b) {
          const double future =
              game.factored() ? game.ExpectNext(h, s, a, b, next) : shared;
          table.Q(h, s, a, b) = game.reward(h, s, a, b) + future;
        }
      }
      std::span<const double> block(&table.q[table.QIndex(h, s, 0, 0)],
                                    static_cast<std::size_t>(na) * nb);
      table.V(h, s) =
          Bilinear(mu.At(h, dims.PolicyState(Player::kMax, s)), block,
                   nu.At(h, dims.PolicyState(Player::kMin, s)));
    }
  }
  return table;
}

ReachingDistribution ExactReaching(const TransitionKernel& kernel,
                                   const Policy& policy, int initial_state) {
  if (policy.num_states() != kernel.num_states() ||
      policy.num_actions() != kernel.num_actions() ||
      policy.horizon() != kernel.horizon()) {
    throw IndexMismatchError("ExactReaching: policy does not match kernel");
  }
  const int ns = kernel.num_states();
  ReachingDistribution dist(kernel.horizon(), ns);
  dist.MutableAt(0)[initial_state] = 1.0;
  for (int h = 1; h < kernel.horizon(); ++h) {
    auto prev = dist.At(h - 1);
    auto cur = dist.MutableAt(h);
    for (int s = 0; s < ns; ++s) {
      if (prev[s] == 0.0) continue;
      auto pi = policy.At(h - 1, s);
      for (int act = 0; act < kernel.num_actions(); ++act) {
        const double weight = prev[s] * pi[act];
        if (weight == 0.0) continue;
        auto row = kernel.Row(h - 1, s, act);
        for (int next = 0; next < ns; ++next) cur[next] += weight * row[next];
      }
    }
  }
  return dist;
}

ReachingDistribution JointReaching(const ZeroSumGame& game, const Policy& mu,
                                   const Policy& nu) {
  CheckPolicies(game, mu, nu);
  const GameDims& dims = game.dims();
  const int ns = dims.num_states();
  ReachingDistribution dist(dims.horizon, ns);
  dist.MutableAt(0)[game.initial_state()] = 1.0;
  for (int h = 1; h < dims.horizon; ++h) {
    auto prev = dist.At(h - 1);
    auto cur = dist.MutableAt(h);
    for (int s = 0; s < ns; ++s) {
      if (prev[s] == 0.0) continue;
      auto pa = mu.At(h - 1, dims.PolicyState(Player::kMax, s));
      auto pb = nu.At(h - 1, dims.PolicyState(Player::kMin, s));
      for (int a = 0; a < dims.num_actions_a; ++a) {
        for (int b = 0; b < dims.num_actions_b; ++b) {
          const double weight = prev[s] * pa[a] * pb[b];
          if (weight == 0.0) continue;
          auto row = game.NextStateDistribution(h - 1, s, a, b);
          for (int next = 0; next < ns; ++next) cur[next] += weight * row[next];
        }
      }
    }
  }
  return dist;
}

HindsightAccumulator::HindsightAccumulator(const ZeroSumGame& game,
                                           Player player)
    : game_(&game),
      player_(player),
      num_states_(game.dims().PolicyStates(player)),
      num_actions_(game.dims().NumActions(player)),
      reward_(static_cast<std::size_t>(game.horizon()) * num_states_ *
                  num_actions_,
              0.0) {}

void HindsightAccumulator::Add(const Policy& opponent) {
  const ZeroSumGame& game = *game_;
  const GameDims& dims = game.dims();
  const Player other = player_ == Player::kMax ? Player::kMin : Player::kMax;
  if (!opponent.Matches(dims, other)) {
    throw IndexMismatchError("HindsightAccumulator: opponent policy shape");
  }
  const int na = dims.num_actions_a;
  const int nb = dims.num_actions_b;
  auto slot = [&](int h, int s, int act) -> double& {
    return reward_[(static_cast<std::size_t>(h) * num_states_ + s) *
                       num_actions_ +
                   act];
  };

  if (!dims.factored()) {
    if (player_ == Player::kMax) {
      for (int h = 0; h < dims.horizon; ++h)
        for (int s = 0; s < num_states_; ++s) {
          auto nu = opponent.At(h, s);
          for (int a = 0; a < na; ++a) {
            double total = 0.0;
            for (int b = 0; b < nb; ++b) total += nu[b] * game.reward(h, s, a, b);
            slot(h, s, a) += total;
          }
        }
    } else {
      const auto reach = ExactReaching(game.single_controller_transition().p,
                                       opponent, game.initial_state());
      for (int h = 0; h < dims.horizon; ++h)
        for (int s = 0; s < num_states_; ++s) {
          const double q = reach.At(h)[s];
          if (q == 0.0) continue;
          auto mu = opponent.At(h, s);
          for (int b = 0; b < nb; ++b) {
            double total = 0.0;
            for (int a = 0; a < na; ++a) total += mu[a] * game.reward(h, s, a, b);
            slot(h, s, b) += q * total;
          }
        }
    }
  } else {
    const auto& fac = game.factored_transition();
    const int init = game.initial_state();
    if (player_ == Player::kMax) {
      const auto reach =
          ExactReaching(fac.p2, opponent, dims.Component2(init));
      for (int h = 0; h < dims.horizon; ++h)
        for (int s2 = 0; s2 < dims.num_states2; ++s2) {
          const double q = reach.At(h)[s2];
          if (q == 0.0) continue;
          auto nu = opponent.At(h, s2);
          for (int s1 = 0; s1 < dims.num_states1; ++s1) {
            const int s = dims.JointState(s1, s2);
            for (int a = 0; a < na; ++a) {
              double total = 0.0;
              for (int b = 0; b < nb; ++b)
                total += nu[b] * game.reward(h, s, a, b);
              slot(h, s1, a) += q * total;
            }
          }
        }
    } else {
      const auto reach =
          ExactReaching(fac.p1, opponent, dims.Component1(init));
      for (int h = 0; h < dims.horizon; ++h)
        for (int s1 = 0; s1 < dims.num_states1; ++s1) {
          const double q = reach.At(h)[s1];
          if (q == 0.0) continue;
          auto mu = opponent.At(h, s1);
          for (int s2 = 0; s2 < dims.num_states2; ++s2) {
            const int s = dims.JointState(s1, s2);
            for (int b = 0; b < nb; ++b) {
              double total = 0.0;
              for (int a = 0; a < na; ++a)
                total += mu[a] * game.reward(h, s, a, b);
              slot(h, s2, b) += q * total;
            }
          }
        }
    }
  }
  ++count_;
}

HindsightResult HindsightAccumulator::Solve() const {
  if (count_ == 0) {
    throw std::logic_error("HindsightAccumulator::Solve: empty history");
  }
  const ZeroSumGame& game = *game_;
  const GameDims& dims = game.dims();
  const bool maximize = player_ == Player::kMax;
  auto better = [maximize](double candidate, double best) {
    return maximize ? candidate > best + kTieMargin
                    : candidate < best - kTieMargin;
  };
  auto reward = [&](int h, int s, int act) {
    return reward_[(static_cast<std::size_t>(h) * num_states_ + s) *
                       num_actions_ +
                   act];
  };

  std::vector<int> choice(static_cast<std::size_t>(dims.horizon) * num_states_,
                          0);
  double total_value = 0.0;

  if (!dims.factored() && player_ == Player::kMin) {
    // Separable per (h, s).
    for (int h = 0; h < dims.horizon; ++h)
      for (int s = 0; s < num_states_; ++s) {
        int best = 0;
        for (int act = 1; act < num_actions_; ++act)
          if (better(reward(h, s, act), reward(h, s, best))) best = act;
        choice[static_cast<std::size_t>(h) * num_states_ + s] = best;
        total_value += reward(h, s, best);
      }
  } else {
    const TransitionKernel* kernel = nullptr;
    int init = game.initial_state();
    if (!dims.factored()) {
      kernel = &game.single_controller_transition().p;
    } else if (maximize) {
      kernel = &game.factored_transition().p1;
      init = dims.Component1(init);
    } else {
      kernel = &game.factored_transition().p2;
      init = dims.Component2(init);
    }
    // Values here are sums over the accumulated opponents.
    std::vector<double> next(num_states_, 0.0);
    std::vector<double> cur(num_states_, 0.0);
    for (int h = dims.horizon - 1; h >= 0; --h) {
      for (int s = 0; s < num_states_; ++s) {
        int best = 0;
        double best_value = 0.0;
        for (int act = 0; act < num_actions_; ++act) {
          const double value =
              reward(h, s, act) + kernel->Expect(h, s, act, next);
          if (act == 0 || better(value, best_value)) {
            best = act;
            best_value = value;
          }
        }
        choice[static_cast<std::size_t>(h) * num_states_ + s] = best;
        cur[s] = best_value;
      }
      std::swap(cur, next);
    }
    total_value = next[init];
  }

  return {Policy::Deterministic(dims.horizon, num_states_, num_actions_, choice),
          total_value};
}

HindsightResult HindsightBestP1(const ZeroSumGame& game,
                                std::span<const Policy> opponent_history) {
  if (opponent_history.empty()) {
    throw std::invalid_argument("HindsightBestP1: empty opponent history");
  }
  HindsightAccumulator acc(game, Player::kMax);
  for (const auto& nu : opponent_history) acc.Add(nu);
  return acc.Solve();
}

HindsightResult HindsightBestP2(const ZeroSumGame& game,
                                std::span<const Policy> opponent_history) {
  if (opponent_history.empty()) {
    throw std::invalid_argument("HindsightBestP2: empty opponent history");
  }
  HindsightAccumulator acc(game, Player::kMin);
  for (const auto& mu : opponent_history) acc.Add(mu);
  return acc.Solve();
}

}  // namespace mgpo
