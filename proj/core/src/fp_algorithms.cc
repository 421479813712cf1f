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

#include "mgpo/fp_algorithms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mgpo/reaching.h"

namespace mgpo {
namespace {

constexpr double kProbabilityFloor = std::numeric_limits<double>::min();

// P_hat V_{h+1}(s, a, b) for every joint (s, a, b) at step h, in the
// [s][a][b] layout.
std::vector<double> PredictNext(const GameDims& dims,
                                const TransitionKernel& k1,
                                const TransitionKernel* k2, int h,
                                std::span<const double> next) {
  const int na = dims.num_actions_a;
  const int nb = dims.num_actions_b;
  std::vector<double> out(static_cast<std::size_t>(dims.num_states()) * na * nb,
                          0.0);
  if (!dims.factored()) {
    for (int s = 0; s < dims.num_states(); ++s)
      for (int a = 0; a < na; ++a) {
        const double v = k1.Expect(h, s, a, next);
        for (int b = 0; b < nb; ++b)
          out[(static_cast<std::size_t>(s) * na + a) * nb + b] = v;
      }
    return out;
  }

  const int n1 = dims.num_states1;
  const int n2 = dims.num_states2;
  // Contract over s2' first: inner[s1'][s2][b].
  std::vector<double> inner(static_cast<std::size_t>(n1) * n2 * nb, 0.0);
  for (int next1 = 0; next1 < n1; ++next1)
    for (int s2 = 0; s2 < n2; ++s2)
      for (int b = 0; b < nb; ++b) {
        auto row = k2->Row(h, s2, b);
        double total = 0.0;
        for (int next2 = 0; next2 < n2; ++next2)
          total += row[next2] * next[dims.JointState(next1, next2)];
        inner[(static_cast<std::size_t>(next1) * n2 + s2) * nb + b] = total;
      }
  // Then over s1'.
  for (int s1 = 0; s1 < n1; ++s1)
    for (int a = 0; a < na; ++a) {
      auto row = k1.Row(h, s1, a);
      for (int s2 = 0; s2 < n2; ++s2)
        for (int b = 0; b < nb; ++b) {
          double total = 0.0;
          for (int next1 = 0; next1 < n1; ++next1)
            total += row[next1] *
                     inner[(static_cast<std::size_t>(next1) * n2 + s2) * nb + b];
          const int s = dims.JointState(s1, s2);
          out[(static_cast<std::size_t>(s) * na + a) * nb + b] = total;
        }
    }
  return out;
}

std::int64_t MinCount(const EmpiricalModel& model) {
  const GameDims& dims = model.dims();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (int h = 0; h < dims.horizon; ++h)
    for (int s = 0; s < dims.num_states(); ++s)
      for (int a = 0; a < dims.num_actions_a; ++a)
        for (int b = 0; b < dims.num_actions_b; ++b)
          best = std::min(best, model.CountSab(h, s, a, b));
  return best;
}

}  // namespace

AgentRole RoleFor(const GameDims& dims, Player player) {
  if (dims.factored()) {
    return player == Player::kMax ? AgentRole::kP1Factored
                                  : AgentRole::kP2Factored;
  }
  return player == Player::kMax ? AgentRole::kP1SingleController
                                : AgentRole::kP2SingleController;
}

Player PlayerOf(AgentRole role) {
  return role == AgentRole::kP1Factored ||
                 role == AgentRole::kP1SingleController
             ? Player::kMax
             : Player::kMin;
}

double AlgorithmConfig::Eta(const GameDims& dims) const {
  const double K = estimation.num_episodes;
  const double H = dims.horizon;
  return eta_scale * std::sqrt(std::log(dims.num_actions_a) / (K * H * H));
}

double AlgorithmConfig::Gamma(const GameDims& dims) const {
  const double K = estimation.num_episodes;
  const double H = dims.horizon;
  const double log_b = std::log(dims.num_actions_b);
  if (dims.factored()) return gamma_scale * std::sqrt(log_b / (K * H * H));
  return gamma_scale * std::sqrt(dims.num_states() * log_b / K);
}

void AlgorithmConfig::Validate() const {
  estimation.Validate();
  if (!(eta_scale > 0.0) || !(gamma_scale > 0.0) || !std::isfinite(eta_scale) ||
      !std::isfinite(gamma_scale)) {
    throw std::invalid_argument("step-size scales must be finite and > 0");
  }
}

OptimisticEval OptimisticBackup(const EmpiricalModel& model,
                                const Policy& mu_prev, const Policy& nu_prev,
                                BonusSign sign) {
  const GameDims& dims = model.dims();
  if (!mu_prev.Matches(dims, Player::kMax) ||
      !nu_prev.Matches(dims, Player::kMin)) {
    throw IndexMismatchError("OptimisticBackup: policy shape does not match");
  }
  const int na = dims.num_actions_a;
  const int nb = dims.num_actions_b;
  const double direction = static_cast<int>(sign);
  // Bonuses start at zero, before any trajectory has been observed.
  const bool bonus_on = model.episodes() > 0;

  const TransitionKernel k1 = model.EmpiricalKernel(Player::kMax);
  std::optional<TransitionKernel> k2;
  if (dims.factored()) k2 = model.EmpiricalKernel(Player::kMin);

  OptimisticEval eval{ValueTable(dims), sign, 0.0};
  ValueTable& table = eval.table;
  for (int h = dims.horizon - 1; h >= 0; --h) {
    const double cap = dims.horizon - h;
    const auto predicted =
        PredictNext(dims, k1, k2 ? &*k2 : nullptr, h, table.VStep(h + 1));
    for (int s = 0; s < dims.num_states(); ++s) {
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
          double bonus = 0.0;
          if (bonus_on) {
            bonus = model.RewardBonus(h, s, a, b) +
                    model.TransitionBonus(h, s, a, b);
            eval.max_bonus = std::max(eval.max_bonus, bonus);
          }
          const double raw =
              model.EmpiricalReward(h, s, a, b) +
              predicted[(static_cast<std::size_t>(s) * na + a) * nb + b] +
              direction * bonus;
          table.Q(h, s, a, b) = std::max(std::min(raw, cap), 0.0);
        }
      std::span<const double> block(&table.q[table.QIndex(h, s, 0, 0)],
                                    static_cast<std::size_t>(na) * nb);
      table.V(h, s) =
          Bilinear(mu_prev.At(h, dims.PolicyState(Player::kMax, s)), block,
                   nu_prev.At(h, dims.PolicyState(Player::kMin, s)));
    }
  }
  return eval;
}

MirrorDirection AscentDirectionSc(const OptimisticEval& eval,
                                  const Policy& nu_prev) {
  const GameDims& dims = eval.table.dims;
  if (!nu_prev.Matches(dims, Player::kMin)) {
    throw IndexMismatchError("AscentDirectionSc: opponent policy shape");
  }
  MirrorDirection out(dims.horizon, dims.num_states(), dims.num_actions_a);
  for (int h = 0; h < dims.horizon; ++h)
    for (int s = 0; s < dims.num_states(); ++s) {
      auto nu = nu_prev.At(h, s);
      auto dir = out.MutableAt(h, s);
      for (int a = 0; a < dims.num_actions_a; ++a) {
        double total = 0.0;
        for (int b = 0; b < dims.num_actions_b; ++b)
          total += eval.table.Q(h, s, a, b) * nu[b];
        dir[a] = total;
      }
    }
  return out;
}

MirrorDirection AscentDirectionFactored(const OptimisticEval& eval,
                                        const Policy& nu_prev,
                                        const ReachingDistribution& d2) {
  const GameDims& dims = eval.table.dims;
  if (!dims.factored() || !nu_prev.Matches(dims, Player::kMin) ||
      d2.num_states != dims.num_states2 || d2.horizon != dims.horizon) {
    throw IndexMismatchError("AscentDirectionFactored: shape mismatch");
  }
  MirrorDirection out(dims.horizon, dims.num_states1, dims.num_actions_a);
  for (int h = 0; h < dims.horizon; ++h) {
    auto weight = d2.At(h);
    for (int s1 = 0; s1 < dims.num_states1; ++s1) {
      auto dir = out.MutableAt(h, s1);
      for (int s2 = 0; s2 < dims.num_states2; ++s2) {
        if (weight[s2] == 0.0) continue;
        auto nu = nu_prev.At(h, s2);
        const int s = dims.JointState(s1, s2);
        for (int a = 0; a < dims.num_actions_a; ++a) {
          double inner = 0.0;
          for (int b = 0; b < dims.num_actions_b; ++b)
            inner += eval.table.Q(h, s, a, b) * nu[b];
          dir[a] += weight[s2] * inner;
        }
      }
    }
  }
  return out;
}

MirrorDirection DescentDirectionFactored(const OptimisticEval& eval,
                                         const Policy& mu_prev,
                                         const ReachingDistribution& d1) {
  const GameDims& dims = eval.table.dims;
  if (!dims.factored() || !mu_prev.Matches(dims, Player::kMax) ||
      d1.num_states != dims.num_states1 || d1.horizon != dims.horizon) {
    throw IndexMismatchError("DescentDirectionFactored: shape mismatch");
  }
  MirrorDirection out(dims.horizon, dims.num_states2, dims.num_actions_b);
  for (int h = 0; h < dims.horizon; ++h) {
    auto weight = d1.At(h);
    for (int s2 = 0; s2 < dims.num_states2; ++s2) {
      auto dir = out.MutableAt(h, s2);
      for (int s1 = 0; s1 < dims.num_states1; ++s1) {
        if (weight[s1] == 0.0) continue;
        auto mu = mu_prev.At(h, s1);
        const int s = dims.JointState(s1, s2);
        for (int b = 0; b < dims.num_actions_b; ++b) {
          double inner = 0.0;
          for (int a = 0; a < dims.num_actions_a; ++a)
            inner += eval.table.Q(h, s, a, b) * mu[a];
          dir[b] += weight[s1] * inner;
        }
      }
    }
  }
  return out;
}

MirrorDirection DescentDirectionSc(const GameDims& dims,
                                   std::span<const double> rtilde,
                                   const Policy& mu_prev,
                                   const ReachingDistribution& d) {
  const std::size_t expected = static_cast<std::size_t>(dims.horizon) *
                               dims.num_states() * dims.num_actions_a *
                               dims.num_actions_b;
  if (dims.factored() || rtilde.size() != expected ||
      !mu_prev.Matches(dims, Player::kMax) ||
      d.num_states != dims.num_states() || d.horizon != dims.horizon) {
    throw IndexMismatchError("DescentDirectionSc: shape mismatch");
  }
  const int na = dims.num_actions_a;
  const int nb = dims.num_actions_b;
  MirrorDirection out(dims.horizon, dims.num_states(), nb);
  for (int h = 0; h < dims.horizon; ++h)
    for (int s = 0; s < dims.num_states(); ++s) {
      const double weight = d.At(h)[s];
      if (weight == 0.0) continue;
      auto mu = mu_prev.At(h, s);
      auto dir = out.MutableAt(h, s);
      const std::size_t base =
          (static_cast<std::size_t>(h) * dims.num_states() + s) * na * nb;
      for (int b = 0; b < nb; ++b) {
        double total = 0.0;
        for (int a = 0; a < na; ++a)
          total += mu[a] * rtilde[base + static_cast<std::size_t>(a) * nb + b];
        dir[b] = weight * total;
      }
    }
  return out;
}

std::vector<double> OptimisticRewardTable(const EmpiricalModel& model) {
  const GameDims& dims = model.dims();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(dims.horizon) * dims.num_states() *
              dims.num_actions_a * dims.num_actions_b);
  for (int h = 0; h < dims.horizon; ++h)
    for (int s = 0; s < dims.num_states(); ++s)
      for (int a = 0; a < dims.num_actions_a; ++a)
        for (int b = 0; b < dims.num_actions_b; ++b)
          out.push_back(model.OptimisticReward(h, s, a, b));
  return out;
}

std::vector<double> MirrorStep(std::span<const double> prev,
                               std::span<const double> dir, double step,
                               MirrorOrientation orientation) {
  if (prev.size() != dir.size() || prev.empty()) {
    throw IndexMismatchError("MirrorStep: size mismatch");
  }
  for (double p : prev) {
    if (!(p > 0.0)) {
      throw DegenerateDistributionError(
          "MirrorStep: previous distribution has a zero entry");
    }
  }
  const double signed_step =
      orientation == MirrorOrientation::kAscent ? step : -step;
  // Work with logits shifted by their maximum so exp() cannot overflow.
  std::vector<double> out(prev.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < prev.size(); ++i) {
    out[i] = std::log(prev[i]) + signed_step * dir[i];
    top = std::max(top, out[i]);
  }
  double normalizer = 0.0;
  for (double& x : out) {
    x = std::exp(x - top);
    normalizer += x;
  }
  bool floored = false;
  for (double& x : out) {
    x /= normalizer;
    if (x < kProbabilityFloor) {
      x = kProbabilityFloor;
      floored = true;
    }
  }
  if (floored) {
    double total = 0.0;
    for (double x : out) total += x;
    for (double& x : out) x /= total;
  }
  return out;
}

Policy ApplyMirrorStep(const Policy& prev, const MirrorDirection& direction,
                       double step, MirrorOrientation orientation) {
  if (prev.horizon() != direction.horizon ||
      prev.num_states() != direction.num_states ||
      prev.num_actions() != direction.num_actions) {
    throw IndexMismatchError("ApplyMirrorStep: direction shape mismatch");
  }
  Policy next = prev;
  for (int h = 0; h < prev.horizon(); ++h)
    for (int s = 0; s < prev.num_states(); ++s) {
      auto updated = MirrorStep(prev.At(h, s), direction.At(h, s), step,
                                orientation);
      std::copy(updated.begin(), updated.end(), next.MutableAt(h, s).begin());
    }
  return next;
}

EpisodeUpdateResult EpisodeUpdate(AgentRole role, const EmpiricalModel& model,
                                  const Policy& opponent_prev,
                                  const Policy& own_prev,
                                  const AlgorithmConfig& config) {
  const GameDims& dims = model.dims();
  const Player me = PlayerOf(role);
  if (RoleFor(dims, me) != role) {
    throw IndexMismatchError("EpisodeUpdate: role does not match game kind");
  }
  const Policy& mu_prev = me == Player::kMax ? own_prev : opponent_prev;
  const Policy& nu_prev = me == Player::kMax ? opponent_prev : own_prev;

  EpisodeUpdateResult result;
  result.diagnostics.min_count = MinCount(model);

  switch (role) {
    case AgentRole::kP1Factored: {
      auto eval = OptimisticBackup(model, mu_prev, nu_prev, BonusSign::kAdd);
      const auto d2 = EmpiricalReaching(model, Player::kMin, nu_prev);
      const auto dir = AscentDirectionFactored(eval, nu_prev, d2);
      result.next = ApplyMirrorStep(own_prev, dir, config.Eta(dims),
                                    MirrorOrientation::kAscent);
      result.diagnostics.max_bonus = eval.max_bonus;
      result.diagnostics.eval = std::move(eval);
      break;
    }
    case AgentRole::kP2Factored: {
      auto eval =
          OptimisticBackup(model, mu_prev, nu_prev, BonusSign::kSubtract);
      const auto d1 = EmpiricalReaching(model, Player::kMax, mu_prev);
      const auto dir = DescentDirectionFactored(eval, mu_prev, d1);
      result.next = ApplyMirrorStep(own_prev, dir, config.Gamma(dims),
                                    MirrorOrientation::kDescent);
      result.diagnostics.max_bonus = eval.max_bonus;
      result.diagnostics.eval = std::move(eval);
      break;
    }
    case AgentRole::kP1SingleController: {
      auto eval = OptimisticBackup(model, mu_prev, nu_prev, BonusSign::kAdd);
      const auto dir = AscentDirectionSc(eval, nu_prev);
      result.next = ApplyMirrorStep(own_prev, dir, config.Eta(dims),
                                    MirrorOrientation::kAscent);
      result.diagnostics.max_bonus = eval.max_bonus;
      result.diagnostics.eval = std::move(eval);
      break;
    }
    case AgentRole::kP2SingleController: {
      // Reward estimates only; no transition bonus enters this learner.
      const auto rtilde = OptimisticRewardTable(model);
      const auto d = EmpiricalReaching(model, Player::kMax, mu_prev);
      const auto dir = DescentDirectionSc(dims, rtilde, mu_prev, d);
      result.next = ApplyMirrorStep(own_prev, dir, config.Gamma(dims),
                                    MirrorOrientation::kDescent);
      if (model.episodes() > 0) {
        for (int h = 0; h < dims.horizon; ++h)
          for (int s = 0; s < dims.num_states(); ++s)
            for (int a = 0; a < dims.num_actions_a; ++a)
              for (int b = 0; b < dims.num_actions_b; ++b)
                result.diagnostics.max_bonus =
                    std::max(result.diagnostics.max_bonus,
                             model.RewardBonus(h, s, a, b));
      }
      break;
    }
  }
  return result;
}

}  // namespace mgpo
