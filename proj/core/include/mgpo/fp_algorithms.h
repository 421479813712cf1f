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

#ifndef MGPO_FP_ALGORITHMS_H_
#define MGPO_FP_ALGORITHMS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mgpo/estimation.h"
#include "mgpo/exact_dp.h"
#include "mgpo/game.h"

namespace mgpo {

// The four per-episode learners. P1 maximizes, P2 minimizes.
enum class AgentRole {
  kP1Factored,
  kP2Factored,
  kP1SingleController,
  kP2SingleController,
};

AgentRole RoleFor(const GameDims& dims, Player player);
Player PlayerOf(AgentRole role);

// Step sizes and bonus settings shared by both learners of a run.
struct AlgorithmConfig {
  EstimationConfig estimation;
  double eta_scale = 1.0;
  double gamma_scale = 1.0;

  // eta = eta_scale * sqrt(log|A| / (K H^2)).
  double Eta(const GameDims& dims) const;
  // Factored: gamma_scale * sqrt(log|B| / (K H^2)).
  // Single-controller: gamma_scale * sqrt(|S| log|B| / K).
  double Gamma(const GameDims& dims) const;

  void Validate() const;
};

enum class BonusSign : int { kAdd = 1, kSubtract = -1 };

// Q-bar / V-bar (bonus added) or Q-underbar / V-underbar (bonus subtracted)
// over joint states. Every Q entry lies in [0, H - h] for 0-based h.
struct OptimisticEval {
  ValueTable table;
  BonusSign sign = BonusSign::kAdd;
  double max_bonus = 0.0;
};

// Backward sweep
//   Q_h = clip(r_hat + P_hat V_{h+1} + sign * (beta_r + beta_P), 0, H - h)
//   V_h(s) = mu_h(.|s)^T Q_h(s,.,.) nu_h(.|s)
// with the estimates of `model`. Bonuses are zero before the first episode
// has been absorbed. Factored games contract the product kernel one factor
// at a time.
OptimisticEval OptimisticBackup(const EmpiricalModel& model,
                                const Policy& mu_prev, const Policy& nu_prev,
                                BonusSign sign);

// Weights over (h, own state, own action) for one mirror step.
struct MirrorDirection {
  int horizon = 0;
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> dir;

  MirrorDirection(int horizon_steps, int states, int actions)
      : horizon(horizon_steps),
        num_states(states),
        num_actions(actions),
        dir(static_cast<std::size_t>(horizon_steps) * states * actions, 0.0) {}

  std::span<const double> At(int h, int s) const {
    return {dir.data() + Offset(h, s), static_cast<std::size_t>(num_actions)};
  }
  std::span<double> MutableAt(int h, int s) {
    return {dir.data() + Offset(h, s), static_cast<std::size_t>(num_actions)};
  }

 private:
  std::size_t Offset(int h, int s) const {
    return (static_cast<std::size_t>(h) * num_states + s) * num_actions;
  }
};

// dir_h(s, a) = sum_b Q-bar_h(s, a, b) nu_h(b | s).
MirrorDirection AscentDirectionSc(const OptimisticEval& eval,
                                  const Policy& nu_prev);

// dir_h(s1, a) = sum_{s2} d2_h(s2) sum_b nu_h(b | s2) Q-bar_h((s1, s2), a, b).
MirrorDirection AscentDirectionFactored(const OptimisticEval& eval,
                                        const Policy& nu_prev,
                                        const ReachingDistribution& d2);

// dir_h(s2, b) = sum_{s1} d1_h(s1) sum_a mu_h(a | s1) Q-under_h((s1, s2), a, b).
MirrorDirection DescentDirectionFactored(const OptimisticEval& eval,
                                         const Policy& mu_prev,
                                         const ReachingDistribution& d1);

// dir_h(s, b) = d_h(s) sum_a mu_h(a | s) r-tilde_h(s, a, b).
// `rtilde` has the [h][s][a][b] layout of the reward tensor.
MirrorDirection DescentDirectionSc(const GameDims& dims,
                                   std::span<const double> rtilde,
                                   const Policy& mu_prev,
                                   const ReachingDistribution& d);

// r-tilde for every (h, s, a, b) of a single-controller model.
std::vector<double> OptimisticRewardTable(const EmpiricalModel& model);

enum class MirrorOrientation { kAscent, kDescent };

// Closed-form KL-proximal step:
//   next(a) = prev(a) exp(+/- step * dir(a)) / normalizer.
// Throws DegenerateDistributionError if prev has a nonpositive entry. The
// output is floored at the smallest normal double so it stays strictly
// positive even when a probability underflows.
std::vector<double> MirrorStep(std::span<const double> prev,
                               std::span<const double> dir, double step,
                               MirrorOrientation orientation);

// MirrorStep applied at every (h, state) of a policy.
Policy ApplyMirrorStep(const Policy& prev, const MirrorDirection& direction,
                       double step, MirrorOrientation orientation);

struct UpdateDiagnostics {
  // Largest bonus applied anywhere in this update (beta_r + beta_P for the
  // Q-backup roles, beta_r for single-controller P2).
  double max_bonus = 0.0;
  // Smallest N_h(s, a, b) in the model.
  std::int64_t min_count = 0;
  // The optimistic evaluation, for the roles that compute one.
  std::optional<OptimisticEval> eval;
};

struct EpisodeUpdateResult {
  Policy next;
  UpdateDiagnostics diagnostics;
};

// One policy-evaluation plus policy-improvement round:
//   P1 factored:  backup(+) -> d of nu under P2-hat -> ascent -> step(eta)
//   P2 factored:  backup(-) -> d of mu under P1-hat -> descent -> step(gamma)
//   P1 single:    backup(+) -> ascent -> step(eta)
//   P2 single:    r-tilde -> d of mu under P-hat -> descent -> step(gamma)
// `model` must reflect episodes 1..k-1 and the policies are the k-1 ones.
EpisodeUpdateResult EpisodeUpdate(AgentRole role, const EmpiricalModel& model,
                                  const Policy& opponent_prev,
                                  const Policy& own_prev,
                                  const AlgorithmConfig& config);

}  // namespace mgpo

#endif  // MGPO_FP_ALGORITHMS_H_
