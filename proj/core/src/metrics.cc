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

#include "mgpo/metrics.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mgpo {

AuditResult OptimismAudit(const ZeroSumGame& game, const OptimisticEval& eval) {
  const GameDims& dims = game.dims();
  if (!(eval.table.dims == dims)) {
    throw IndexMismatchError("OptimismAudit: evaluation does not match game");
  }
  const double sign = static_cast<int>(eval.sign);
  AuditResult result;
  result.max_error = -std::numeric_limits<double>::infinity();
  for (int h = 0; h < dims.horizon; ++h) {
    auto next = eval.table.VStep(h + 1);
    for (int s = 0; s < dims.num_states(); ++s)
      for (int a = 0; a < dims.num_actions_a; ++a)
        for (int b = 0; b < dims.num_actions_b; ++b) {
          const double error = sign * (game.reward(h, s, a, b) +
                                       game.ExpectNext(h, s, a, b, next) -
                                       eval.table.Q(h, s, a, b));
          result.max_error = std::max(result.max_error, error);
          if (error > kOptimismTolerance) ++result.violations;
        }
  }
  return result;
}

AuditResult RewardOptimismAudit(const ZeroSumGame& game,
                                const EmpiricalModel& model) {
  const GameDims& dims = game.dims();
  if (!(model.dims() == dims)) {
    throw IndexMismatchError("RewardOptimismAudit: model does not match game");
  }
  AuditResult result;
  result.max_error = -std::numeric_limits<double>::infinity();
  for (int h = 0; h < dims.horizon; ++h)
    for (int s = 0; s < dims.num_states(); ++s)
      for (int a = 0; a < dims.num_actions_a; ++a)
        for (int b = 0; b < dims.num_actions_b; ++b) {
          const double error =
              model.OptimisticReward(h, s, a, b) - game.reward(h, s, a, b);
          result.max_error = std::max(result.max_error, error);
          if (error > kOptimismTolerance) ++result.violations;
        }
  return result;
}

RegretLedger::RegretLedger(const ZeroSumGame& game)
    : game_(&game),
      best_p1_(game, Player::kMax),
      best_p2_(game, Player::kMin) {}

void RegretLedger::RecordEpisode(const Policy& mu, const Policy& nu,
                                 int violations) {
  const auto table = EvaluatePair(*game_, mu, nu);
  const double value = table.V(0, game_->initial_state());
  values_.push_back(value);
  value_sum_ += value;
  best_p1_.Add(nu);
  best_p2_.Add(mu);
  mus_.push_back(mu);
  nus_.push_back(nu);
  violations_.push_back(violations);
}

RegretSummary RegretLedger::Partial() const {
  if (values_.empty()) throw std::logic_error("RegretLedger: no episodes");
  RegretSummary out;
  out.regret1 = best_p1_.Solve().total_value - value_sum_;
  out.regret2 = value_sum_ - best_p2_.Solve().total_value;
  out.gap = out.regret1 + out.regret2;
  return out;
}

RegretSummary RegretLedger::Finalize() const {
  if (values_.empty()) throw std::logic_error("RegretLedger: no episodes");
  double played = 0.0;
  for (std::size_t k = 0; k < mus_.size(); ++k) {
    played += EvaluatePair(*game_, mus_[k], nus_[k]).V(0, game_->initial_state());
  }
  RegretSummary out;
  out.regret1 = HindsightBestP1(*game_, nus_).total_value - played;
  out.regret2 = played - HindsightBestP2(*game_, mus_).total_value;
  out.gap = out.regret1 + out.regret2;
  return out;
}

}  // namespace mgpo
