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

#ifndef MGPO_METRICS_H_
#define MGPO_METRICS_H_

#include <span>
#include <vector>

#include "mgpo/estimation.h"
#include "mgpo/exact_dp.h"
#include "mgpo/fp_algorithms.h"
#include "mgpo/game.h"

namespace mgpo {

// Threshold above which a prediction error counts as a violation.
inline constexpr double kOptimismTolerance = 1e-9;

struct RegretSummary {
  double regret1 = 0.0;
  double regret2 = 0.0;
  // Always regret1 + regret2.
  double gap = 0.0;
};

struct AuditResult {
  int violations = 0;
  // Largest prediction error seen (may be negative when none is positive).
  double max_error = 0.0;
};

// Prediction error sign * (r + P V_{h+1} - Q_h) over all (h, s, a, b) with
// the true reward and kernel and the eval's own V. Nonpositive everywhere
// when the bonuses cover the estimation error.
AuditResult OptimismAudit(const ZeroSumGame& game, const OptimisticEval& eval);

// r-tilde - r over all cells; nonpositive when the reward bonus covers the
// reward estimation error.
AuditResult RewardOptimismAudit(const ZeroSumGame& game,
                                const EmpiricalModel& model);

// Exact per-episode values and the policy history needed for regret.
// The game must outlive the ledger.
class RegretLedger {
 public:
  explicit RegretLedger(const ZeroSumGame& game);

  // Appends V_1^{mu, nu}(s_1) and stores both policies.
  void RecordEpisode(const Policy& mu, const Policy& nu, int violations = 0);

  int episodes() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<Policy>& mu_history() const { return mus_; }
  const std::vector<Policy>& nu_history() const { return nus_; }
  const std::vector<int>& violations() const { return violations_; }

  // Regrets over the episodes recorded so far, from running sums.
  RegretSummary Partial() const;

  // Regrets recomputed from the stored policy history.
  RegretSummary Finalize() const;

 private:
  const ZeroSumGame* game_;
  HindsightAccumulator best_p1_;
  HindsightAccumulator best_p2_;
  double value_sum_ = 0.0;
  std::vector<double> values_;
  std::vector<Policy> mus_;
  std::vector<Policy> nus_;
  std::vector<int> violations_;
};

}  // namespace mgpo

#endif  // MGPO_METRICS_H_
