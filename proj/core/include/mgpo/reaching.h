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

#ifndef MGPO_REACHING_H_
#define MGPO_REACHING_H_

#include "mgpo/estimation.h"
#include "mgpo/exact_dp.h"
#include "mgpo/game.h"

namespace mgpo {

// Reaching probabilities of `policy` under an estimated kernel. Rows must be
// distributions (unvisited rows of an EmpiricalModel are uniform), so every
// d_h sums to one.
ReachingDistribution EmpiricalReaching(const TransitionKernel& estimated,
                                       const Policy& policy,
                                       int initial_state);

// Same, using the estimated kernel `player` controls in `model`: P-hat for
// single-controller player 1, P1-hat or P2-hat for factored games. The
// initial state is the model's, projected onto that player's component.
ReachingDistribution EmpiricalReaching(const EmpiricalModel& model,
                                       Player player, const Policy& policy);

}  // namespace mgpo

#endif  // MGPO_REACHING_H_
