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

#include "mgpo/reaching.h"

namespace mgpo {

ReachingDistribution EmpiricalReaching(const TransitionKernel& estimated,
                                       const Policy& policy,
                                       int initial_state) {
  estimated.Validate("estimated kernel");
  return ExactReaching(estimated, policy, initial_state);
}

ReachingDistribution EmpiricalReaching(const EmpiricalModel& model,
                                       Player player, const Policy& policy) {
  const int init = model.dims().PolicyState(player, model.initial_state());
  return ExactReaching(model.EmpiricalKernel(player), policy, init);
}

}  // namespace mgpo
