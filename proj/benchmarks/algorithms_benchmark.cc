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

#include <benchmark/benchmark.h>

#include "mgpo/chain_env.h"
#include "mgpo/exact_dp.h"
#include "mgpo/fp_algorithms.h"
#include "mgpo/sampler.h"

namespace {

mgpo::AlgorithmConfig ChainConfig() {
  mgpo::AlgorithmConfig config;
  config.estimation.num_episodes = 10000;
  config.estimation.delta = 0.01;
  config.estimation.reward_bonus_scale = 0.01;
  config.estimation.transition_bonus_scale = 0.01;
  config.eta_scale = 50.0;
  config.gamma_scale = 50.0;
  return config;
}

void BM_EvaluatePair(benchmark::State& state) {
  const auto game = mgpo::BuildChainEnv();
  const auto mu = mgpo::ChainOptimalMu();
  const auto nu = mgpo::ChainOptimalNu();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mgpo::EvaluatePair(game, mu, nu));
  }
}
BENCHMARK(BM_EvaluatePair);

void BM_EpisodeUpdate(benchmark::State& state) {
  const auto game = mgpo::BuildChainEnv();
  const auto config = ChainConfig();
  const auto role = static_cast<mgpo::AgentRole>(state.range(0));
  mgpo::EmpiricalModel model(game.dims(), game.initial_state(),
                             config.estimation);
  auto mu = mgpo::Policy::Uniform(game.dims(), mgpo::Player::kMax);
  auto nu = mgpo::Policy::Uniform(game.dims(), mgpo::Player::kMin);
  mgpo::Rng rng(1);
  for (int k = 0; k < 50; ++k) model.Update(mgpo::SampleEpisode(game, mu, nu, rng));
  const bool p1 = mgpo::PlayerOf(role) == mgpo::Player::kMax;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mgpo::EpisodeUpdate(
        role, model, p1 ? nu : mu, p1 ? mu : nu, config));
  }
}
BENCHMARK(BM_EpisodeUpdate)
    ->Arg(static_cast<int>(mgpo::AgentRole::kP1SingleController))
    ->Arg(static_cast<int>(mgpo::AgentRole::kP2SingleController));

void BM_HindsightBestP1(benchmark::State& state) {
  const auto game = mgpo::BuildChainEnv();
  std::vector<mgpo::Policy> history(state.range(0), mgpo::ChainOptimalNu());
  for (auto _ : state) {
    benchmark::DoNotOptimize(mgpo::HindsightBestP1(game, history));
  }
}
BENCHMARK(BM_HindsightBestP1)->Arg(100)->Arg(1000);

}  // namespace
BENCHMARK_MAIN();
