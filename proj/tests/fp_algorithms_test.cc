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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "mgpo/chain_env.h"
#include "mgpo/fp_algorithms.h"
#include "mgpo/random_games.h"
#include "mgpo/reaching.h"
#include "test_util.h"

namespace mgpo {
namespace {

AlgorithmConfig ChainConfig() {
  AlgorithmConfig config;
  config.estimation.num_episodes = 10000;
  config.estimation.delta = 0.01;
  config.estimation.reward_bonus_scale = 0.01;
  config.estimation.transition_bonus_scale = 0.01;
  config.eta_scale = 50;
  config.gamma_scale = 50;
  return config;
}

ZeroSumGame FactoredGame(int seed) {
  Rng rng(seed);
  RandomGameOptions options;
  options.kind = TransitionKind::kFactored;
  options.num_states1 = 2;
  options.num_states2 = 2;
  return RandomGame(options, rng);
}

// Hand-built eval for direction tests: every Q entry set by `fill`.
OptimisticEval EvalWith(const GameDims& dims,
                        const std::function<double(int, int, int, int)>& fill) {
  OptimisticEval eval{ValueTable(dims), BonusSign::kAdd, 0.0};
  for (int h = 0; h < dims.horizon; ++h)
    for (int s = 0; s < dims.num_states(); ++s)
      for (int a = 0; a < dims.num_actions_a; ++a)
        for (int b = 0; b < dims.num_actions_b; ++b)
          eval.table.Q(h, s, a, b) = fill(h, s, a, b);
  return eval;
}

TEST(StepSizeTest, Formulas) {
  const auto dims = BuildChainEnv().dims();
  AlgorithmConfig config;
  config.estimation.num_episodes = 10000;
  EXPECT_NEAR(config.Eta(dims), std::sqrt(std::log(2.0) / (1e4 * 49)), 1e-15);
  EXPECT_NEAR(config.Gamma(dims), std::sqrt(7 * std::log(2.0) / 1e4), 1e-15);
  config.gamma_scale = 50;
  EXPECT_NEAR(config.Gamma(dims), 50 * std::sqrt(7 * std::log(2.0) / 1e4), 1e-13);
  const auto fdims = FactoredGame(0).dims();
  EXPECT_NEAR(config.Gamma(fdims),
              50 * std::sqrt(std::log(2.0) / (1e4 * 9)), 1e-13);
}

TEST(OptimisticBackupTest, FirstEpisodeIsAllZero) {
  const auto game = BuildChainEnv();
  EmpiricalModel model(game.dims(), 0, ChainConfig().estimation);
  const auto eval = OptimisticBackup(model, Policy::Uniform(game.dims(), Player::kMax),
                                     Policy::Uniform(game.dims(), Player::kMin),
                                     BonusSign::kAdd);
  for (double q : eval.table.q) EXPECT_EQ(q, 0.0);
  EXPECT_EQ(eval.max_bonus, 0.0);
}

TEST(OptimisticBackupTest, UpperClipAtRemainingSteps) {
  const auto game = BuildChainEnv();
  EstimationConfig config;
  config.num_episodes = 10000;
  EmpiricalModel model(game.dims(), 0, config);
  Rng rng(1);
  model.Update(SampleEpisode(game, ChainOptimalMu(), ChainOptimalNu(), rng));
  const auto eval = OptimisticBackup(model, Policy::Uniform(game.dims(), Player::kMax),
                                     Policy::Uniform(game.dims(), Player::kMin),
                                     BonusSign::kAdd);
  // Unscaled bonuses exceed the horizon, so each entry sits at its cap.
  for (int h = 0; h < 7; ++h) EXPECT_EQ(eval.table.Q(h, 3, 1, 0), 7.0 - h);
  EXPECT_GT(eval.max_bonus, 100.0);
}

TEST(OptimisticBackupTest, LowerClipAtZero) {
  const auto game = BuildChainEnv();
  EstimationConfig config;
  config.num_episodes = 10000;
  EmpiricalModel model(game.dims(), 0, config);
  Rng rng(1);
  model.Update(SampleEpisode(game, ChainOptimalMu(), ChainOptimalNu(), rng));
  const auto eval = OptimisticBackup(model, Policy::Uniform(game.dims(), Player::kMax),
                                     Policy::Uniform(game.dims(), Player::kMin),
                                     BonusSign::kSubtract);
  for (double q : eval.table.q) EXPECT_EQ(q, 0.0);
}

TEST(OptimisticBackupTest, ZeroBonusMatchesPlugInEvaluation) {
  const auto game = FactoredGame(3);
  EstimationConfig config;
  config.num_episodes = 100;
  config.reward_bonus_scale = 0;
  config.transition_bonus_scale = 0;
  EmpiricalModel model(game.dims(), game.initial_state(), config);
  Rng rng(4);
  const auto mu = testing::RandomPolicy(game.dims(), Player::kMax, rng);
  const auto nu = testing::RandomPolicy(game.dims(), Player::kMin, rng);
  for (int k = 0; k < 30; ++k) model.Update(SampleEpisode(game, mu, nu, rng));
  const auto eval = OptimisticBackup(model, mu, nu, BonusSign::kAdd);
  // Rebuild the plug-in game and evaluate it exactly.
  GameDescription desc;
  desc.horizon = game.horizon();
  desc.num_actions_a = 2;
  desc.num_actions_b = 2;
  for (int h = 0; h < game.horizon(); ++h)
    for (int s = 0; s < 4; ++s)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) desc.reward.push_back(model.EmpiricalReward(h, s, a, b));
  desc.transition = FactoredTransition{model.EmpiricalKernel(Player::kMax),
                                       model.EmpiricalKernel(Player::kMin)};
  desc.initial_state = game.initial_state();
  desc.reward_noise = 0;
  const auto plug_in = EvaluatePair(ZeroSumGame::Build(desc), mu, nu);
  for (std::size_t i = 0; i < plug_in.q.size(); ++i)
    EXPECT_NEAR(eval.table.q[i], plug_in.q[i], 1e-12);
}

TEST(DirectionTest, AscentScAverages) {
  GameDims dims{TransitionKind::kSingleController, 1, 1, 1, 2, 2};
  const auto eval = EvalWith(dims, [](int, int, int a, int b) {
    return a == 0 ? (b == 0 ? 2.0 : 4.0) : 1.5;
  });
  const auto dir = AscentDirectionSc(eval, Policy::Uniform(dims, Player::kMin));
  EXPECT_DOUBLE_EQ(dir.At(0, 0)[0], 3.0);
  EXPECT_DOUBLE_EQ(dir.At(0, 0)[1], 1.5);
  const std::vector<int> col{1};
  const auto pick = AscentDirectionSc(eval, Policy::Deterministic(1, 1, 2, col));
  EXPECT_DOUBLE_EQ(pick.At(0, 0)[0], 4.0);
  const auto flat = AscentDirectionSc(EvalWith(dims, [](int, int, int, int) { return 0.7; }),
                                      Policy::Uniform(dims, Player::kMin));
  for (double x : flat.dir) EXPECT_DOUBLE_EQ(x, 0.7);
}

TEST(DirectionTest, AscentFactoredWeightsByReaching) {
  GameDims dims{TransitionKind::kFactored, 1, 1, 2, 2, 2};
  // Inner value at s2 = 0 is 2, at s2 = 1 is 4.
  const auto eval = EvalWith(dims, [](int, int s, int, int) { return s == 0 ? 2.0 : 4.0; });
  ReachingDistribution d2(1, 2);
  d2.MutableAt(0)[0] = 0.5;
  d2.MutableAt(0)[1] = 0.5;
  const auto dir = AscentDirectionFactored(eval, Policy::Uniform(dims, Player::kMin), d2);
  EXPECT_DOUBLE_EQ(dir.At(0, 0)[0], 3.0);

  ReachingDistribution point(1, 2);
  point.MutableAt(0)[0] = 1.0;
  const auto at_zero = AscentDirectionFactored(eval, Policy::Uniform(dims, Player::kMin), point);
  EXPECT_DOUBLE_EQ(at_zero.At(0, 0)[1], 2.0);

  const auto capped = AscentDirectionFactored(
      EvalWith(dims, [](int, int, int, int) { return 1.0; }),
      Policy::Uniform(dims, Player::kMin), d2);
  for (double x : capped.dir) EXPECT_DOUBLE_EQ(x, 1.0);
}

TEST(DirectionTest, DescentFactoredMirrorsAscent) {
  GameDims dims{TransitionKind::kFactored, 1, 2, 1, 2, 2};
  const auto eval = EvalWith(dims, [](int, int s, int, int) { return s == 0 ? 2.0 : 4.0; });
  ReachingDistribution d1(1, 2);
  d1.MutableAt(0)[0] = 0.5;
  d1.MutableAt(0)[1] = 0.5;
  const auto dir = DescentDirectionFactored(eval, Policy::Uniform(dims, Player::kMax), d1);
  EXPECT_DOUBLE_EQ(dir.At(0, 0)[0], 3.0);
  EXPECT_DOUBLE_EQ(dir.At(0, 0)[1], 3.0);

  ReachingDistribution point(1, 2);
  point.MutableAt(0)[1] = 1.0;
  const auto at_one = DescentDirectionFactored(eval, Policy::Uniform(dims, Player::kMax), point);
  EXPECT_DOUBLE_EQ(at_one.At(0, 0)[0], 4.0);
}

TEST(DirectionTest, DescentScSelectsAndFreezes) {
  GameDims dims{TransitionKind::kSingleController, 1, 2, 1, 2, 2};
  std::vector<double> rtilde(2 * 2 * 2, 0.0);
  rtilde[0] = 0.8;  // s = 0, a = 0, b = 0
  rtilde[1] = 0.2;  // s = 0, a = 0, b = 1
  rtilde[6] = 0.5;  // s = 1, a = 1, b = 0
  ReachingDistribution d(1, 2);
  d.MutableAt(0)[0] = 1.0;
  const std::vector<int> rows{0, 1};
  const auto dir = DescentDirectionSc(dims, rtilde, Policy::Deterministic(1, 2, 2, rows), d);
  EXPECT_DOUBLE_EQ(dir.At(0, 0)[0], 0.8);
  EXPECT_DOUBLE_EQ(dir.At(0, 0)[1], 0.2);
  // State 1 is unreachable.
  EXPECT_EQ(dir.At(0, 1)[0], 0.0);
  const std::vector<double> zero(8, 0.0);
  for (double x : DescentDirectionSc(dims, zero, Policy::Uniform(dims, Player::kMax), d).dir)
    EXPECT_EQ(x, 0.0);
}

TEST(MirrorStepTest, ClosedFormSoftmax) {
  const std::vector<double> prev{0.5, 0.5};
  const std::vector<double> dir{1.0, 0.0};
  const auto next = MirrorStep(prev, dir, 1.0, MirrorOrientation::kAscent);
  EXPECT_NEAR(next[0], 0.731059, 1e-6);
  EXPECT_NEAR(next[1], 0.268941, 1e-6);
  const auto down = MirrorStep(prev, dir, 1.0, MirrorOrientation::kDescent);
  EXPECT_NEAR(down[0], 0.268941, 1e-6);
}

TEST(MirrorStepTest, IdentityAndShiftInvariance) {
  const std::vector<double> prev{0.2, 0.3, 0.5};
  const std::vector<double> dir{3.0, -1.0, 2.0};
  const auto same = MirrorStep(prev, dir, 0.0, MirrorOrientation::kAscent);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(same[i], prev[i], 1e-15);
  const std::vector<double> flat{4.0, 4.0, 4.0};
  const auto shifted = MirrorStep(prev, flat, 2.5, MirrorOrientation::kDescent);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(shifted[i], prev[i], 1e-15);
}

TEST(MirrorStepTest, ZeroEntryRejected) {
  const std::vector<double> prev{1.0, 0.0};
  const std::vector<double> dir{1.0, 0.0};
  EXPECT_THROW(MirrorStep(prev, dir, 1.0, MirrorOrientation::kAscent),
               DegenerateDistributionError);
}

TEST(MirrorStepTest, HugeStepStaysStrictlyPositive) {
  const std::vector<double> prev{0.5, 0.5};
  const std::vector<double> dir{1000.0, 0.0};
  const auto next = MirrorStep(prev, dir, 10.0, MirrorOrientation::kAscent);
  EXPECT_GT(next[1], 0.0);
  EXPECT_NEAR(next[0] + next[1], 1.0, 1e-12);
  // A second step from the floored distribution is still legal.
  EXPECT_NO_THROW(MirrorStep(next, dir, 10.0, MirrorOrientation::kDescent));
}

TEST(MirrorStepTest, ProxObjectiveNeverNegative) {
  Rng rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 4;
    std::vector<double> prev(n), dir(n);
    double total = 0.0;
    for (auto& p : prev) total += (p = unit(rng) + 1e-3);
    for (auto& p : prev) p /= total;
    for (auto& d : dir) d = 7.0 * unit(rng);
    const double step = 3.0 * unit(rng) + 1e-3;
    const auto orientation =
        trial % 2 ? MirrorOrientation::kAscent : MirrorOrientation::kDescent;
    const auto next = MirrorStep(prev, dir, step, orientation);
    const double sign = orientation == MirrorOrientation::kAscent ? 1.0 : -1.0;
    double inner = 0.0;
    for (int i = 0; i < n; ++i) inner += (next[i] - prev[i]) * dir[i];
    EXPECT_GE(sign * inner - testing::KlDivergence(next, prev) / step, -1e-12);
  }
}

TEST(EpisodeUpdateTest, FirstEpisodePlayerTwoStaysUniform) {
  const auto game = BuildChainEnv();
  EmpiricalModel model(game.dims(), 0, ChainConfig().estimation);
  const auto mu = Policy::Uniform(game.dims(), Player::kMax);
  const auto nu = Policy::Uniform(game.dims(), Player::kMin);
  const auto p2 = EpisodeUpdate(AgentRole::kP2SingleController, model, mu, nu, ChainConfig());
  EXPECT_EQ(p2.next, nu);
  EXPECT_FALSE(p2.diagnostics.eval.has_value());
  const auto p1 = EpisodeUpdate(AgentRole::kP1SingleController, model, nu, mu, ChainConfig());
  EXPECT_EQ(p1.next, mu);
}

TEST(EpisodeUpdateTest, RoleMustMatchGameKind) {
  const auto game = BuildChainEnv();
  EmpiricalModel model(game.dims(), 0, ChainConfig().estimation);
  const auto mu = Policy::Uniform(game.dims(), Player::kMax);
  const auto nu = Policy::Uniform(game.dims(), Player::kMin);
  EXPECT_THROW(EpisodeUpdate(AgentRole::kP1Factored, model, nu, mu, ChainConfig()),
               IndexMismatchError);
}

TEST(EpisodeUpdateTest, DeterministicAndStrictlyPositive) {
  for (int factored = 0; factored < 2; ++factored) {
    const auto game = factored ? FactoredGame(8) : BuildChainEnv();
    auto config = ChainConfig();
    auto run = [&] {
      EmpiricalModel model(game.dims(), game.initial_state(), config.estimation);
      auto mu = Policy::Uniform(game.dims(), Player::kMax);
      auto nu = Policy::Uniform(game.dims(), Player::kMin);
      Rng rng(5);
      for (int k = 0; k < 40; ++k) {
        auto u1 = EpisodeUpdate(RoleFor(game.dims(), Player::kMax), model, nu, mu, config);
        auto u2 = EpisodeUpdate(RoleFor(game.dims(), Player::kMin), model, mu, nu, config);
        mu = std::move(u1.next);
        nu = std::move(u2.next);
        model.Update(SampleEpisode(game, mu, nu, rng));
      }
      return std::pair{mu, nu};
    };
    const auto first = run();
    EXPECT_EQ(first, run());
    for (const Policy* pi : {&first.first, &first.second}) {
      for (double p : pi->data()) EXPECT_GT(p, 0.0);
      EXPECT_NO_THROW(pi->Validate());
    }
  }
}

TEST(EpisodeUpdateTest, PlayerOneImprovesAgainstFixedOpponent) {
  const auto game = BuildChainEnv();
  auto config = ChainConfig();
  config.estimation.num_episodes = 2000;
  EmpiricalModel model(game.dims(), 0, config.estimation);
  auto mu = Policy::Uniform(game.dims(), Player::kMax);
  const auto nu = ChainOptimalNu();
  const double start = EvaluatePair(game, mu, nu).V(0, 0);
  Rng rng(2);
  for (int k = 0; k < 2000; ++k) {
    mu = EpisodeUpdate(AgentRole::kP1SingleController, model, nu, mu, config).next;
    model.Update(SampleEpisode(game, mu, nu, rng));
  }
  EXPECT_GT(EvaluatePair(game, mu, nu).V(0, 0), start + 0.1);
}

}  // namespace
}  // namespace mgpo
