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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mgpo/chain_env.h"
#include "mgpo/experiment.h"
#include "mgpo/plot.h"
#include "mgpo/random_games.h"

namespace mgpo {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path ScratchDir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("mgpo_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig SmallConfig(const std::string& name) {
  ExperimentConfig config;
  config.num_episodes = 30;
  config.seeds = {3, 1, 2};
  config.eta_scale = 50;
  config.gamma_scale = 50;
  config.reward_bonus_scale = 0.01;
  config.transition_bonus_scale = 0.01;
  config.output_dir = ScratchDir(name).string();
  return config;
}

TEST(ConfigTest, ParsesEveryKey) {
  const auto config = ConfigFromJson(R"({
    "game": {"source": "random", "kind": "factored", "horizon": 4,
             "num_states1": 2, "num_states2": 3, "reward_noise": 0.05,
             "seed": 9},
    "num_episodes": 50, "delta": 0.05, "eta_scale": 2, "gamma_scale": 3,
    "reward_bonus_scale": 0.5, "transition_bonus_scale": 0.25,
    "seeds": [4, 5], "output_dir": "x", "audit_enabled": true,
    "v_star": 0.5, "parallel": false})");
  EXPECT_EQ(config.source, GameSource::kRandom);
  EXPECT_EQ(config.random.kind, TransitionKind::kFactored);
  EXPECT_EQ(config.random.num_states2, 3);
  EXPECT_EQ(config.random_game_seed, 9u);
  EXPECT_EQ(config.num_episodes, 50);
  EXPECT_EQ(config.seeds, (std::vector<std::uint64_t>{4, 5}));
  EXPECT_TRUE(config.audit_enabled);
  EXPECT_EQ(*config.v_star, 0.5);
  EXPECT_FALSE(config.parallel);
  const auto game = ResolveGame(config);
  EXPECT_EQ(game.num_states(), 6);
}

TEST(ConfigTest, RejectsBadValues) {
  EXPECT_THROW(ConfigFromJson("not json"), ConfigError);
  EXPECT_THROW(ConfigFromJson(R"({"num_episodes": 1})"), ConfigError);
  EXPECT_THROW(ConfigFromJson(R"({"eta_scale": 0})"), ConfigError);
  EXPECT_THROW(ConfigFromJson(R"({"delta": 2})"), ConfigError);
  EXPECT_THROW(ConfigFromJson(R"({"seeds": []})"), ConfigError);
  EXPECT_THROW(ConfigFromJson(R"({"game": {"source": "moon"}})"), ConfigError);
  EXPECT_THROW(LoadConfig("/nonexistent/config.json"), ConfigError);
}

TEST(ConfigTest, ChainVStarDefaultsToReferencePair) {
  ExperimentConfig config;
  EXPECT_NEAR(ResolveVStar(config, BuildChainEnv()), kChainReferenceValue, 1e-6);
  Rng rng(0);
  EXPECT_TRUE(std::isnan(ResolveVStar(config, RandomGame({}, rng))));
  config.source = GameSource::kRandom;
  EXPECT_TRUE(std::isnan(ResolveVStar(config, BuildChainEnv())));
}

TEST(RunExperimentTest, TwoEpisodesGiveTwoRows) {
  auto config = SmallConfig("two_rows");
  config.num_episodes = 2;
  const auto result = RunExperiment(config);
  for (const auto& path : result.csv_paths) {
    std::istringstream lines(Slurp(path));
    std::string line;
    int count = 0;
    std::getline(lines, line);
    EXPECT_EQ(line, kCsvHeader);
    while (std::getline(lines, line)) ++count;
    EXPECT_EQ(count, 2);
  }
}

TEST(RunExperimentTest, RerunIsByteIdentical) {
  auto config = SmallConfig("rerun_a");
  config.audit_enabled = true;
  const auto first = RunExperiment(config);
  config.output_dir = ScratchDir("rerun_b").string();
  config.parallel = false;
  const auto second = RunExperiment(config);
  ASSERT_EQ(first.csv_paths.size(), second.csv_paths.size());
  for (std::size_t i = 0; i < first.csv_paths.size(); ++i) {
    EXPECT_EQ(first.csv_paths[i].filename(), second.csv_paths[i].filename());
    EXPECT_EQ(Slurp(first.csv_paths[i]), Slurp(second.csv_paths[i]));
  }
  EXPECT_EQ(Slurp(first.summary_path), Slurp(second.summary_path));
}

TEST(RunExperimentTest, SummaryIsSeedMean) {
  const auto result = RunExperiment(SmallConfig("summary"));
  const auto avg = AverageSeeds(result.seeds);
  for (int i : {0, 14, 29}) {
    double v = 0.0, r1 = 0.0;
    for (const auto& seed : result.seeds) {
      v += seed.rows[i].v_exact;
      r1 += seed.rows[i].regret1_partial;
    }
    EXPECT_NEAR(avg[i].v_exact, v / 3, 1e-15);
    EXPECT_NEAR(avg[i].regret1_partial, r1 / 3, 1e-13);
    EXPECT_EQ(avg[i].seed, 3u);
  }
  EXPECT_EQ(Slurp(result.summary_path), FormatCsv(avg));
  // Seeds are written in configuration order.
  EXPECT_EQ(result.seeds[0].seed, 3u);
  EXPECT_EQ(result.csv_paths[0].filename(), "seed_3.csv");
}

TEST(RunExperimentTest, RowsAreConsistent) {
  const auto game = BuildChainEnv();
  const auto result = RunSeed(game, SmallConfig("rows"), 7);
  ASSERT_EQ(result.rows.size(), 30u);
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& row = result.rows[i];
    EXPECT_EQ(row.episode, static_cast<int>(i) + 1);
    EXPECT_EQ(row.gap_partial, row.regret1_partial + row.regret2_partial);
    EXPECT_GE(row.v_exact, 0.0);
    EXPECT_LE(row.v_exact, 7.0);
    EXPECT_NEAR(row.v_star, kChainReferenceValue, 1e-6);
  }
  // Episode 1 plays the uniform pair.
  EXPECT_NEAR(result.rows[0].v_exact,
              EvaluatePair(game, Policy::Uniform(game.dims(), Player::kMax),
                           Policy::Uniform(game.dims(), Player::kMin))
                  .V(0, 0),
              1e-15);
}

TEST(RunExperimentTest, FactoredGamesRun) {
  auto config = SmallConfig("factored");
  config.source = GameSource::kRandom;
  config.random.kind = TransitionKind::kFactored;
  config.random.num_states1 = 2;
  config.random.num_states2 = 2;
  config.random.reward_noise = 0.1;
  config.audit_enabled = true;
  const auto result = RunExperiment(config);
  EXPECT_TRUE(std::isnan(result.seeds[0].rows[0].v_star));
  EXPECT_NE(Slurp(result.csv_paths[0]).find(",nan,"), std::string::npos);
}

TEST(RunExperimentTest, UnwritableOutputIsIoError) {
  auto config = SmallConfig("io");
  config.num_episodes = 2;
  const auto blocker = ScratchDir("io_blocker");
  std::ofstream(blocker.string()) << "file";
  config.output_dir = (blocker / "sub").string();
  EXPECT_THROW(RunExperiment(config), IoError);
  fs::remove(blocker);
}

TEST(PlotTest, DeterministicSvgWithReferenceLine) {
  const auto config = SmallConfig("plot");
  RunExperiment(config);
  const auto dir = fs::path(config.output_dir);
  const auto csvs = FindRunCsvs(dir);
  ASSERT_EQ(csvs.size(), 3u);
  EmitPlot(csvs, dir / "a.svg");
  EmitPlot(csvs, dir / "b.svg");
  const auto svg = Slurp(dir / "a.svg");
  EXPECT_EQ(svg, Slurp(dir / "b.svg"));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  const auto curve = ReadValueCurve(csvs);
  ASSERT_TRUE(curve.v_star.has_value());
  EXPECT_NEAR(*curve.v_star, kChainReferenceValue, 1e-6);
  EXPECT_EQ(curve.episodes.size(), 30u);
}

TEST(PlotTest, ConstantSeriesOnReferenceLine) {
  ValueCurve curve{{1, 2, 3}, {0.5, 0.5, 0.5}, 0.5};
  const auto svg = RenderValuePlot(curve);
  EXPECT_EQ(svg, RenderValuePlot(curve));
  EXPECT_NE(svg.find("<line"), std::string::npos);
}

TEST(PlotTest, EmptyOrBrokenCsvRejected) {
  const auto dir = ScratchDir("malformed");
  fs::create_directories(dir);
  std::ofstream(dir / "seed_0.csv") << kCsvHeader << "\n";
  std::vector<fs::path> paths{dir / "seed_0.csv"};
  EXPECT_THROW(ReadValueCurve(paths), MalformedCsvError);
  std::ofstream(dir / "seed_0.csv") << "a,b\n1,2\n";
  EXPECT_THROW(ReadValueCurve(paths), MalformedCsvError);
  std::ofstream(dir / "seed_0.csv") << kCsvHeader << "\n0,1,0.5,0.5\n";
  EXPECT_THROW(ReadValueCurve(paths), MalformedCsvError);
  std::ofstream(dir / "seed_0.csv") << kCsvHeader << "\n0,1,x,0.5,0,0,0,0,0\n";
  EXPECT_THROW(ReadValueCurve(paths), MalformedCsvError);
}

TEST(RandomGameTest, SeededAndValid) {
  RandomGameOptions options;
  options.sparsity = 0.5;
  options.reward_noise = 0.1;
  Rng a(1), b(1);
  const auto first = RandomGame(options, a);
  const auto second = RandomGame(options, b);
  EXPECT_EQ(first.rewards(), second.rewards());
  for (double r : first.rewards()) {
    EXPECT_GE(r, 0.1);
    EXPECT_LE(r, 0.9);
  }
}

}  // namespace
}  // namespace mgpo
