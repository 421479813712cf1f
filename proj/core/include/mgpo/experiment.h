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

#ifndef MGPO_EXPERIMENT_H_
#define MGPO_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mgpo/estimation.h"
#include "mgpo/fp_algorithms.h"
#include "mgpo/game.h"
#include "mgpo/metrics.h"
#include "mgpo/random_games.h"

namespace mgpo {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GameSource { kChain, kFile, kRandom };

struct ExperimentConfig {
  GameSource source = GameSource::kChain;
  // kFile: path of a JSON game document.
  std::string game_file;
  // kRandom: generator options and seed.
  RandomGameOptions random;
  std::uint64_t random_game_seed = 0;

  int num_episodes = 10000;
  double delta = 0.01;
  double eta_scale = 1.0;
  double gamma_scale = 1.0;
  double reward_bonus_scale = 1.0;
  double transition_bonus_scale = 1.0;
  std::vector<std::uint64_t> seeds{0};
  std::string output_dir = "out";
  bool audit_enabled = false;
  // Reference value for the v_star column. Defaults to the exact chain
  // reference pair value for the built-in chain and NaN otherwise.
  std::optional<double> v_star;
  // Run seeds on separate threads.
  bool parallel = true;

  // K >= 2, delta in (0, 1), multipliers > 0, seeds nonempty.
  void Validate() const;
  AlgorithmConfig Algorithm() const;
};

// JSON document mirroring ExperimentConfig:
//   {"game": {"source": "chain"} | {"source": "file", "path": "..."} |
//            {"source": "random", "kind": "single_controller" | "factored",
//             "horizon": 3, "num_states1": 3, "num_states2": 1,
//             "num_actions_a": 2, "num_actions_b": 2, "reward_noise": 0.1,
//             "seed": 7},
//    "num_episodes": 10000, "delta": 0.01,
//    "eta_scale": 50, "gamma_scale": 50,
//    "reward_bonus_scale": 0.01, "transition_bonus_scale": 0.01,
//    "seeds": [0, 1, 2, 3, 4], "output_dir": "out",
//    "audit_enabled": false, "v_star": 0.8594323, "parallel": true}
// Every key is optional. Throws ConfigError.
ExperimentConfig ConfigFromJson(std::string_view text);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

ZeroSumGame ResolveGame(const ExperimentConfig& config);
double ResolveVStar(const ExperimentConfig& config, const ZeroSumGame& game);

// One CSV row.
struct EpisodeRecord {
  std::uint64_t seed = 0;
  int episode = 0;  // 1-based
  double v_exact = 0.0;
  double v_star = 0.0;
  double regret1_partial = 0.0;
  double regret2_partial = 0.0;
  double gap_partial = 0.0;
  int optimism_violations = 0;
  double max_bonus = 0.0;
};

inline constexpr std::string_view kCsvHeader =
    "seed,episode,v_exact,v_star,regret1_partial,regret2_partial,gap_partial,"
    "optimism_violations,max_bonus";

// State visible to an observer after both learners have produced the
// episode-k policies and before episode k is sampled.
struct EpisodeView {
  int episode = 0;
  const ZeroSumGame& game;
  const EmpiricalModel& model_p1;
  const EmpiricalModel& model_p2;
  const EpisodeUpdateResult& update_p1;
  const EpisodeUpdateResult& update_p2;
};
using EpisodeObserver = std::function<void(const EpisodeView&)>;

struct SeedResult {
  std::uint64_t seed = 0;
  std::vector<EpisodeRecord> rows;
  RegretSummary final_regret;
  // Both players' final policies (after episode K).
  Policy final_mu;
  Policy final_nu;
};

// Plays both learners against each other for K episodes with one seed. No IO.
SeedResult RunSeed(const ZeroSumGame& game, const ExperimentConfig& config,
                   std::uint64_t seed,
                   const EpisodeObserver& observer = nullptr);

struct ExperimentResult {
  std::vector<SeedResult> seeds;
  std::vector<std::filesystem::path> csv_paths;
  std::filesystem::path summary_path;
};

// Runs every seed and writes <output_dir>/seed_<seed>.csv plus a
// seed-averaged <output_dir>/summary.csv (same columns, seed column holds
// the number of seeds). Throws ConfigError or IoError.
ExperimentResult RunExperiment(const ExperimentConfig& config);

std::string FormatCsv(const std::vector<EpisodeRecord>& rows);
// Per-episode arithmetic mean over seeds; all seeds must have equal length.
std::vector<EpisodeRecord> AverageSeeds(const std::vector<SeedResult>& seeds);

}  // namespace mgpo

#endif  // MGPO_EXPERIMENT_H_
