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

#include "mgpo/experiment.h"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "mgpo/chain_env.h"
#include "mgpo/exact_dp.h"
#include "mgpo/game_io.h"
#include "mgpo/sampler.h"

namespace mgpo {
namespace {

using nlohmann::json;

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", x);
  return buf;
}

void AppendRow(std::string& out, const EpisodeRecord& row) {
  char head[64];
  std::snprintf(head, sizeof(head), "%" PRIu64 ",%d,", row.seed, row.episode);
  out += head;
  out += FormatDouble(row.v_exact) + ",";
  out += FormatDouble(row.v_star) + ",";
  out += FormatDouble(row.regret1_partial) + ",";
  out += FormatDouble(row.regret2_partial) + ",";
  out += FormatDouble(row.gap_partial) + ",";
  out += std::to_string(row.optimism_violations) + ",";
  out += FormatDouble(row.max_bonus) + "\n";
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (num_episodes < 2) throw ConfigError("num_episodes must be >= 2");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must be in (0, 1)");
  for (double m : {eta_scale, gamma_scale, reward_bonus_scale,
                   transition_bonus_scale}) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw ConfigError("step-size and bonus multipliers must be finite and > 0");
    }
  }
  if (seeds.empty()) throw ConfigError("seeds must be nonempty");
  if (source == GameSource::kFile && game_file.empty()) {
    throw ConfigError("game source \"file\" needs a path");
  }
}

AlgorithmConfig ExperimentConfig::Algorithm() const {
  AlgorithmConfig out;
  out.estimation.delta = delta;
  out.estimation.num_episodes = num_episodes;
  out.estimation.reward_bonus_scale = reward_bonus_scale;
  out.estimation.transition_bonus_scale = transition_bonus_scale;
  out.eta_scale = eta_scale;
  out.gamma_scale = gamma_scale;
  return out;
}

ExperimentConfig ConfigFromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig config;
  try {
    if (doc.contains("game")) {
      const json& game = doc.at("game");
      const std::string source = game.value("source", "chain");
      if (source == "chain") {
        config.source = GameSource::kChain;
      } else if (source == "file") {
        config.source = GameSource::kFile;
        config.game_file = game.at("path").get<std::string>();
      } else if (source == "random") {
        config.source = GameSource::kRandom;
        auto& r = config.random;
        const std::string kind = game.value("kind", "single_controller");
        if (kind == "single_controller") {
          r.kind = TransitionKind::kSingleController;
        } else if (kind == "factored") {
          r.kind = TransitionKind::kFactored;
        } else {
          throw ConfigError("unknown random game kind \"" + kind + "\"");
        }
        r.horizon = game.value("horizon", r.horizon);
        r.num_states1 = game.value("num_states1", r.num_states1);
        r.num_states2 = game.value("num_states2", r.num_states2);
        r.num_actions_a = game.value("num_actions_a", r.num_actions_a);
        r.num_actions_b = game.value("num_actions_b", r.num_actions_b);
        r.reward_noise = game.value("reward_noise", r.reward_noise);
        r.sparsity = game.value("sparsity", r.sparsity);
        config.random_game_seed = game.value("seed", config.random_game_seed);
      } else {
        throw ConfigError("unknown game source \"" + source + "\"");
      }
    }
    config.num_episodes = doc.value("num_episodes", config.num_episodes);
    config.delta = doc.value("delta", config.delta);
    config.eta_scale = doc.value("eta_scale", config.eta_scale);
    config.gamma_scale = doc.value("gamma_scale", config.gamma_scale);
    config.reward_bonus_scale =
        doc.value("reward_bonus_scale", config.reward_bonus_scale);
    config.transition_bonus_scale =
        doc.value("transition_bonus_scale", config.transition_bonus_scale);
    if (doc.contains("seeds")) {
      config.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
    }
    config.output_dir = doc.value("output_dir", config.output_dir);
    config.audit_enabled = doc.value("audit_enabled", config.audit_enabled);
    if (doc.contains("v_star") && !doc.at("v_star").is_null()) {
      config.v_star = doc.at("v_star").get<double>();
    }
    config.parallel = doc.value("parallel", config.parallel);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  config.Validate();
  return config;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ConfigFromJson(buffer.str());
}

ZeroSumGame ResolveGame(const ExperimentConfig& config) {
  switch (config.source) {
    case GameSource::kChain:
      return BuildChainEnv();
    case GameSource::kFile:
      try {
        return LoadGame(config.game_file);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    case GameSource::kRandom: {
      Rng rng(config.random_game_seed);
      try {
        return RandomGame(config.random, rng);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }
  throw ConfigError("unknown game source");
}

double ResolveVStar(const ExperimentConfig& config, const ZeroSumGame& game) {
  if (config.v_star) return *config.v_star;
  // RunSeed may be handed a game other than the configured one.
  if (config.source == GameSource::kChain &&
      game.dims() == BuildChainEnv().dims()) {
    return EvaluatePair(game, ChainOptimalMu(), ChainOptimalNu())
        .V(0, game.initial_state());
  }
  return std::numeric_limits<double>::quiet_NaN();
}

SeedResult RunSeed(const ZeroSumGame& game, const ExperimentConfig& config,
                   std::uint64_t seed, const EpisodeObserver& observer) {
  const AlgorithmConfig algo = config.Algorithm();
  algo.Validate();
  const GameDims& dims = game.dims();
  const AgentRole role1 = RoleFor(dims, Player::kMax);
  const AgentRole role2 = RoleFor(dims, Player::kMin);
  const double v_star = ResolveVStar(config, game);

  EmpiricalModel model1(dims, game.initial_state(), algo.estimation);
  EmpiricalModel model2(dims, game.initial_state(), algo.estimation);
  Policy mu = Policy::Uniform(dims, Player::kMax);
  Policy nu = Policy::Uniform(dims, Player::kMin);
  RegretLedger ledger(game);
  Rng rng(seed);

  SeedResult result;
  result.seed = seed;
  result.rows.reserve(config.num_episodes);
  for (int k = 1; k <= config.num_episodes; ++k) {
    // Each learner sees only the opponent's previous-episode policy.
    auto update1 = EpisodeUpdate(role1, model1, nu, mu, algo);
    auto update2 = EpisodeUpdate(role2, model2, mu, nu, algo);

    int violations = 0;
    // Episode 1 has no data and zero bonuses, so optimism cannot hold yet.
    if (config.audit_enabled && model1.episodes() > 0) {
      violations += OptimismAudit(game, *update1.diagnostics.eval).violations;
      if (update2.diagnostics.eval) {
        violations += OptimismAudit(game, *update2.diagnostics.eval).violations;
      } else {
        violations += RewardOptimismAudit(game, model2).violations;
      }
    }
    if (observer) {
      observer(EpisodeView{k, game, model1, model2, update1, update2});
    }

    mu = std::move(update1.next);
    nu = std::move(update2.next);
    const Trajectory traj = SampleEpisode(game, mu, nu, rng);
    model1.Update(traj);
    model2.Update(traj);
    ledger.RecordEpisode(mu, nu, violations);
    const RegretSummary partial = ledger.Partial();

    EpisodeRecord row;
    row.seed = seed;
    row.episode = k;
    row.v_exact = ledger.values().back();
    row.v_star = v_star;
    row.regret1_partial = partial.regret1;
    row.regret2_partial = partial.regret2;
    row.gap_partial = partial.gap;
    row.optimism_violations = violations;
    row.max_bonus = std::max(update1.diagnostics.max_bonus,
                             update2.diagnostics.max_bonus);
    result.rows.push_back(row);
  }
  result.final_regret = ledger.Partial();
  result.final_mu = std::move(mu);
  result.final_nu = std::move(nu);
  return result;
}

std::string FormatCsv(const std::vector<EpisodeRecord>& rows) {
  std::string out(kCsvHeader);
  out += "\n";
  for (const auto& row : rows) AppendRow(out, row);
  return out;
}

std::vector<EpisodeRecord> AverageSeeds(const std::vector<SeedResult>& seeds) {
  if (seeds.empty()) return {};
  const std::size_t n = seeds.front().rows.size();
  for (const auto& s : seeds) {
    if (s.rows.size() != n) {
      throw std::invalid_argument("AverageSeeds: seeds differ in length");
    }
  }
  const double count = static_cast<double>(seeds.size());
  std::vector<EpisodeRecord> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    EpisodeRecord& avg = out[i];
    avg.seed = seeds.size();
    avg.episode = seeds.front().rows[i].episode;
    double violations = 0.0;
    for (const auto& s : seeds) {
      const auto& row = s.rows[i];
      avg.v_exact += row.v_exact;
      avg.v_star += row.v_star;
      avg.regret1_partial += row.regret1_partial;
      avg.regret2_partial += row.regret2_partial;
      avg.gap_partial += row.gap_partial;
      avg.max_bonus += row.max_bonus;
      violations += row.optimism_violations;
    }
    avg.v_exact /= count;
    avg.v_star /= count;
    avg.regret1_partial /= count;
    avg.regret2_partial /= count;
    avg.gap_partial /= count;
    avg.max_bonus /= count;
    // Integer column: rounded mean.
    avg.optimism_violations = static_cast<int>(std::lround(violations / count));
  }
  return out;
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const ZeroSumGame game = ResolveGame(config);

  ExperimentResult result;
  if (config.parallel && config.seeds.size() > 1) {
    std::vector<std::future<SeedResult>> jobs;
    jobs.reserve(config.seeds.size());
    for (auto seed : config.seeds) {
      jobs.push_back(std::async(std::launch::async, [&game, &config, seed] {
        return RunSeed(game, config, seed);
      }));
    }
    for (auto& job : jobs) result.seeds.push_back(job.get());
  } else {
    for (auto seed : config.seeds)
      result.seeds.push_back(RunSeed(game, config, seed));
  }

  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  for (const auto& seed : result.seeds) {
    auto path = dir / ("seed_" + std::to_string(seed.seed) + ".csv");
    WriteFile(path, FormatCsv(seed.rows));
    result.csv_paths.push_back(std::move(path));
  }
  result.summary_path = dir / "summary.csv";
  WriteFile(result.summary_path, FormatCsv(AverageSeeds(result.seeds)));
  return result;
}

}  // namespace mgpo
