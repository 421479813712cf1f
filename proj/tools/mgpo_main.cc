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

// Command-line front end:
//   mgpo run --config <file> --out <dir>
//   mgpo plot --in <dir> --out <file>
//   mgpo env dump-chain
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mgpo/chain_env.h"
#include "mgpo/experiment.h"
#include "mgpo/game_io.h"
#include "mgpo/plot.h"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

int RunCommand(const std::string& config_path, const std::string& out_dir) {
  mgpo::ExperimentConfig config = mgpo::LoadConfig(config_path);
  if (!out_dir.empty()) config.output_dir = out_dir;
  const auto result = mgpo::RunExperiment(config);
  for (const auto& seed : result.seeds) {
    std::printf("seed %llu: regret1=%.6f regret2=%.6f gap=%.6f gap/K=%.6f\n",
                static_cast<unsigned long long>(seed.seed),
                seed.final_regret.regret1, seed.final_regret.regret2,
                seed.final_regret.gap,
                seed.final_regret.gap / config.num_episodes);
  }
  std::printf("wrote %zu run files and %s\n", result.csv_paths.size(),
              result.summary_path.string().c_str());
  return 0;
}

int PlotCommand(const std::string& in_dir, const std::string& out_file) {
  const auto csvs = mgpo::FindRunCsvs(in_dir);
  mgpo::EmitPlot(csvs, out_file);
  std::printf("wrote %s from %zu run files\n", out_file.c_str(), csvs.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimistic fictitious-play policy optimization for zero-sum "
               "Markov games"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  run->add_option("--config", config_path, "Experiment config (JSON)")
      ->required();
  run->add_option("--out", out_dir, "Output directory (overrides the config)");

  std::string plot_in;
  std::string plot_out;
  auto* plot = app.add_subcommand("plot", "Plot seed-averaged values as SVG");
  plot->add_option("--in", plot_in, "Directory holding seed_*.csv")->required();
  plot->add_option("--out", plot_out, "SVG output path")->required();

  auto* env = app.add_subcommand("env", "Built-in environments");
  env->require_subcommand(1);
  auto* dump_chain =
      env->add_subcommand("dump-chain", "Print the chain game as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) return RunCommand(config_path, out_dir);
    if (plot->parsed()) return PlotCommand(plot_in, plot_out);
    if (dump_chain->parsed()) {
      std::cout << mgpo::GameToJson(mgpo::BuildChainEnv()) << "\n";
      return 0;
    }
  } catch (const mgpo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
