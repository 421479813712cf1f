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

#include "mgpo/game_io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mgpo {
namespace {

using nlohmann::json;

int Depth(const json& node) {
  int depth = 0;
  const json* cur = &node;
  while (cur->is_array() && !cur->empty()) {
    ++depth;
    cur = &cur->front();
  }
  return depth;
}

const json& Require(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw SpecFormatError(std::string("game document missing \"") + key + "\"");
  }
  return doc.at(key);
}

// Flattens a 3-D (stationary) or 4-D (per-step) nested array into a
// [h][i][j][k] buffer, checking every extent.
std::vector<double> Flatten4(const json& node, int horizon, int d1, int d2,
                             int d3, const char* name) {
  const int depth = Depth(node);
  if (depth != 3 && depth != 4) {
    throw SpecFormatError(std::string(name) +
                          ": expected a 3- or 4-level nested array");
  }
  auto check = [name](const json& arr, int n) {
    if (!arr.is_array() || static_cast<int>(arr.size()) != n) {
      std::ostringstream msg;
      msg << name << ": expected " << n << " entries";
      throw IndexMismatchError(msg.str());
    }
  };
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(horizon) * d1 * d2 * d3);
  if (depth == 4) check(node, horizon);
  for (int h = 0; h < horizon; ++h) {
    const json& step = depth == 4 ? node[h] : node;
    check(step, d1);
    for (int i = 0; i < d1; ++i) {
      check(step[i], d2);
      for (int j = 0; j < d2; ++j) {
        check(step[i][j], d3);
        for (int k = 0; k < d3; ++k) out.push_back(step[i][j][k].get<double>());
      }
    }
  }
  return out;
}

TransitionKernel KernelFromJson(const json& node, int horizon, int num_actions,
                                const char* name) {
  // The state count is the outer extent after the optional step level.
  const int depth = Depth(node);
  const json& first = depth == 4 ? node.front() : node;
  if (!first.is_array() || first.empty()) {
    throw SpecFormatError(std::string(name) + ": empty kernel");
  }
  const int num_states = static_cast<int>(first.size());
  auto flat = Flatten4(node, horizon, num_states, num_actions, num_states, name);
  TransitionKernel kernel(horizon, num_states, num_actions);
  std::size_t idx = 0;
  for (int h = 0; h < horizon; ++h)
    for (int s = 0; s < num_states; ++s)
      for (int act = 0; act < num_actions; ++act)
        for (auto& p : kernel.MutableRow(h, s, act)) p = flat[idx++];
  return kernel;
}

json KernelToJson(const TransitionKernel& kernel) {
  json out = json::array();
  for (int h = 0; h < kernel.horizon(); ++h) {
    json step = json::array();
    for (int s = 0; s < kernel.num_states(); ++s) {
      json rows = json::array();
      for (int act = 0; act < kernel.num_actions(); ++act) {
        auto row = kernel.Row(h, s, act);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
      }
      step.push_back(std::move(rows));
    }
    out.push_back(std::move(step));
  }
  return out;
}

}  // namespace

ZeroSumGame GameFromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecFormatError(std::string("game document is not valid JSON: ") +
                          e.what());
  }

  try {
    GameDescription desc;
    desc.horizon = Require(doc, "horizon").get<int>();
    desc.num_actions_a = Require(doc, "num_actions_a").get<int>();
    desc.num_actions_b = Require(doc, "num_actions_b").get<int>();
    desc.reward_noise = doc.value("reward_noise", 0.1);
    if (desc.horizon < 1 || desc.num_actions_a < 1 || desc.num_actions_b < 1) {
      throw IndexMismatchError("horizon and action counts must be positive");
    }

    const json& trans = Require(doc, "transition");
    const std::string type = Require(trans, "type").get<std::string>();
    int num_states = 0;
    int num_states2 = 1;
    if (type == "single_controller") {
      auto p = KernelFromJson(Require(trans, "P"), desc.horizon,
                              desc.num_actions_a, "P");
      num_states = p.num_states();
      desc.transition = SingleControllerTransition{std::move(p)};
    } else if (type == "factored") {
      auto p1 = KernelFromJson(Require(trans, "P1"), desc.horizon,
                               desc.num_actions_a, "P1");
      auto p2 = KernelFromJson(Require(trans, "P2"), desc.horizon,
                               desc.num_actions_b, "P2");
      num_states2 = p2.num_states();
      num_states = p1.num_states() * num_states2;
      desc.transition = FactoredTransition{std::move(p1), std::move(p2)};
    } else {
      throw SpecFormatError("unknown transition type \"" + type + "\"");
    }

    const json& init = Require(doc, "initial_state");
    if (init.is_array()) {
      if (init.size() != 2) {
        throw SpecFormatError("initial_state pair must have two entries");
      }
      desc.initial_state = init[0].get<int>() * num_states2 + init[1].get<int>();
      if (init[1].get<int>() < 0 || init[1].get<int>() >= num_states2) {
        throw IndexMismatchError("initial_state component out of range");
      }
    } else {
      desc.initial_state = init.get<int>();
    }

    desc.reward = Flatten4(Require(doc, "reward"), desc.horizon, num_states,
                           desc.num_actions_a, desc.num_actions_b, "reward");
    return ZeroSumGame::Build(std::move(desc));
  } catch (const json::exception& e) {
    throw SpecFormatError(std::string("game document: ") + e.what());
  }
}

ZeroSumGame LoadGame(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecFormatError("cannot open game file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return GameFromJson(buffer.str());
}

std::string GameToJson(const ZeroSumGame& game) {
  const GameDims& dims = game.dims();
  json doc;
  doc["horizon"] = dims.horizon;
  doc["num_actions_a"] = dims.num_actions_a;
  doc["num_actions_b"] = dims.num_actions_b;
  doc["reward_noise"] = game.reward_noise();

  if (dims.factored()) {
    const auto& fac = game.factored_transition();
    doc["transition"] = {{"type", "factored"},
                         {"P1", KernelToJson(fac.p1)},
                         {"P2", KernelToJson(fac.p2)}};
    doc["initial_state"] = {dims.Component1(game.initial_state()),
                            dims.Component2(game.initial_state())};
  } else {
    doc["transition"] = {
        {"type", "single_controller"},
        {"P", KernelToJson(game.single_controller_transition().p)}};
    doc["initial_state"] = game.initial_state();
  }

  json reward = json::array();
  for (int h = 0; h < dims.horizon; ++h) {
    json step = json::array();
    for (int s = 0; s < dims.num_states(); ++s) {
      json mat = json::array();
      for (int a = 0; a < dims.num_actions_a; ++a) {
        json row = json::array();
        for (int b = 0; b < dims.num_actions_b; ++b)
          row.push_back(game.reward(h, s, a, b));
        mat.push_back(std::move(row));
      }
      step.push_back(std::move(mat));
    }
    reward.push_back(std::move(step));
  }
  doc["reward"] = std::move(reward);
  return doc.dump(2);
}

}  // namespace mgpo
