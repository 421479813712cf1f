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

#ifndef MGPO_GAME_IO_H_
#define MGPO_GAME_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mgpo/game.h"

namespace mgpo {

// Malformed or incomplete game document.
class SpecFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// JSON game document:
//
//   {
//     "horizon": H,
//     "num_actions_a": |A|, "num_actions_b": |B|,
//     "reward": [h][s][a][b]           (or stationary [s][a][b]),
//     "reward_noise": w,               (optional, default 0.1)
//     "initial_state": s | [s1, s2],
//     "transition": {
//       "type": "single_controller",
//       "P": [h][s][a][s']             (or stationary [s][a][s'])
//     } | {
//       "type": "factored",
//       "P1": [h][s1][a][s1'], "P2": [h][s2][b][s2']   (or stationary)
//     }
//   }
//
// Reward states are joint indices s = s1 * |S2| + s2 for factored games.
ZeroSumGame GameFromJson(std::string_view text);
ZeroSumGame LoadGame(const std::filesystem::path& path);

// Full (non-stationary) form of the document above, pretty-printed.
std::string GameToJson(const ZeroSumGame& game);

}  // namespace mgpo

#endif  // MGPO_GAME_IO_H_
