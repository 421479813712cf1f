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

#ifndef MGPO_PLOT_H_
#define MGPO_PLOT_H_

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgpo {

class MalformedCsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ValueCurve {
  std::vector<int> episodes;
  // Seed-averaged v_exact per episode.
  std::vector<double> values;
  // Absent when the runs carry no reference value.
  std::optional<double> v_star;
};

// Reads run CSVs and averages v_exact per episode across files. Every file
// must carry the standard header and the same episode column.
ValueCurve ReadValueCurve(std::span<const std::filesystem::path> csv_paths);

// Line plot of the curve with a horizontal reference line. Output bytes are
// a pure function of the input.
std::string RenderValuePlot(const ValueCurve& curve);

// seed_*.csv files of an output directory, sorted by name.
std::vector<std::filesystem::path> FindRunCsvs(const std::filesystem::path& dir);

// ReadValueCurve + RenderValuePlot, written to `output`.
void EmitPlot(std::span<const std::filesystem::path> csv_paths,
              const std::filesystem::path& output);

}  // namespace mgpo

#endif  // MGPO_PLOT_H_
