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

#include "mgpo/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mgpo/experiment.h"

namespace mgpo {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 50.0;
constexpr std::size_t kMaxPoints = 2000;

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double ParseNumber(const std::string& cell, const std::string& where) {
  if (cell == "nan") return std::nan("");
  try {
    std::size_t used = 0;
    const double x = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return x;
  } catch (const std::exception&) {
    throw MalformedCsvError(where + ": not a number: \"" + cell + "\"");
  }
}

std::string Fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, x);
  return buf;
}

}  // namespace

ValueCurve ReadValueCurve(std::span<const std::filesystem::path> csv_paths) {
  if (csv_paths.empty()) throw MalformedCsvError("no CSV files given");
  ValueCurve curve;
  std::vector<double> sums;
  double v_star_sum = 0.0;
  bool v_star_known = true;

  for (std::size_t f = 0; f < csv_paths.size(); ++f) {
    const auto& path = csv_paths[f];
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
      throw MalformedCsvError(path.string() + ": missing or unexpected header");
    }
    std::vector<int> episodes;
    std::vector<double> values;
    double v_star = std::nan("");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto cells = SplitCsv(line);
      const std::string where =
          path.string() + " row " + std::to_string(episodes.size() + 1);
      if (cells.size() != 9) throw MalformedCsvError(where + ": expected 9 columns");
      episodes.push_back(static_cast<int>(ParseNumber(cells[1], where)));
      values.push_back(ParseNumber(cells[2], where));
      v_star = ParseNumber(cells[3], where);
    }
    if (episodes.empty()) throw MalformedCsvError(path.string() + ": no data rows");

    if (f == 0) {
      curve.episodes = episodes;
      sums.assign(values.size(), 0.0);
    } else if (episodes != curve.episodes) {
      throw MalformedCsvError(path.string() + ": episode column differs");
    }
    for (std::size_t i = 0; i < values.size(); ++i) sums[i] += values[i];
    if (std::isnan(v_star)) {
      v_star_known = false;
    } else {
      v_star_sum += v_star;
    }
  }

  const double n = static_cast<double>(csv_paths.size());
  curve.values.resize(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) curve.values[i] = sums[i] / n;
  if (v_star_known) curve.v_star = v_star_sum / n;
  return curve;
}

std::string RenderValuePlot(const ValueCurve& curve) {
  if (curve.values.empty() || curve.values.size() != curve.episodes.size()) {
    throw MalformedCsvError("empty value curve");
  }
  double lo = *std::min_element(curve.values.begin(), curve.values.end());
  double hi = *std::max_element(curve.values.begin(), curve.values.end());
  if (curve.v_star) {
    lo = std::min(lo, *curve.v_star);
    hi = std::max(hi, *curve.v_star);
  }
  const double pad = hi > lo ? 0.05 * (hi - lo) : 0.05 * std::max(1.0, std::abs(hi));
  lo -= pad;
  hi += pad;
  const double x_lo = curve.episodes.front();
  const double x_hi = std::max<double>(curve.episodes.back(), x_lo + 1);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kTop + (hi - y) / (hi - lo) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"480\" "
         "viewBox=\"0 0 800 480\">\n";
  svg += "<rect width=\"800\" height=\"480\" fill=\"white\"/>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  // Axes.
  svg += "<line x1=\"" + Fmt("%.2f", kLeft) + "\" y1=\"" + Fmt("%.2f", kTop) +
         "\" x2=\"" + Fmt("%.2f", kLeft) + "\" y2=\"" +
         Fmt("%.2f", kTop + plot_h) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + Fmt("%.2f", kLeft) + "\" y1=\"" +
         Fmt("%.2f", kTop + plot_h) + "\" x2=\"" + Fmt("%.2f", kLeft + plot_w) +
         "\" y2=\"" + Fmt("%.2f", kTop + plot_h) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = lo + (hi - lo) * i / 4.0;
    const double x = x_lo + (x_hi - x_lo) * i / 4.0;
    svg += "<text x=\"" + Fmt("%.2f", kLeft - 6) + "\" y=\"" +
           Fmt("%.2f", py(y) + 4) + "\" text-anchor=\"end\">" + Fmt("%.4f", y) +
           "</text>\n";
    svg += "<text x=\"" + Fmt("%.2f", px(x)) + "\" y=\"" +
           Fmt("%.2f", kTop + plot_h + 18) + "\" text-anchor=\"middle\">" +
           Fmt("%.0f", x) + "</text>\n";
  }
  svg += "<text x=\"" + Fmt("%.2f", kLeft + plot_w / 2) + "\" y=\"" +
         Fmt("%.2f", kHeight - 10) +
         "\" text-anchor=\"middle\">episode</text>\n";

  if (curve.v_star) {
    svg += "<line x1=\"" + Fmt("%.2f", kLeft) + "\" y1=\"" +
           Fmt("%.2f", py(*curve.v_star)) + "\" x2=\"" +
           Fmt("%.2f", kLeft + plot_w) + "\" y2=\"" +
           Fmt("%.2f", py(*curve.v_star)) +
           "\" stroke=\"#ff7f0e\" stroke-width=\"1.5\"/>\n";
  }

  const std::size_t n = curve.values.size();
  const std::size_t stride = (n + kMaxPoints - 1) / kMaxPoints;
  svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < n; i += stride) {
    svg += Fmt("%.2f", px(curve.episodes[i])) + "," + Fmt("%.2f", py(curve.values[i])) + " ";
  }
  if ((n - 1) % stride != 0) {
    svg += Fmt("%.2f", px(curve.episodes[n - 1])) + "," +
           Fmt("%.2f", py(curve.values[n - 1]));
  }
  svg += "\"/>\n</g>\n</svg>\n";
  return svg;
}

std::vector<std::filesystem::path> FindRunCsvs(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw IoError(dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.rfind("seed_", 0) == 0 &&
        entry.path().extension() == ".csv") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void EmitPlot(std::span<const std::filesystem::path> csv_paths,
              const std::filesystem::path& output) {
  const std::string svg = RenderValuePlot(ReadValueCurve(csv_paths));
  std::ofstream out(output, std::ios::binary);
  if (!out) throw IoError("cannot open " + output.string() + " for writing");
  out << svg;
  if (!out) throw IoError("failed writing " + output.string());
}

}  // namespace mgpo
