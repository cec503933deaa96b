// Copyright 2026 The embcompress Authors.
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

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cli.hpp"

namespace embcompress::cli {
namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 70, kRight = 190, kTop = 40, kBottom = 50;
constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                    "#bcbd22", "#17becf"};

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string RenderSvg(const EvalReport& report, const std::string& task,
                      const std::string& title) {
  std::string chosen = task;
  if (chosen.empty() && !report.rows.empty()) chosen = report.rows.front().task;

  // Mean over seeds per (series, dim); failed cells are skipped.
  using Key = std::pair<std::string, std::string>;
  std::map<Key, std::map<Index, std::pair<double, int>>> series;
  std::vector<double> baselines;
  std::string metric;
  for (const ReportRow& row : report.rows) {
    if (row.task != chosen || row.error || !std::isfinite(row.value)) continue;
    metric = row.metric;
    if (row.method == "baseline") {
      baselines.push_back(row.value);
      continue;
    }
    auto& cell = series[{row.method, row.setting}][row.dim];
    cell.first += row.value;
    cell.second += 1;
  }

  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const auto& [key, points] : series) {
    for (const auto& [dim, acc] : points) {
      const double y = acc.first / acc.second;
      x_min = std::min(x_min, static_cast<double>(dim));
      x_max = std::max(x_max, static_cast<double>(dim));
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  for (double b : baselines) {
    y_min = std::min(y_min, b);
    y_max = std::max(y_max, b);
  }
  if (x_min > x_max) x_min = 0, x_max = 1;
  if (y_min > y_max) y_min = 0, y_max = 1;
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_min -= 0.5, y_max += 0.5;
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * plot_w;
  };
  const auto sy = [&](double y) {
    return kTop + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"15\">"
      << Escape(title.empty() ? chosen : title) << "</text>\n";

  // Axes and ticks.
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double x = x_min + (x_max - x_min) * i / 5.0;
    const double y = y_min + (y_max - y_min) * i / 5.0;
    svg << "<text x=\"" << sx(x) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << Num(std::round(x)) << "</text>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy(y) + 4
        << "\" text-anchor=\"end\">" << Num(std::round(y * 1000) / 1000)
        << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">dimension</text>\n";
  svg << "<text x=\"16\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kTop + plot_h / 2 << ")\">" << Escape(metric) << "</text>\n";

  double legend_y = kTop + 10;
  const double legend_x = kLeft + plot_w + 16;
  for (double b : baselines) {
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << sy(b) << "\" x2=\""
        << kLeft + plot_w << "\" y2=\"" << sy(b)
        << "\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";
  }
  if (!baselines.empty()) {
    svg << "<line x1=\"" << legend_x << "\" y1=\"" << legend_y << "\" x2=\""
        << legend_x + 20 << "\" y2=\"" << legend_y
        << "\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";
    svg << "<text x=\"" << legend_x + 26 << "\" y=\"" << legend_y + 4
        << "\">baseline</text>\n";
    legend_y += 18;
  }

  std::size_t color = 0;
  for (const auto& [key, points] : series) {
    const char* stroke = kPalette[color++ % std::size(kPalette)];
    const bool dashed = key.second == "inductive";
    svg << "<polyline fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"2\"" << (dashed ? " stroke-dasharray=\"2 3\"" : "")
        << " points=\"";
    for (const auto& [dim, acc] : points) {
      svg << sx(static_cast<double>(dim)) << "," << sy(acc.first / acc.second)
          << " ";
    }
    svg << "\"/>\n";
    for (const auto& [dim, acc] : points) {
      svg << "<circle cx=\"" << sx(static_cast<double>(dim)) << "\" cy=\""
          << sy(acc.first / acc.second) << "\" r=\"3\" fill=\"" << stroke
          << "\"/>\n";
    }
    svg << "<line x1=\"" << legend_x << "\" y1=\"" << legend_y << "\" x2=\""
        << legend_x + 20 << "\" y2=\"" << legend_y << "\" stroke=\"" << stroke
        << "\" stroke-width=\"2\""
        << (dashed ? " stroke-dasharray=\"2 3\"" : "") << "/>\n";
    svg << "<text x=\"" << legend_x + 26 << "\" y=\"" << legend_y + 4
        << "\">" << Escape(key.first + " (" + key.second + ")") << "</text>\n";
    legend_y += 18;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace embcompress::cli
