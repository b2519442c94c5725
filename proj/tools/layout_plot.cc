// Copyright 2026 The Authors.
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

#include "layout_plot.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace saco::cli {
namespace {

constexpr int kPlot = 480;
constexpr int kMargin = 20;
constexpr int kLegendWidth = 120;

// Tableau 10.
constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const char* ColorOf(int label) { return kPalette[label % 10]; }

}  // namespace

std::string LayoutSvg(std::span<const Patch> patches, std::span<const int> selected_ids) {
  std::set<int> labels;
  for (const Patch& p : patches) labels.insert(p.label);
  const std::set<int> selected(selected_ids.begin(), selected_ids.end());
  const int width = kPlot + 2 * kMargin + kLegendWidth;
  const int height = kPlot + 2 * kMargin;
  auto px = [](double u) { return Fixed(kMargin + std::clamp(u, 0.0, 1.0) * kPlot); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "  <rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kPlot
      << "\" height=\"" << kPlot << "\" fill=\"white\" stroke=\"#888888\"/>\n"
      << "  <g id=\"patches\">\n";
  for (const Patch& p : patches) {
    svg << "    <circle cx=\"" << px(p.coord.x) << "\" cy=\"" << px(p.coord.y)
        << "\" r=\"2.5\" fill=\"" << ColorOf(p.label) << "\" fill-opacity=\"0.6\"/>\n";
  }
  svg << "  </g>\n  <g id=\"exemplars\">\n";
  for (const Patch& p : patches) {
    if (selected.count(p.id) == 0) continue;
    svg << "    <circle cx=\"" << px(p.coord.x) << "\" cy=\"" << px(p.coord.y)
        << "\" r=\"6\" fill=\"" << ColorOf(p.label)
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }
  svg << "  </g>\n  <g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  int row = 0;
  for (int label : labels) {
    const int y = kMargin + 10 + 20 * row++;
    svg << "    <rect x=\"" << kPlot + 2 * kMargin << "\" y=\"" << y - 9
        << "\" width=\"10\" height=\"10\" fill=\"" << ColorOf(label) << "\"/>\n"
        << "    <text x=\"" << kPlot + 2 * kMargin + 16 << "\" y=\"" << y << "\">class " << label
        << "</text>\n";
  }
  svg << "  </g>\n</svg>\n";
  return svg.str();
}

}  // namespace saco::cli
