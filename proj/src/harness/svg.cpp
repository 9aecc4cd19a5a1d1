// Copyright 2026 The wclt Authors.
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

#include "wclt/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wclt {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 48.0;
constexpr double kRange = 4.0;

std::string escape(const std::string& s) {
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

}  // namespace

std::string zscore_histogram_svg(std::span<const double> z, const std::string& title, int bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  const double width = 2.0 * kRange / bins;
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  std::size_t used = 0;
  for (double v : z) {
    if (!std::isfinite(v)) continue;
    const int b = std::clamp(static_cast<int>(std::floor((v + kRange) / width)), 0, bins - 1);
    counts[static_cast<std::size_t>(b)] += 1.0;
    ++used;
  }
  const double peak_normal = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  double ymax = peak_normal;
  for (double& c : counts) {
    c = used ? c / (static_cast<double>(used) * width) : 0.0;
    ymax = std::max(ymax, c);
  }
  ymax *= 1.1;

  const double plot_w = kWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  auto px = [&](double x) { return kMargin + (x + kRange) / (2 * kRange) * plot_w; };
  auto py = [&](double y) { return kHeight - kMargin - y / ymax * plot_h; };

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"14\">"
     << escape(title) << " (N=" << used << ")</text>\n";
  for (int b = 0; b < bins; ++b) {
    const double x0 = -kRange + b * width;
    const double h = counts[static_cast<std::size_t>(b)];
    os << "<rect x=\"" << px(x0) << "\" y=\"" << py(h) << "\" width=\"" << px(x0 + width) - px(x0)
       << "\" height=\"" << py(0) - py(h) << "\" fill=\"#9ecae1\" stroke=\"#3182bd\"/>\n";
  }
  os << "<polyline fill=\"none\" stroke=\"#de2d26\" stroke-width=\"2\" points=\"";
  for (int k = 0; k <= 200; ++k) {
    const double x = -kRange + 2 * kRange * k / 200.0;
    os << px(x) << ',' << py(peak_normal * std::exp(-0.5 * x * x)) << ' ';
  }
  os << "\"/>\n";
  os << "<line x1=\"" << px(-kRange) << "\" y1=\"" << py(0) << "\" x2=\"" << px(kRange) << "\" y2=\""
     << py(0) << "\" stroke=\"black\"/>\n";
  for (int t = -4; t <= 4; ++t) {
    os << "<text x=\"" << px(t) << "\" y=\"" << py(0) + 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << t << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace wclt
