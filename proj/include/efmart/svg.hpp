// Copyright 2026 The efmart Authors.
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

#ifndef EFMART_SVG_HPP_
#define EFMART_SVG_HPP_

#include <algorithm>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>

namespace efmart {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Single-series SVG line chart with labeled axes and min/max tick labels.
inline std::string line_chart_svg(std::span<const double> x, std::span<const double> y,
                                  const std::string& title, const std::string& x_label,
                                  const std::string& y_label) {
  constexpr double width = 800, height = 450;
  constexpr double left = 80, right = 20, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_lo = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
  double x_hi = x.empty() ? 1.0 : *std::max_element(x.begin(), x.end());
  double y_lo = y.empty() ? 0.0 : *std::min_element(y.begin(), y.end());
  double y_hi = y.empty() ? 1.0 : *std::max_element(y.begin(), y.end());
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }

  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  auto px = [&](double v) { return left + (v - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double v) { return top + (y_hi - v) / (y_hi - y_lo) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << xml_escape(title) << "</text>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\" font-size=\"13\">" << xml_escape(x_label) << "</text>\n"
      << "<text x=\"20\" y=\"" << top + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
      << top + plot_h / 2 << ")\">" << xml_escape(y_label) << "</text>\n"
      << "<text x=\"" << left << "\" y=\"" << top + plot_h + 18
      << "\" text-anchor=\"middle\" font-size=\"11\">" << num(x_lo) << "</text>\n"
      << "<text x=\"" << left + plot_w << "\" y=\"" << top + plot_h + 18
      << "\" text-anchor=\"middle\" font-size=\"11\">" << num(x_hi) << "</text>\n"
      << "<text x=\"" << left - 6 << "\" y=\"" << top + plot_h
      << "\" text-anchor=\"end\" font-size=\"11\">" << num(y_lo) << "</text>\n"
      << "<text x=\"" << left - 6 << "\" y=\"" << top + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << num(y_hi) << "</text>\n"
      << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.2\" points=\"";
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i) svg << ' ';
    svg << num(px(x[i])) << ',' << num(py(y[i]));
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

}  // namespace efmart

#endif  // EFMART_SVG_HPP_
