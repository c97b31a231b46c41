/*
 * Copyright 2026 The popctl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "popctl/format.hpp"

namespace popctl::tools {

namespace {

constexpr double kCanvasW = 960.0;
constexpr double kPanelH = 480.0;
constexpr double kMargin = 56.0;
constexpr std::size_t kMaxPointsPerSeries = 2000;

struct Bounds {
  double min_x = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void include(const Waypoint& p) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  bool valid() const { return min_x <= max_x && min_y <= max_y; }
};

void pad(double& lo, double& hi) {
  const double span = hi - lo;
  const double p = span > 0.0 ? 0.05 * span : 1.0;
  lo -= p;
  hi += p;
}

std::string escape_text(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void append_attr_num(std::string& out, double v) {
  // Pixel coordinates rounded to centi-pixels keep the file compact while
  // staying deterministic.
  append_double(out, std::round(v * 100.0) / 100.0);
}

}  // namespace

const char* series_color(std::size_t index) {
  static const char* kPalette[] = {"#777777", "#d62728", "#1f77b4",
                                   "#2ca02c", "#9467bd", "#ff7f0e",
                                   "#8c564b", "#17becf"};
  return kPalette[index % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

void write_svg(const std::vector<SvgPanel>& panels,
               const std::filesystem::path& file) {
  const double total_h = kPanelH * static_cast<double>(panels.size());
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
  append_double(out, kCanvasW);
  out += "\" height=\"";
  append_double(out, total_h);
  out += "\" viewBox=\"0 0 ";
  append_double(out, kCanvasW);
  out.push_back(' ');
  append_double(out, total_h);
  out += "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  for (std::size_t pi = 0; pi < panels.size(); ++pi) {
    const SvgPanel& panel = panels[pi];
    const double top = kPanelH * static_cast<double>(pi);
    const double plot_x = kMargin;
    const double plot_y = top + kMargin;
    const double plot_w = kCanvasW - 2.0 * kMargin;
    const double plot_h = kPanelH - 2.0 * kMargin;

    Bounds b;
    for (const SvgSeries& s : panel.series)
      for (const Waypoint& p : s.points) b.include(p);
    if (!b.valid()) b = Bounds{0.0, 1.0, 0.0, 1.0};
    pad(b.min_x, b.max_x);
    pad(b.min_y, b.max_y);

    double sx = plot_w / (b.max_x - b.min_x);
    double sy = plot_h / (b.max_y - b.min_y);
    if (panel.equal_aspect) sx = sy = std::min(sx, sy);
    const double cx = plot_x + plot_w / 2.0;
    const double cy = plot_y + plot_h / 2.0;
    const double mx = (b.min_x + b.max_x) / 2.0;
    const double my = (b.min_y + b.max_y) / 2.0;
    const auto to_px = [&](const Waypoint& p) {
      return Waypoint{cx + (p.x - mx) * sx, cy - (p.y - my) * sy};
    };

    out += "<rect x=\"";
    append_attr_num(out, plot_x);
    out += "\" y=\"";
    append_attr_num(out, plot_y);
    out += "\" width=\"";
    append_attr_num(out, plot_w);
    out += "\" height=\"";
    append_attr_num(out, plot_h);
    out += "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    out += "<text x=\"";
    append_attr_num(out, plot_x);
    out += "\" y=\"";
    append_attr_num(out, top + kMargin - 16.0);
    out += "\" font-family=\"sans-serif\" font-size=\"16\">" +
           escape_text(panel.title) + "</text>\n";

    double legend_y = plot_y + 14.0;
    for (const SvgSeries& s : panel.series) {
      if (s.points.empty()) continue;
      const std::size_t stride =
          std::max<std::size_t>(1, s.points.size() / kMaxPointsPerSeries);
      out += "<polyline fill=\"none\" stroke=\"" + s.color +
             "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.points.size(); i += stride) {
        const Waypoint px = to_px(s.points[i]);
        append_attr_num(out, px.x);
        out.push_back(',');
        append_attr_num(out, px.y);
        out.push_back(' ');
      }
      const Waypoint last = to_px(s.points.back());
      append_attr_num(out, last.x);
      out.push_back(',');
      append_attr_num(out, last.y);
      out += "\"/>\n";
      out += "<text x=\"";
      append_attr_num(out, plot_x + plot_w - 150.0);
      out += "\" y=\"";
      append_attr_num(out, legend_y);
      out += "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" +
             s.color + "\">" + escape_text(s.label) + "</text>\n";
      legend_y += 14.0;
    }
  }
  out += "</svg>\n";

  std::ofstream f(file, std::ios::binary);
  if (!f || !(f << out))
    throw IoError("cannot write svg: " + file.string());
}

}  // namespace popctl::tools
