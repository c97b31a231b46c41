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

#include "track_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

namespace popctl::tools {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ParseError(std::string("track spec: ") + name + " must be > 0");
}

// Cumulative chord lengths of a dense polyline.
std::vector<double> cumulative_lengths(const std::vector<Waypoint>& pts) {
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i)
    cum[i] = cum[i - 1] + euclidean_distance(pts[i - 1], pts[i]);
  return cum;
}

Waypoint point_at(const std::vector<Waypoint>& pts,
                  const std::vector<double>& cum, std::size_t& seg, double s) {
  while (seg + 1 < cum.size() && cum[seg + 1] < s) ++seg;
  const double span = cum[seg + 1] - cum[seg];
  const double f = span > 0.0 ? (s - cum[seg]) / span : 0.0;
  const Waypoint& a = pts[seg];
  const Waypoint& b = pts[seg + 1];
  return {a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f};
}

// Open-curve arc-length sampling: ceil(L/spacing) uniform intervals, both
// endpoints exact.
std::vector<Waypoint> resample_open(const std::vector<Waypoint>& dense,
                                    double spacing) {
  const std::vector<double> cum = cumulative_lengths(dense);
  const double total = cum.back();
  const auto n =
      static_cast<std::size_t>(std::max(1.0, std::ceil(total / spacing)));
  std::vector<Waypoint> out;
  out.reserve(n + 1);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = total * (static_cast<double>(k) / static_cast<double>(n));
    out.push_back(point_at(dense, cum, seg, s));
  }
  out.push_back(dense.back());
  return out;
}

// Closed-curve arc-length sampling: round(L/spacing) points, coincident
// closing point dropped.
std::vector<Waypoint> resample_closed(const std::vector<Waypoint>& dense,
                                      double spacing) {
  const std::vector<double> cum = cumulative_lengths(dense);
  const double total = cum.back();
  const auto n = static_cast<std::size_t>(
      std::max(3.0, std::round(total / spacing)));
  std::vector<Waypoint> out;
  out.reserve(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = total * (static_cast<double>(k) / static_cast<double>(n));
    out.push_back(point_at(dense, cum, seg, s));
  }
  return out;
}

void append_arc(std::vector<Waypoint>& dense, Waypoint center, double radius,
                double a_begin, double a_end, double max_step) {
  const double sweep = a_end - a_begin;
  const auto n = static_cast<std::size_t>(
      std::max(2.0, std::ceil(std::abs(sweep) * radius / max_step)));
  for (std::size_t k = dense.empty() ? 0 : 1; k <= n; ++k) {
    const double a =
        a_begin + sweep * (static_cast<double>(k) / static_cast<double>(n));
    dense.push_back(
        {center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
}

void append_line(std::vector<Waypoint>& dense, Waypoint a, Waypoint b,
                 double max_step) {
  const double len = euclidean_distance(a, b);
  const auto n =
      static_cast<std::size_t>(std::max(1.0, std::ceil(len / max_step)));
  for (std::size_t k = dense.empty() ? 0 : 1; k <= n; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(n);
    dense.push_back({a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f});
  }
}

// Chicane lateral profile and its dense polyline. `flip_x` runs the
// chicane toward -x (the benchmark's return leg).
std::vector<Waypoint> chicane_dense(Waypoint start, double length,
                                    double amplitude, double period,
                                    bool flip_x, double max_step) {
  const auto n = static_cast<std::size_t>(
      std::max(2.0, std::ceil(length / max_step)));
  std::vector<Waypoint> dense;
  dense.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double u = length * (static_cast<double>(k) / static_cast<double>(n));
    const double y =
        amplitude * (1.0 - std::cos(2.0 * kPi * u / period));
    dense.push_back({flip_x ? start.x - u : start.x + u, start.y + y});
  }
  return dense;
}

}  // namespace

std::vector<Waypoint> generate_straight(double length, double spacing) {
  require_positive(length, "length");
  require_positive(spacing, "spacing");
  const auto n =
      static_cast<std::size_t>(std::max(1.0, std::ceil(length / spacing)));
  std::vector<Waypoint> out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    out.push_back({length * (static_cast<double>(k) / static_cast<double>(n)),
                   0.0});
  return out;
}

std::vector<Waypoint> generate_oval(double straight_length, double radius,
                                    double spacing) {
  require_positive(straight_length, "straight_length");
  require_positive(radius, "radius");
  require_positive(spacing, "spacing");
  const double s_len = straight_length;
  const double perimeter = 2.0 * s_len + 2.0 * kPi * radius;
  const auto n = static_cast<std::size_t>(
      std::max(3.0, std::round(perimeter / spacing)));
  std::vector<Waypoint> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s =
        perimeter * (static_cast<double>(k) / static_cast<double>(n));
    if (s < s_len) {
      out.push_back({s, 0.0});
    } else if (s < s_len + kPi * radius) {
      const double a = (s - s_len) / radius - kPi / 2.0;
      out.push_back({s_len + radius * std::cos(a),
                     radius + radius * std::sin(a)});
    } else if (s < 2.0 * s_len + kPi * radius) {
      out.push_back({s_len - (s - s_len - kPi * radius), 2.0 * radius});
    } else {
      const double a = (s - 2.0 * s_len - kPi * radius) / radius + kPi / 2.0;
      out.push_back({radius * std::cos(a), radius + radius * std::sin(a)});
    }
  }
  return out;
}

std::vector<Waypoint> generate_figure_eight(double radius, double spacing) {
  require_positive(radius, "radius");
  require_positive(spacing, "spacing");
  const std::size_t samples = 1 << 16;
  std::vector<Waypoint> dense;
  dense.reserve(samples + 1);
  for (std::size_t k = 0; k <= samples; ++k) {
    const double t =
        2.0 * kPi * (static_cast<double>(k) / static_cast<double>(samples));
    dense.push_back(
        {radius * std::sin(t), radius * std::sin(t) * std::cos(t)});
  }
  return resample_closed(dense, spacing);
}

std::vector<Waypoint> generate_chicane(double length, double amplitude,
                                       double period, double spacing) {
  require_positive(length, "length");
  require_positive(amplitude, "amplitude");
  require_positive(period, "period");
  require_positive(spacing, "spacing");
  const std::vector<Waypoint> dense =
      chicane_dense({0.0, 0.0}, length, amplitude, period, false,
                    std::min(0.05, spacing / 4.0));
  return resample_open(dense, spacing);
}

std::vector<Waypoint> make_benchmark_track(double spacing) {
  require_positive(spacing, "spacing");
  // Stadium oval entered near the end of the bottom straight. The throttle
  // law never brakes, so speed grows monotonically with distance; starting
  // just before the first arc puts both corners and the tight chicane in
  // the slow phase and leaves the flat-out phase on the straights.
  const double straight = 260.0;
  const double radius = 60.0;
  const double start_x = 110.0;
  const double chicane_amp = 2.5;
  const double chicane_period = 42.0;
  const double chicane_len = 3.0 * chicane_period;
  // The return straight re-traces the bottom of the stadium past the start
  // point (the chicane sits above it) and finishes well downstream, so the
  // goal is never near spawn and the final corner's exit transient is part
  // of the log.
  const double finish_x = 235.0;
  const double step = std::min(0.05, spacing / 4.0);

  std::vector<Waypoint> dense;
  append_line(dense, {start_x, 0.0}, {start_x + 5.0, 0.0}, step);
  const std::vector<Waypoint> chicane =
      chicane_dense({start_x + 5.0, 0.0}, chicane_len, chicane_amp,
                    chicane_period, false, step);
  dense.insert(dense.end(), chicane.begin() + 1, chicane.end());
  append_line(dense, {start_x + 5.0 + chicane_len, 0.0}, {straight, 0.0},
              step);
  append_arc(dense, {straight, radius}, radius, -kPi / 2.0, kPi / 2.0, step);
  append_line(dense, {straight, 2.0 * radius}, {0.0, 2.0 * radius}, step);
  append_arc(dense, {0.0, radius}, radius, kPi / 2.0, 1.5 * kPi, step);
  append_line(dense, {0.0, 0.0}, {finish_x, 0.0}, step);
  return resample_open(dense, spacing);
}

namespace {

// Per-type dimension keys; "type" and "spacing" are always allowed.
const std::vector<std::string>& dimension_keys(const std::string& type) {
  static const std::vector<std::string> straight = {"length"};
  static const std::vector<std::string> oval = {"straight_length", "radius"};
  static const std::vector<std::string> fig8 = {"radius"};
  static const std::vector<std::string> chicane = {"length", "amplitude",
                                                   "period"};
  static const std::vector<std::string> benchmark = {};
  if (type == "straight") return straight;
  if (type == "oval") return oval;
  if (type == "figure_eight") return fig8;
  if (type == "chicane") return chicane;
  if (type == "benchmark") return benchmark;
  throw ParseError("track spec: unknown type '" + type +
                   "' (expected straight, oval, figure_eight, chicane, or "
                   "benchmark)");
}

double dimension(const nlohmann::json& spec, const std::string& key) {
  if (!spec.contains(key))
    throw ParseError("track spec: missing key '" + key + "'");
  if (!spec.at(key).is_number())
    throw ParseError("track spec: " + key + " must be a number");
  return spec.at(key).get<double>();
}

}  // namespace

std::vector<Waypoint> generate_from_spec(const nlohmann::json& spec) {
  if (!spec.is_object()) throw ParseError("track spec must be a JSON object");
  if (!spec.contains("type") || !spec.at("type").is_string())
    throw ParseError("track spec: requires a string 'type' key");
  const auto type = spec.at("type").get<std::string>();
  const std::vector<std::string>& dims = dimension_keys(type);
  for (const auto& [key, value] : spec.items()) {
    (void)value;
    if (key == "type" || key == "spacing") continue;
    if (std::find(dims.begin(), dims.end(), key) == dims.end())
      throw ParseError("track spec: unknown key '" + key + "' for type '" +
                       type + "'");
  }
  double spacing = 1.0;
  if (spec.contains("spacing")) spacing = dimension(spec, "spacing");

  if (type == "straight")
    return generate_straight(dimension(spec, "length"), spacing);
  if (type == "oval")
    return generate_oval(dimension(spec, "straight_length"),
                         dimension(spec, "radius"), spacing);
  if (type == "figure_eight")
    return generate_figure_eight(dimension(spec, "radius"), spacing);
  if (type == "chicane")
    return generate_chicane(dimension(spec, "length"),
                            dimension(spec, "amplitude"),
                            dimension(spec, "period"), spacing);
  return make_benchmark_track(spacing);
}

}  // namespace popctl::tools
