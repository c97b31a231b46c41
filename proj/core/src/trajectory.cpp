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

#include "popctl/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>

#include "popctl/format.hpp"

namespace popctl {

namespace {

bool finite(const Waypoint& w) {
  return std::isfinite(w.x) && std::isfinite(w.y);
}

// Local path segment at a waypoint: the one leaving it, except at the end.
std::size_t segment_base(const Path& path, std::size_t closest) {
  return closest + 1 < path.size() ? closest : path.size() - 2;
}

}  // namespace

Path::Path(std::vector<Waypoint> waypoints, double resolution, double epsilon,
           bool closed)
    : waypoints_(std::move(waypoints)),
      resolution_(resolution),
      epsilon_(epsilon),
      closed_(closed) {
  if (waypoints_.size() < 2)
    throw ParseError("path needs at least 2 waypoints, got " +
                     std::to_string(waypoints_.size()));
  if (!(resolution_ > 0.0)) throw ParseError("path resolution must be > 0");
  if (!(epsilon_ > 0.0)) throw ParseError("path epsilon must be > 0");
  for (std::size_t i = 0; i < waypoints_.size(); ++i) {
    if (!finite(waypoints_[i]))
      throw ParseError("non-finite waypoint at index " + std::to_string(i));
    if (i > 0 && waypoints_[i] == waypoints_[i - 1])
      throw ParseError("coincident consecutive waypoints at index " +
                       std::to_string(i));
  }
}

Path densify_path(const Path& sparse, double resolution) {
  if (!(resolution > 0.0))
    throw std::invalid_argument("densify resolution must be > 0");
  const auto& src = sparse.waypoints();
  std::vector<Waypoint> out;
  std::size_t estimate = 0;
  for (std::size_t i = 0; i + 1 < src.size(); ++i)
    estimate += static_cast<std::size_t>(
        std::ceil(euclidean_distance(src[i], src[i + 1]) / resolution));
  out.reserve(estimate + 1);
  for (std::size_t i = 0; i + 1 < src.size(); ++i) {
    const Waypoint& a = src[i];
    const Waypoint& b = src[i + 1];
    const double len = euclidean_distance(a, b);
    const auto n = static_cast<std::size_t>(
        std::max(1.0, std::ceil(len / resolution)));
    for (std::size_t k = 0; k < n; ++k) {
      const double f = static_cast<double>(k) / static_cast<double>(n);
      out.push_back({a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f});
    }
  }
  out.push_back(src.back());
  return Path(std::move(out), resolution, sparse.epsilon(), sparse.closed());
}

std::size_t closest_index(const Waypoint& position, const Path& path,
                          std::optional<std::size_t> hint,
                          std::size_t window) {
  std::size_t lo = 0;
  std::size_t hi = path.size() - 1;
  if (hint) {
    const std::size_t h = std::min(*hint, hi);
    lo = h > window ? h - window : 0;
    hi = h + window < h ? hi : std::min(h + window, hi);  // overflow guard
  }
  std::size_t best = lo;
  double best_d = euclidean_distance(position, path[lo]);
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    const double d = euclidean_distance(position, path[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::size_t lookahead_index(const Waypoint& position, const Path& path,
                            double ld, std::size_t start) {
  const double eps = path.epsilon();
  const std::size_t len = path.size();
  for (std::size_t i = start; i < len; ++i) {
    if (std::abs(euclidean_distance(position, path[i]) - ld) <= eps) return i;
  }
  if (path.closed()) {
    for (std::size_t i = 0; i < start; ++i) {
      if (std::abs(euclidean_distance(position, path[i]) - ld) <= eps)
        return i;
    }
  }
  return len - 1;
}

LookaheadResult lookahead_point(const Waypoint& position, const Path& path,
                                double ld, std::size_t start) {
  const std::size_t i = lookahead_index(position, path, ld, start);
  return {i, path[i], ld};
}

TrackingErrors compute_errors_at(const VehicleState& state, const Path& path,
                                 ReferencePoint ref, double wheelbase,
                                 std::size_t closest) {
  const Waypoint p = reference_point(state, ref, wheelbase);
  const std::size_t base = segment_base(path, closest);
  const Waypoint& a = path[base];
  const Waypoint& b = path[base + 1];
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double seg_len = std::sqrt(dx * dx + dy * dy);
  const double rx = p.x - a.x;
  const double ry = p.y - a.y;
  TrackingErrors e;
  e.crosstrack = (dx * ry - dy * rx) / seg_len;  // positive left of segment
  e.heading = wrap_angle(std::atan2(dy, dx) - state.theta);
  return e;
}

TrackingErrors compute_errors(const VehicleState& state, const Path& path,
                              ReferencePoint ref, double wheelbase) {
  const Waypoint p = reference_point(state, ref, wheelbase);
  return compute_errors_at(state, path, ref, wheelbase,
                           closest_index(p, path));
}

std::size_t advance_progress(const Waypoint& position, const Path& path,
                             std::size_t current, double window_m) {
  const auto window = static_cast<std::size_t>(
      std::max(1.0, std::ceil(window_m / path.resolution())));
  const std::size_t lo = std::min(current, path.size() - 1);
  const std::size_t hi = std::min(lo + window, path.size() - 1);
  std::size_t best = lo;
  double best_d = euclidean_distance(position, path[lo]);
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    const double d = euclidean_distance(position, path[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

namespace {

double parse_coord(std::string_view field, std::size_t line_no,
                   const char* name) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value))
    throw ParseError("track line " + std::to_string(line_no) + ": bad " +
                     name + " value '" + std::string(field) + "'");
  return value;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

std::vector<Waypoint> load_track_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open track file: " + file.string());
  std::string raw;
  if (!std::getline(in, raw))
    throw ParseError("track file is empty: " + file.string());
  if (strip_cr(raw) != "x,y")
    throw ParseError("track file must start with header 'x,y', got '" + raw +
                     "'");
  std::vector<Waypoint> waypoints;
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos)
      throw ParseError("track line " + std::to_string(line_no) +
                       ": expected 'x,y' pair, got '" + std::string(line) +
                       "'");
    waypoints.push_back({parse_coord(line.substr(0, comma), line_no, "x"),
                         parse_coord(line.substr(comma + 1), line_no, "y")});
  }
  return waypoints;
}

void save_track_csv(const std::vector<Waypoint>& waypoints,
                    const std::filesystem::path& file) {
  std::string out = "x,y\n";
  for (const Waypoint& w : waypoints) {
    append_double(out, w.x);
    out.push_back(',');
    append_double(out, w.y);
    out.push_back('\n');
  }
  std::ofstream f(file, std::ios::binary);
  if (!f || !(f << out))
    throw IoError("cannot write track file: " + file.string());
}

}  // namespace popctl
