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

#ifndef POPCTL_TRAJECTORY_HPP_
#define POPCTL_TRAJECTORY_HPP_

#include <cstddef>
#include <filesystem>
#include <limits>
#include <optional>
#include <vector>

#include "popctl/types.hpp"

namespace popctl {

/// Default distance-approximation threshold for lookahead queries, meters.
inline constexpr double kDefaultEpsilon = 0.01;

/// Default target inter-waypoint spacing after densification, meters.
inline constexpr double kDefaultResolution = 0.01;

/// Window (in meters of path length, each direction) used by the hinted
/// closest-point searches of the stepping wrappers and the simulator.
inline constexpr double kDefaultSearchWindow = 50.0;

/// An ordered, immutable waypoint sequence with its spacing metadata.
///
/// `resolution` is the nominal inter-waypoint spacing; `epsilon` the distance
/// approximation threshold used by lookahead queries. A `closed` path lets
/// the lookahead scan wrap past the final waypoint.
class Path {
 public:
  Path(std::vector<Waypoint> waypoints, double resolution,
       double epsilon = kDefaultEpsilon, bool closed = false);

  const std::vector<Waypoint>& waypoints() const { return waypoints_; }
  const Waypoint& operator[](std::size_t i) const { return waypoints_[i]; }
  const Waypoint& front() const { return waypoints_.front(); }
  const Waypoint& back() const { return waypoints_.back(); }
  std::size_t size() const { return waypoints_.size(); }

  double resolution() const { return resolution_; }
  double epsilon() const { return epsilon_; }
  bool closed() const { return closed_; }

 private:
  std::vector<Waypoint> waypoints_;
  double resolution_;
  double epsilon_;
  bool closed_;
};

/// Index and waypoint selected by a lookahead query.
struct LookaheadResult {
  std::size_t index = 0;
  Waypoint point;
  double lookahead_distance = 0.0;
};

/// Re-discretizes a sparse path by piecewise-linear interpolation so that no
/// consecutive spacing exceeds `resolution`. Original waypoints are kept in
/// order; the result's resolution field is set to `resolution`.
Path densify_path(const Path& sparse, double resolution);

/// Index of the waypoint closest to `position`. Ties break toward the lower
/// index. With a hint the search is restricted to `window` waypoints on each
/// side of it (global minimum within that window); without one the whole
/// path is scanned.
std::size_t closest_index(
    const Waypoint& position, const Path& path,
    std::optional<std::size_t> hint = std::nullopt,
    std::size_t window = std::numeric_limits<std::size_t>::max());

/// Scans forward from `start` and returns the first index whose distance
/// from `position` is within the path's epsilon of `ld`. Falls back to the
/// final waypoint index when no waypoint qualifies; on closed paths the scan
/// wraps past the end before falling back.
std::size_t lookahead_index(const Waypoint& position, const Path& path,
                            double ld, std::size_t start);

/// Same as lookahead_index but returns the waypoint alongside the index.
LookaheadResult lookahead_point(const Waypoint& position, const Path& path,
                                double ld, std::size_t start);

/// Crosstrack and heading error of the chosen vehicle reference point
/// against the path segment local to `closest`. Crosstrack is the signed
/// perpendicular distance to that segment's line, positive left of the
/// segment direction; heading is wrap(segment angle - vehicle yaw).
TrackingErrors compute_errors_at(const VehicleState& state, const Path& path,
                                 ReferencePoint ref, double wheelbase,
                                 std::size_t closest);

/// compute_errors_at with the closest waypoint located by exhaustive scan.
TrackingErrors compute_errors(const VehicleState& state, const Path& path,
                              ReferencePoint ref, double wheelbase = 0.0);

/// Monotone progress tracker: the closest waypoint to `position` within
/// `window_m` meters of path on each side of `current`, never behind
/// `current`. Callers keep one progress index per run and feed it back.
std::size_t advance_progress(const Waypoint& position, const Path& path,
                             std::size_t current,
                             double window_m = kDefaultSearchWindow);

/// Reads a track file: CSV with header `x,y`, one waypoint per row, meters,
/// rows in travel order. Throws IoError if unreadable, ParseError on
/// malformed content.
std::vector<Waypoint> load_track_csv(const std::filesystem::path& file);

/// Writes waypoints in the track file format accepted by load_track_csv.
void save_track_csv(const std::vector<Waypoint>& waypoints,
                    const std::filesystem::path& file);

}  // namespace popctl

#endif  // POPCTL_TRAJECTORY_HPP_
