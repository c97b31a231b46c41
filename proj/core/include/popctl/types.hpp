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

#ifndef POPCTL_TYPES_HPP_
#define POPCTL_TYPES_HPP_

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace popctl {

/// A 2D point on the reference path, in meters.
struct Waypoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

/// Planar vehicle state: pose plus linear and angular velocity.
/// The pose (x, y) refers to the rear-axle center; theta is the yaw in
/// radians, wrapped to (-pi, pi].
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double v = 0.0;      // linear velocity, m/s
  double omega = 0.0;  // angular velocity, rad/s

  Waypoint position() const { return {x, y}; }

  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

/// One actuation pair: steering angle in radians and a normalized
/// throttle/brake command in [-1, 1] (negative values brake).
struct ControlCommand {
  double steering = 0.0;
  double throttle = 0.0;

  friend bool operator==(const ControlCommand&, const ControlCommand&) = default;
};

/// Signed tracking errors of a vehicle reference point against the path.
/// Crosstrack is positive when the reference point lies left of the local
/// path direction; heading is wrapped to (-pi, pi].
struct TrackingErrors {
  double crosstrack = 0.0;  // meters
  double heading = 0.0;     // radians

  friend bool operator==(const TrackingErrors&, const TrackingErrors&) = default;
};

/// Which point of the vehicle a path query refers to.
enum class ReferencePoint { kRearAxle, kFrontAxle, kCenter };

/// Input that failed structural validation (bad config value, malformed
/// document, inconsistent scenario).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem-level failure (missing file, unwritable output).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Degree-to-radian conversion used by config ingestion; one shared
/// definition so defaults and parsed values round identically.
constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double angle) {
  const double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(angle, two_pi);
  if (wrapped <= -std::numbers::pi) wrapped += two_pi;
  return wrapped;
}

/// Euclidean distance between two points.
inline double euclidean_distance(const Waypoint& a, const Waypoint& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// The reference point of a vehicle state in world coordinates. The pose is
/// the rear axle; front axle and geometric center are offset along the yaw
/// by the wheelbase and half the wheelbase.
inline Waypoint reference_point(const VehicleState& state, ReferencePoint ref,
                                double wheelbase = 0.0) {
  switch (ref) {
    case ReferencePoint::kFrontAxle:
      return {state.x + wheelbase * std::cos(state.theta),
              state.y + wheelbase * std::sin(state.theta)};
    case ReferencePoint::kCenter:
      return {state.x + 0.5 * wheelbase * std::cos(state.theta),
              state.y + 0.5 * wheelbase * std::sin(state.theta)};
    case ReferencePoint::kRearAxle:
    default:
      return {state.x, state.y};
  }
}

}  // namespace popctl

#endif  // POPCTL_TYPES_HPP_
