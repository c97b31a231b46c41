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

#ifndef POPCTL_CONTROLLERS_HPP_
#define POPCTL_CONTROLLERS_HPP_

#include <cstddef>
#include <deque>
#include <variant>
#include <vector>

#include "popctl/trajectory.hpp"
#include "popctl/types.hpp"

namespace popctl {

/// PID gains over crosstrack error plus the FIFO window bounding the
/// integral term.
struct PidConfig {
  double kp = 0.25;
  double ki = 0.01;
  double kd = 0.2;
  std::size_t buffer_len = 500;

  friend bool operator==(const PidConfig&, const PidConfig&) = default;
};

/// PID run state: bounded error window and the previous error for the
/// derivative term.
struct PidState {
  std::deque<double> error_buffer;
  double prev_error = 0.0;
};

/// Pure-Pursuit tunables. Lookahead distance is kv * speed, with the speed
/// floored to keep the law defined at standstill.
struct PurePursuitConfig {
  double wheelbase = 2.89;      // meters
  double kv = 0.9;              // seconds, lookahead-velocity coefficient
  double min_speed_floor = 1.0; // m/s

  friend bool operator==(const PurePursuitConfig&,
                         const PurePursuitConfig&) = default;
};

/// Stanley tunables: crosstrack gain, velocity coefficient, and the
/// softening constant guarding the v = 0 division.
struct StanleyConfig {
  double k_cross = 1.5;
  double kv = 1.3;
  double ks = 1e-5;  // m/s

  friend bool operator==(const StanleyConfig&, const StanleyConfig&) = default;
};

/// Proximal steering-search tunables. The candidate list spans
/// prev +- nbd at `resolution` points; each candidate is scored by
/// predicting the vehicle location `predict_dt` ahead.
struct PopConfig {
  double kv = 0.2;               // seconds, lookahead-velocity coefficient
  double ld_min = 2.0;           // meters, minimum lookahead distance
  double nbd = deg_to_rad(3.0);  // radians, search half-range
  std::size_t resolution = 21;   // candidate count, odd
  double predict_dt = 0.05;      // seconds, prediction horizon

  friend bool operator==(const PopConfig&, const PopConfig&) = default;
};

/// Proximal search run state: previous steering command (search center) and
/// the monotone waypoint hint for lookahead queries.
struct PopState {
  double prev_steering = 0.0;
  std::size_t search_start = 0;
};

/// Coupled longitudinal law constants: cutoff throttle plus the steering
/// and speed normalization limits.
struct LongitudinalConfig {
  double k_tau = 0.5;
  double delta_lim = 1.22;  // radians
  double v_lim = 69.44;     // m/s

  friend bool operator==(const LongitudinalConfig&,
                         const LongitudinalConfig&) = default;
};

/// Saturates a steering command to [-limit, limit].
double clamp_steering(double delta, double limit);

/// PID over the signed error fed by the caller: pushes `error` into the
/// FIFO (evicting the oldest entry when full), returns
/// clamp(kp*e + ki*sum(buffer) + kd*(e - prev)/dt, limit), and records e as
/// the new previous error.
double pid_step(const PidConfig& cfg, PidState& st, double error, double dt,
                double limit);

/// Pure-Pursuit step. Lookahead distance kv * max(v, floor); the lookahead
/// point is the first waypoint from `search_start` at that distance from
/// the rear axle; alpha is the bearing of that point in the vehicle frame;
/// returns clamp(atan(2 L sin(alpha) / (kv * max(v, floor))), limit).
double pure_pursuit_step(const PurePursuitConfig& cfg,
                         const VehicleState& state, const Path& path,
                         std::size_t search_start, double limit);

/// Stanley step at the front axle. `closest_hint` seeds the windowed
/// closest-point search; errors come from compute_errors_at. Returns
/// clamp(heading_err - atan(k_cross * crosstrack / (ks + kv * v)), limit):
/// a vehicle left of the path (positive crosstrack) gets a negative
/// crosstrack contribution, steering it back toward the path.
double stanley_step(const StanleyConfig& cfg, const VehicleState& state,
                    const Path& path, double wheelbase, double limit,
                    std::size_t closest_hint = 0);

/// Candidate steering grid for the proximal search: `resolution` evenly
/// spaced values spanning [prev - nbd, prev + nbd] in ascending pre-clamp
/// order, each clamped to [-limit, limit]. The center element is
/// clamp(prev) exactly, and offsets mirror exactly about the center.
std::vector<double> build_candidates(double prev, double nbd,
                                     std::size_t resolution, double limit);

/// Proximal steering search. Lookahead distance ld_min + kv * v; the
/// lookahead point comes from the monotone hint in `st`; each candidate is
/// scored by the distance from its predicted location to that point; the
/// earliest strict minimizer wins (initialized to prev_steering, so an
/// empty candidate list returns the previous command). Updates
/// st.prev_steering and advances st.search_start.
double pop_step(const PopConfig& cfg, PopState& st, const VehicleState& state,
                const Path& path, double limit);

/// Throttle law coupling speed headroom against steering effort:
/// tau = k_tau + [(v_lim - v)/v_lim - |delta|/delta_lim] * (1 - k_tau),
/// with the steering magnitude saturated at delta_lim first and the result
/// clamped to [-1, 1]. Monotonically decreasing in v and |delta|.
double longitudinal_step(const LongitudinalConfig& cfg, double v,
                         double steering);

/// Names the four lateral laws.
enum class ControllerKind { kPid, kPurePursuit, kStanley, kPop };

/// Display label for a controller kind ("pid", "pure_pursuit", "stanley",
/// "pop").
const char* controller_label(ControllerKind kind);

/// Tagged choice among the four lateral controller configs.
using LateralConfig =
    std::variant<PidConfig, PurePursuitConfig, StanleyConfig, PopConfig>;

/// ControllerKind of the active variant.
ControllerKind lateral_kind(const LateralConfig& cfg);

/// Uniform stepping facade over the four laws. Owns the mutable per-run
/// state (PID buffer, proximal search state); one instance serves exactly
/// one simulation run.
class LateralController {
 public:
  LateralController(LateralConfig config, double wheelbase,
                    double steering_limit);

  /// One control tick. `rear_errors` are the tracking errors at the rear
  /// axle for the current state (what PID consumes); `progress` is the
  /// monotone closest-waypoint index maintained by the caller.
  double step(const VehicleState& state, const Path& path,
              const TrackingErrors& rear_errors, double dt,
              std::size_t progress);

  ControllerKind kind() const { return kind_; }

 private:
  LateralConfig config_;
  ControllerKind kind_;
  double wheelbase_;
  double steering_limit_;
  PidState pid_state_;
  PopState pop_state_;
};

}  // namespace popctl

#endif  // POPCTL_CONTROLLERS_HPP_
