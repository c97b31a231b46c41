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

#include "popctl/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "popctl/vehicle.hpp"

namespace popctl {

double clamp_steering(double delta, double limit) {
  return std::min(std::max(delta, -limit), limit);
}

double pid_step(const PidConfig& cfg, PidState& st, double error, double dt,
                double limit) {
  if (cfg.buffer_len < 1) throw std::invalid_argument("buffer_len must be >= 1");
  if (st.error_buffer.size() == cfg.buffer_len) st.error_buffer.pop_front();
  st.error_buffer.push_back(error);
  const double integral =
      std::accumulate(st.error_buffer.begin(), st.error_buffer.end(), 0.0);
  const double derivative = (error - st.prev_error) / dt;
  st.prev_error = error;
  return clamp_steering(cfg.kp * error + cfg.ki * integral + cfg.kd * derivative,
                        limit);
}

double pure_pursuit_step(const PurePursuitConfig& cfg,
                         const VehicleState& state, const Path& path,
                         std::size_t search_start, double limit) {
  const double v_eff = std::max(state.v, cfg.min_speed_floor);
  const double ld = cfg.kv * v_eff;
  const Waypoint rear = state.position();
  const LookaheadResult lp = lookahead_point(rear, path, ld, search_start);
  const double alpha =
      wrap_angle(std::atan2(lp.point.y - rear.y, lp.point.x - rear.x) -
                 state.theta);
  return clamp_steering(
      std::atan(2.0 * cfg.wheelbase * std::sin(alpha) / (cfg.kv * v_eff)),
      limit);
}

double stanley_step(const StanleyConfig& cfg, const VehicleState& state,
                    const Path& path, double wheelbase, double limit,
                    std::size_t closest_hint) {
  const Waypoint front =
      reference_point(state, ReferencePoint::kFrontAxle, wheelbase);
  const auto window = static_cast<std::size_t>(
      std::max(1.0, std::ceil(kDefaultSearchWindow / path.resolution())));
  const std::size_t closest =
      closest_index(front, path, closest_hint, window);
  const TrackingErrors e = compute_errors_at(
      state, path, ReferencePoint::kFrontAxle, wheelbase, closest);
  const double cross_term =
      std::atan(cfg.k_cross * e.crosstrack / (cfg.ks + cfg.kv * state.v));
  return clamp_steering(e.heading - cross_term, limit);
}

std::vector<double> build_candidates(double prev, double nbd,
                                     std::size_t resolution, double limit) {
  if (resolution < 3 || resolution % 2 == 0)
    throw std::invalid_argument("candidate resolution must be odd and >= 3");
  if (!(nbd > 0.0)) throw std::invalid_argument("nbd must be > 0");
  const auto half = static_cast<std::ptrdiff_t>(resolution / 2);
  const double step = nbd / static_cast<double>(half);
  std::vector<double> candidates;
  candidates.reserve(resolution);
  for (std::ptrdiff_t i = -half; i <= half; ++i) {
    // i * step mirrors exactly about zero, keeping the grid symmetric and
    // the center element equal to clamp(prev).
    candidates.push_back(
        clamp_steering(prev + static_cast<double>(i) * step, limit));
  }
  return candidates;
}

double pop_step(const PopConfig& cfg, PopState& st, const VehicleState& state,
                const Path& path, double limit) {
  const Waypoint rear = state.position();
  st.search_start = advance_progress(rear, path, st.search_start);
  const double ld = cfg.ld_min + cfg.kv * state.v;
  const LookaheadResult lp = lookahead_point(rear, path, ld, st.search_start);
  const std::vector<double> candidates =
      build_candidates(st.prev_steering, cfg.nbd, cfg.resolution, limit);
  double best = st.prev_steering;
  double best_d = std::numeric_limits<double>::infinity();
  for (const double delta : candidates) {
    const Waypoint pred = predict_location(state, delta, cfg.predict_dt);
    const double d = euclidean_distance(pred, lp.point);
    if (d < best_d) {
      best_d = d;
      best = delta;
    }
  }
  st.prev_steering = best;
  return best;
}

double longitudinal_step(const LongitudinalConfig& cfg, double v,
                         double steering) {
  const double mag = std::min(std::abs(steering), cfg.delta_lim);
  const double headroom = (cfg.v_lim - v) / cfg.v_lim;
  const double tau =
      cfg.k_tau + (headroom - mag / cfg.delta_lim) * (1.0 - cfg.k_tau);
  return std::clamp(tau, -1.0, 1.0);
}

const char* controller_label(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kPid:
      return "pid";
    case ControllerKind::kPurePursuit:
      return "pure_pursuit";
    case ControllerKind::kStanley:
      return "stanley";
    case ControllerKind::kPop:
      return "pop";
  }
  return "unknown";
}

ControllerKind lateral_kind(const LateralConfig& cfg) {
  switch (cfg.index()) {
    case 0:
      return ControllerKind::kPid;
    case 1:
      return ControllerKind::kPurePursuit;
    case 2:
      return ControllerKind::kStanley;
    default:
      return ControllerKind::kPop;
  }
}

LateralController::LateralController(LateralConfig config, double wheelbase,
                                     double steering_limit)
    : config_(std::move(config)),
      kind_(lateral_kind(config_)),
      wheelbase_(wheelbase),
      steering_limit_(steering_limit) {}

double LateralController::step(const VehicleState& state, const Path& path,
                               const TrackingErrors& rear_errors, double dt,
                               std::size_t progress) {
  switch (kind_) {
    case ControllerKind::kPid:
      // PID steers against the crosstrack error: left of path (positive
      // crosstrack) must command negative steering.
      return pid_step(std::get<PidConfig>(config_), pid_state_,
                      -rear_errors.crosstrack, dt, steering_limit_);
    case ControllerKind::kPurePursuit:
      return pure_pursuit_step(std::get<PurePursuitConfig>(config_), state,
                               path, progress, steering_limit_);
    case ControllerKind::kStanley:
      return stanley_step(std::get<StanleyConfig>(config_), state, path,
                          wheelbase_, steering_limit_, progress);
    case ControllerKind::kPop:
      break;
  }
  if (pop_state_.search_start < progress) pop_state_.search_start = progress;
  return pop_step(std::get<PopConfig>(config_), pop_state_, state, path,
                  steering_limit_);
}

}  // namespace popctl
