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

#include "popctl/vehicle.hpp"

#include <algorithm>
#include <cmath>

namespace popctl {

namespace {

double accel_from_throttle(double throttle, const PlantParams& params) {
  return throttle >= 0.0 ? throttle * params.max_accel
                         : throttle * params.max_decel;
}

double next_speed(const VehicleState& state, const ControlCommand& cmd,
                  double dt, const PlantParams& params) {
  const double a = accel_from_throttle(cmd.throttle, params);
  return std::clamp(state.v + a * dt, 0.0, params.v_cap);
}

}  // namespace

Waypoint predict_location(const VehicleState& state, double steering,
                          double dt) {
  const double phi = state.theta + steering;
  return {state.x + state.v * std::cos(phi) * dt,
          state.y + state.v * std::sin(phi) * dt};
}

VehicleState predict_state(const VehicleState& state,
                           const ControlCommand& cmd, double dt,
                           const PlantParams& params) {
  const Waypoint p = predict_location(state, cmd.steering, dt);
  VehicleState next;
  next.x = p.x;
  next.y = p.y;
  next.theta = wrap_angle(state.theta + state.omega * dt);
  next.v = next_speed(state, cmd, dt, params);
  next.omega = (next.v / params.wheelbase) * std::tan(cmd.steering);
  return next;
}

VehicleState plant_step(const VehicleState& state, const ControlCommand& cmd,
                        double dt, const PlantParams& params) {
  const Waypoint p = predict_location(state, cmd.steering, dt);
  VehicleState next;
  next.x = p.x;
  next.y = p.y;
  next.v = next_speed(state, cmd, dt, params);
  next.omega = (next.v / params.wheelbase) * std::tan(cmd.steering);
  next.theta = wrap_angle(state.theta + next.omega * dt);
  return next;
}

}  // namespace popctl
