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

#ifndef POPCTL_VEHICLE_HPP_
#define POPCTL_VEHICLE_HPP_

#include "popctl/types.hpp"

namespace popctl {

/// Physical constants of the simulated vehicle. Steering and speed limits
/// double as the saturation bounds of every controller.
struct PlantParams {
  double wheelbase = 2.89;       // meters, front to rear axle
  double steering_limit = 1.22;  // radians, |steering| cap
  double max_accel = 3.0;        // m/s^2 at full throttle
  double max_decel = 8.0;        // m/s^2 at full brake
  double v_cap = 69.44;          // m/s plant-side speed ceiling

  friend bool operator==(const PlantParams&, const PlantParams&) = default;
};

/// One-step position prediction of the kinematic bicycle model: the vehicle
/// translates along phi = theta + steering at its current speed. Pure; this
/// is the model half of the proximal steering search.
Waypoint predict_location(const VehicleState& state, double steering,
                          double dt);

/// Full state transition. Position rows match predict_location; yaw
/// integrates the state's stored angular velocity; speed integrates the
/// throttle mapped through the acceleration scales and clamps to
/// [0, v_cap]; the new angular velocity is the steering geometry rate
/// (v'/L)*tan(steering). Deterministic: identical inputs give bit-identical
/// outputs.
VehicleState predict_state(const VehicleState& state,
                           const ControlCommand& cmd, double dt,
                           const PlantParams& params = PlantParams{});

/// Closed-loop plant tick. Same transition as predict_state except yaw
/// integrates the freshly computed steering-geometry rate instead of the
/// stored one, so the plant cannot inherit a stale angular velocity.
VehicleState plant_step(const VehicleState& state, const ControlCommand& cmd,
                        double dt, const PlantParams& params);

}  // namespace popctl

#endif  // POPCTL_VEHICLE_HPP_
