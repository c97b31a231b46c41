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

#ifndef POPCTL_TOOLS_TRACK_GEN_HPP_
#define POPCTL_TOOLS_TRACK_GEN_HPP_

#include <vector>

#include <json.hpp>

#include "popctl/types.hpp"

namespace popctl::tools {

/// Straight track along +x from the origin: length/spacing in meters,
/// endpoint included exactly.
std::vector<Waypoint> generate_straight(double length, double spacing);

/// Stadium oval: two straights of `straight_length` joined by semicircles
/// of `radius`, traversed counterclockwise from the origin heading +x.
/// Closed-loop sampling: round(perimeter / spacing) points, the coincident
/// final point dropped.
std::vector<Waypoint> generate_oval(double straight_length, double radius,
                                    double spacing);

/// Self-crossing figure eight (Gerono lemniscate, half-width `radius`),
/// arc-length sampled like the oval. Curvature changes sign at the center
/// crossing.
std::vector<Waypoint> generate_figure_eight(double radius, double spacing);

/// Straight-line chicane: lateral profile amplitude*(1 - cos(2*pi*u/period))
/// over u in [0, length], arc-length sampled with the endpoint included.
/// Curvature alternates sign every half period.
std::vector<Waypoint> generate_chicane(double length, double amplitude,
                                       double period, double spacing);

/// The bundled benchmark course: a stadium oval entered late on its bottom
/// straight, with a chicane right after the start and a return leg that
/// re-traces the bottom straight and finishes well clear of spawn. Total
/// length just over 1 km at the default 1 m spacing.
std::vector<Waypoint> make_benchmark_track(double spacing = 1.0);

/// Dispatches on a parsed track-spec document: {"type": "straight" |
/// "oval" | "figure_eight" | "chicane" | "benchmark", ...dimensions,
/// "spacing": meters (default 1)}. Unknown keys or degenerate dimensions
/// raise ParseError.
std::vector<Waypoint> generate_from_spec(const nlohmann::json& spec);

}  // namespace popctl::tools

#endif  // POPCTL_TOOLS_TRACK_GEN_HPP_
