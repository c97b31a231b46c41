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

#ifndef POPCTL_TOOLS_SCENARIO_HPP_
#define POPCTL_TOOLS_SCENARIO_HPP_

#include <filesystem>
#include <vector>

#include "popctl/sim.hpp"

namespace popctl::tools {

/// A scenario document expanded into runnable form: the shared run setup
/// plus one lateral config per requested controller ("controller" gives
/// one, "controllers" a list), and the output toggles.
struct LoadedScenario {
  Scenario base;  // base.lateral holds the first controller
  std::vector<LateralConfig> controllers;
  bool svg = true;
  std::filesystem::path output_dir;  // empty unless the file sets output.dir
};

/// Parses a scenario JSON document. Strict: unknown keys anywhere reject
/// the file; radians are the native angle unit with *_deg convenience keys
/// converted at parse time; track file references resolve relative to the
/// scenario file. Throws ParseError on structural problems and IoError on
/// unreadable files.
LoadedScenario load_scenario_file(const std::filesystem::path& file);

/// Scenario for controller i of a loaded document (shared fields + that
/// lateral config, name suffixed with the controller label).
Scenario scenario_for(const LoadedScenario& doc, std::size_t index);

}  // namespace popctl::tools

#endif  // POPCTL_TOOLS_SCENARIO_HPP_
