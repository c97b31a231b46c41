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

#ifndef POPCTL_TOOLS_SVG_HPP_
#define POPCTL_TOOLS_SVG_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "popctl/types.hpp"

namespace popctl::tools {

/// One plotted curve. Empty series are dropped, keeping the emitted
/// polyline count equal to the plotted series count.
struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<Waypoint> points;
};

/// One chart. equal_aspect keeps x and y scales identical (XY path plots);
/// time-series panels stretch to fit.
struct SvgPanel {
  std::string title;
  std::vector<SvgSeries> series;
  bool equal_aspect = false;
};

/// Renders stacked panels into one SVG document. Output is deterministic:
/// fixed canvas, shortest round-trip number formatting, series order as
/// given. Long series are downsampled to a bounded point count with the
/// final point preserved. Throws IoError when the file cannot be written.
void write_svg(const std::vector<SvgPanel>& panels,
               const std::filesystem::path& file);

/// Fixed palette: reference path and the four controllers get stable
/// colors; extra series cycle.
const char* series_color(std::size_t index);

}  // namespace popctl::tools

#endif  // POPCTL_TOOLS_SVG_HPP_
