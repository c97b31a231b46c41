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

#ifndef POPCTL_TOOLS_COMMANDS_HPP_
#define POPCTL_TOOLS_COMMANDS_HPP_

#include <filesystem>

namespace popctl::tools {

/// Process exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;       // bad arguments or parse failure
inline constexpr int kExitIo = 2;          // unreadable/unwritable files
inline constexpr int kExitDivergence = 3;  // a run left the track

/// Runs one scenario and writes run.csv, metrics.json, and (unless the
/// scenario disables it) trajectory.svg into out_dir. deterministic zeroes
/// the latency fields so outputs are byte-stable.
int cmd_simulate(const std::filesystem::path& scenario_path,
                 const std::filesystem::path& out_dir, bool deterministic);

/// Runs every controller of the scenario on the shared setup and writes
/// comparison.json plus comparison.svg into out_dir. POP_TRACK_THREADS
/// caps run parallelism.
int cmd_compare(const std::filesystem::path& scenario_path,
                const std::filesystem::path& out_dir, bool deterministic);

/// Repeats the scenario `iterations` times and reports lateral-controller
/// latency (mean/p50/p99 microseconds) to stdout and bench.json.
int cmd_bench(const std::filesystem::path& scenario_path, int iterations);

/// Generates a track from a spec document and writes it as CSV.
int cmd_gen_track(const std::filesystem::path& spec_path,
                  const std::filesystem::path& out_file);

}  // namespace popctl::tools

#endif  // POPCTL_TOOLS_COMMANDS_HPP_
