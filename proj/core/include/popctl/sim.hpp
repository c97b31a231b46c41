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

#ifndef POPCTL_SIM_HPP_
#define POPCTL_SIM_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "popctl/controllers.hpp"
#include "popctl/trajectory.hpp"
#include "popctl/types.hpp"
#include "popctl/vehicle.hpp"

namespace popctl {

/// Run termination rule: the vehicle reaches the neighborhood of the final
/// waypoint, or the step cap is hit, whichever comes first.
struct StopRule {
  std::size_t max_steps = 20000;
  double finish_radius = 2.0;  // meters around the final waypoint

  friend bool operator==(const StopRule&, const StopRule&) = default;
};

/// Everything one closed-loop run needs: the sparse track, discretization
/// and timing constants, the lateral controller choice, and the shared
/// longitudinal/plant/spawn setup.
struct Scenario {
  std::string name;
  std::vector<Waypoint> track;      // sparse source waypoints, travel order
  double densify_resolution = kDefaultResolution;
  double epsilon = kDefaultEpsilon;
  bool closed_loop_lookahead = false;
  double dt = 0.05;                 // seconds per control tick
  LateralConfig lateral;
  LongitudinalConfig longitudinal;
  PlantParams plant;
  VehicleState spawn;
  StopRule stop;
  double bailout_crosstrack = 50.0; // meters, divergence guard
};

/// Why a run ended.
enum class Termination { kFinished, kMaxSteps, kDiverged };

/// Display label for a termination reason ("finished", "max_steps",
/// "diverged").
const char* termination_label(Termination t);

/// One control tick of telemetry. Errors are sampled at the rear axle
/// before the controller acts; latency covers the lateral controller call
/// only.
struct StepRecord {
  double t = 0.0;  // seconds, k * dt
  VehicleState state;
  ControlCommand command;
  TrackingErrors errors;
  double latency_us = 0.0;
};

/// Full run telemetry plus provenance.
struct RunLog {
  std::string scenario_digest;
  std::vector<StepRecord> steps;
  Termination termination = Termination::kMaxSteps;
  double densify_us = 0.0;  // one-time track densification cost
};

/// Table-style aggregates over one run.
struct TrackingMetrics {
  double mean_abs_crosstrack = 0.0;  // meters
  double mean_abs_heading = 0.0;     // radians
  double max_abs_crosstrack = 0.0;   // meters
  double mean_latency = 0.0;         // microseconds
  double p99_latency = 0.0;          // microseconds
  std::size_t steps = 0;
};

/// Latency distribution summary in microseconds.
struct LatencyStats {
  double mean = 0.0;
  double p50 = 0.0;
  double p99 = 0.0;
  std::size_t samples = 0;
};

/// Runs one scenario to termination. Per tick: sample rear-axle errors,
/// step the lateral controller (timed), derive throttle, advance the plant.
/// Deterministic apart from the latency fields. Throws ParseError or
/// std::invalid_argument on invalid scenarios; a crosstrack magnitude
/// beyond the bail-out guard ends the run with Termination::kDiverged
/// before any non-finite value is logged.
RunLog run_scenario(const Scenario& s);

/// Aggregates a non-empty run log; throws std::invalid_argument on an
/// empty one. Latency percentile is nearest-rank over all steps.
TrackingMetrics compute_metrics(const RunLog& log);

/// Mean and nearest-rank percentiles of a non-empty latency sample set.
LatencyStats latency_stats(const std::vector<double>& samples_us);

/// Sets every per-step latency and the densification cost to zero, making
/// the log a pure function of the scenario.
void zero_latencies(RunLog& log);

/// One row of a controller comparison, ranked by mean absolute crosstrack
/// (rank 1 = best; ties keep input order).
struct CompareEntry {
  std::string label;
  TrackingMetrics metrics;
  Termination termination = Termination::kMaxSteps;
  std::size_t rank = 0;
};

/// Runs each scenario (parallel up to max_threads, results independent of
/// execution order) and ranks them. All scenarios must share track, plant,
/// longitudinal config, spawn, dt, and discretization constants; mismatch
/// throws std::invalid_argument. max_threads 0 means one thread per
/// scenario.
std::vector<CompareEntry> compare(const std::vector<Scenario>& scenarios,
                                  unsigned max_threads = 0);

/// Per-run results of compare in input order, when the driven paths are
/// needed alongside the ranking.
struct CompareRuns {
  std::vector<CompareEntry> ranking;
  std::vector<RunLog> logs;  // input order
};

/// compare variant that also returns the raw logs (for plotting).
CompareRuns compare_with_logs(const std::vector<Scenario>& scenarios,
                              unsigned max_threads = 0);

/// Writes a run log as CSV with header
/// `t,x,y,theta,v,steering,throttle,crosstrack,heading_err,latency_us`.
/// Numbers use shortest round-trip formatting, so output is byte-stable.
/// Throws IoError when the file cannot be written.
void write_run_csv(const RunLog& log, const std::filesystem::path& file);

}  // namespace popctl

#endif  // POPCTL_SIM_HPP_
