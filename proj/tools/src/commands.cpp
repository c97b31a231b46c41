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

#include "commands.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "popctl/sim.hpp"
#include "scenario.hpp"
#include "svg.hpp"
#include "track_gen.hpp"

namespace popctl::tools {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Steps are trimmed of the startup transient before the secondary metric
/// block: the first seconds after spawn carry the deliberate spawn offset.
constexpr double kTransientTrimSeconds = 5.0;

int exit_code_for_current_exception() {
  try {
    throw;
  } catch (const IoError& e) {
    std::cerr << "popctl: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    std::cerr << "popctl: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "popctl: " << e.what() << "\n";
    return kExitUsage;
  }
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir.string());
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream f(file, std::ios::binary);
  if (!f || !(f << text))
    throw IoError("cannot write file: " + file.string());
}

ordered_json metrics_json(const TrackingMetrics& m) {
  ordered_json j;
  j["mean_abs_crosstrack"] = m.mean_abs_crosstrack;
  j["mean_abs_heading"] = m.mean_abs_heading;
  j["max_abs_crosstrack"] = m.max_abs_crosstrack;
  j["mean_latency"] = m.mean_latency;
  j["p99_latency"] = m.p99_latency;
  j["steps"] = m.steps;
  return j;
}

TrackingMetrics metrics_or_zero(const RunLog& log) {
  return log.steps.empty() ? TrackingMetrics{} : compute_metrics(log);
}

// Metrics over the post-transient tail, if any steps survive the trim.
ordered_json trimmed_metrics_json(const RunLog& log) {
  RunLog tail;
  for (const StepRecord& r : log.steps)
    if (r.t >= kTransientTrimSeconds) tail.steps.push_back(r);
  if (tail.steps.empty()) return nullptr;
  return metrics_json(compute_metrics(tail));
}

std::vector<Waypoint> driven_path(const RunLog& log) {
  std::vector<Waypoint> pts;
  pts.reserve(log.steps.size());
  for (const StepRecord& r : log.steps)
    pts.push_back({r.state.x, r.state.y});
  return pts;
}

std::vector<Waypoint> steering_trace(const RunLog& log) {
  std::vector<Waypoint> pts;
  pts.reserve(log.steps.size());
  for (const StepRecord& r : log.steps)
    pts.push_back({r.t, r.command.steering});
  return pts;
}

void write_plot(const std::filesystem::path& file,
                const std::vector<Waypoint>& track,
                const std::vector<std::string>& labels,
                const std::vector<RunLog>& logs) {
  SvgPanel xy;
  xy.title = "reference path and driven paths";
  xy.equal_aspect = true;
  xy.series.push_back({"reference", series_color(0), track});
  SvgPanel steer;
  steer.title = "steering command over time (rad)";
  for (std::size_t i = 0; i < logs.size(); ++i) {
    xy.series.push_back(
        {labels[i], series_color(i + 1), driven_path(logs[i])});
    steer.series.push_back(
        {labels[i], series_color(i + 1), steering_trace(logs[i])});
  }
  write_svg({xy, steer}, file);
}

unsigned compare_threads(std::size_t runs) {
  const char* env = std::getenv("POP_TRACK_THREADS");
  if (env != nullptr) {
    unsigned cap = 0;
    const char* end = env + std::string_view(env).size();
    auto [ptr, ec] = std::from_chars(env, end, cap);
    if (ec != std::errc{} || ptr != end || cap < 1)
      throw ParseError("POP_TRACK_THREADS must be a positive integer, got '" +
                       std::string(env) + "'");
    return cap;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned want = hw == 0 ? 1 : hw;
  return static_cast<unsigned>(
      std::min<std::size_t>(want, runs == 0 ? 1 : runs));
}

LoadedScenario load_single_controller(const std::filesystem::path& path,
                                      const char* verb) {
  LoadedScenario doc = load_scenario_file(path);
  if (doc.controllers.size() != 1)
    throw ParseError(std::string(verb) + " needs exactly one controller; '" +
                     path.string() + "' lists " +
                     std::to_string(doc.controllers.size()) +
                     " (use compare)");
  return doc;
}

std::filesystem::path resolve_out_dir(const LoadedScenario& doc,
                                      const std::filesystem::path& cli_dir) {
  if (!cli_dir.empty()) return cli_dir;
  if (!doc.output_dir.empty()) return doc.output_dir;
  return ".";
}

}  // namespace

int cmd_simulate(const std::filesystem::path& scenario_path,
                 const std::filesystem::path& out_dir, bool deterministic) {
  try {
    const LoadedScenario doc =
        load_single_controller(scenario_path, "simulate");
    const Scenario s = scenario_for(doc, 0);
    RunLog log = run_scenario(s);
    if (deterministic) zero_latencies(log);

    const std::filesystem::path dir = resolve_out_dir(doc, out_dir);
    ensure_dir(dir);
    write_run_csv(log, dir / "run.csv");

    ordered_json j = metrics_json(metrics_or_zero(log));
    j["termination"] = termination_label(log.termination);
    j["densify_us"] = log.densify_us;
    const ordered_json trimmed = trimmed_metrics_json(log);
    if (!trimmed.is_null()) j["trimmed"] = trimmed;
    write_text(dir / "metrics.json", j.dump(2) + "\n");

    if (doc.svg) {
      write_plot(dir / "trajectory.svg", s.track,
                 {controller_label(lateral_kind(s.lateral))}, {log});
    }
    if (log.termination == Termination::kDiverged) {
      std::cerr << "popctl: run diverged (crosstrack exceeded "
                << s.bailout_crosstrack << " m)\n";
      return kExitDivergence;
    }
    return kExitOk;
  } catch (...) {
    return exit_code_for_current_exception();
  }
}

int cmd_compare(const std::filesystem::path& scenario_path,
                const std::filesystem::path& out_dir, bool deterministic) {
  try {
    const LoadedScenario doc = load_scenario_file(scenario_path);
    std::vector<Scenario> scenarios;
    std::vector<std::string> labels;
    scenarios.reserve(doc.controllers.size());
    for (std::size_t i = 0; i < doc.controllers.size(); ++i) {
      scenarios.push_back(scenario_for(doc, i));
      labels.push_back(controller_label(lateral_kind(doc.controllers[i])));
    }

    CompareRuns runs =
        compare_with_logs(scenarios, compare_threads(scenarios.size()));
    if (deterministic)
      for (RunLog& log : runs.logs) zero_latencies(log);

    const std::filesystem::path dir = resolve_out_dir(doc, out_dir);
    ensure_dir(dir);

    ordered_json j;
    j["scenario"] = doc.base.name;
    j["track_waypoints"] = doc.base.track.size();
    ordered_json ranking = ordered_json::array();
    for (const CompareEntry& e : runs.ranking) {
      ordered_json row;
      row["rank"] = e.rank;
      row["controller"] = e.label;
      row["termination"] = termination_label(e.termination);
      TrackingMetrics m = e.metrics;
      if (deterministic) {
        m.mean_latency = 0.0;
        m.p99_latency = 0.0;
      }
      row["metrics"] = metrics_json(m);
      ranking.push_back(std::move(row));
    }
    j["ranking"] = std::move(ranking);
    write_text(dir / "comparison.json", j.dump(2) + "\n");

    if (doc.svg)
      write_plot(dir / "comparison.svg", doc.base.track, labels, runs.logs);

    for (const CompareEntry& e : runs.ranking) {
      if (e.termination == Termination::kDiverged) {
        std::cerr << "popctl: controller '" << e.label
                  << "' diverged on the shared track\n";
        return kExitDivergence;
      }
    }
    return kExitOk;
  } catch (...) {
    return exit_code_for_current_exception();
  }
}

int cmd_bench(const std::filesystem::path& scenario_path, int iterations) {
  try {
    if (iterations < 1) throw ParseError("bench iterations must be >= 1");
    const LoadedScenario doc = load_single_controller(scenario_path, "bench");
    const Scenario s = scenario_for(doc, 0);

    std::vector<double> samples;
    bool diverged = false;
    for (int i = 0; i < iterations; ++i) {
      const RunLog log = run_scenario(s);
      diverged = diverged || log.termination == Termination::kDiverged;
      samples.reserve(samples.size() + log.steps.size());
      for (const StepRecord& r : log.steps) samples.push_back(r.latency_us);
    }
    if (samples.empty())
      throw ParseError("bench produced no controller steps");
    const LatencyStats ls = latency_stats(samples);

    const char* label = controller_label(lateral_kind(s.lateral));
    std::cout << "controller: " << label << "\n"
              << "iterations: " << iterations << "\n"
              << "samples: " << ls.samples << "\n"
              << "mean_us: " << ls.mean << "\n"
              << "p50_us: " << ls.p50 << "\n"
              << "p99_us: " << ls.p99 << "\n";

    ordered_json j;
    j["controller"] = label;
    j["iterations"] = iterations;
    j["samples"] = ls.samples;
    j["mean_us"] = ls.mean;
    j["p50_us"] = ls.p50;
    j["p99_us"] = ls.p99;
    write_text("bench.json", j.dump(2) + "\n");

    if (diverged) {
      std::cerr << "popctl: benched run diverged (crosstrack exceeded "
                << s.bailout_crosstrack << " m)\n";
      return kExitDivergence;
    }
    return kExitOk;
  } catch (...) {
    return exit_code_for_current_exception();
  }
}

int cmd_gen_track(const std::filesystem::path& spec_path,
                  const std::filesystem::path& out_file) {
  try {
    std::ifstream in(spec_path);
    if (!in) throw IoError("cannot open track spec: " + spec_path.string());
    nlohmann::json spec;
    try {
      spec = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("track spec " + spec_path.string() + ": " + e.what());
    }
    const std::vector<Waypoint> track = generate_from_spec(spec);
    if (out_file.has_parent_path()) ensure_dir(out_file.parent_path());
    save_track_csv(track, out_file);
    return kExitOk;
  } catch (...) {
    return exit_code_for_current_exception();
  }
}

}  // namespace popctl::tools
