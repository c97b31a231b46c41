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

#include "popctl/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include "popctl/format.hpp"

namespace popctl {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_us(Clock::time_point t0, Clock::time_point t1) {
  return std::chrono::duration<double, std::micro>(t1 - t0).count();
}

void validate(const Scenario& s) {
  if (!(s.dt > 0.0)) throw ParseError("scenario dt must be > 0");
  if (s.stop.max_steps < 1) throw ParseError("stop.max_steps must be >= 1");
  if (!(s.stop.finish_radius >= 0.0))
    throw ParseError("stop.finish_radius must be >= 0");
  if (!(s.densify_resolution > 0.0))
    throw ParseError("densify_resolution must be > 0");
  if (!(s.epsilon > 0.0)) throw ParseError("epsilon must be > 0");
  if (!(s.bailout_crosstrack > 0.0))
    throw ParseError("bailout_crosstrack must be > 0");
  if (!(s.plant.wheelbase > 0.0 && s.plant.steering_limit > 0.0 &&
        s.plant.max_accel > 0.0 && s.plant.max_decel > 0.0 &&
        s.plant.v_cap > 0.0))
    throw ParseError("plant parameters must be strictly positive");
  if (!(std::isfinite(s.spawn.x) && std::isfinite(s.spawn.y) &&
        std::isfinite(s.spawn.theta) && std::isfinite(s.spawn.v) &&
        s.spawn.v >= 0.0))
    throw ParseError("spawn state must be finite with v >= 0");
}

double max_spacing(const std::vector<Waypoint>& track) {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < track.size(); ++i)
    m = std::max(m, euclidean_distance(track[i], track[i + 1]));
  return m;
}

std::string make_digest(const Scenario& s) {
  std::string d = s.name.empty() ? "scenario" : s.name;
  d += '/';
  d += controller_label(lateral_kind(s.lateral));
  d += "/wp=";
  d += std::to_string(s.track.size());
  d += "/dt=";
  append_double(d, s.dt);
  return d;
}

// Nearest-rank percentile of an ascending sample vector.
double percentile(const std::vector<double>& sorted, double q) {
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n));
  if (rank < 1) rank = 1;
  return sorted[rank - 1];
}

}  // namespace

const char* termination_label(Termination t) {
  switch (t) {
    case Termination::kFinished:
      return "finished";
    case Termination::kMaxSteps:
      return "max_steps";
    case Termination::kDiverged:
      return "diverged";
  }
  return "unknown";
}

RunLog run_scenario(const Scenario& s) {
  validate(s);
  const Path sparse(s.track, max_spacing(s.track), s.epsilon,
                    s.closed_loop_lookahead);

  RunLog log;
  log.scenario_digest = make_digest(s);

  const auto d0 = Clock::now();
  const Path dense = densify_path(sparse, s.densify_resolution);
  log.densify_us = elapsed_us(d0, Clock::now());

  LateralController controller(s.lateral, s.plant.wheelbase,
                               s.plant.steering_limit);
  VehicleState state = s.spawn;
  state.theta = wrap_angle(state.theta);

  std::size_t progress = closest_index(state.position(), dense);
  // Finish detection arms only once the vehicle has covered half the track,
  // so a spawn near the final waypoint of a loop cannot end the run at t=0.
  const std::size_t arm_index = dense.size() / 2;
  const Waypoint goal = dense.back();

  log.steps.reserve(std::min<std::size_t>(s.stop.max_steps, 1 << 16));
  log.termination = Termination::kMaxSteps;
  for (std::size_t k = 0; k < s.stop.max_steps; ++k) {
    progress = advance_progress(state.position(), dense, progress);
    const TrackingErrors errors = compute_errors_at(
        state, dense, ReferencePoint::kRearAxle, 0.0, progress);
    if (!(std::abs(errors.crosstrack) <= s.bailout_crosstrack)) {
      log.termination = Termination::kDiverged;
      break;
    }

    const auto c0 = Clock::now();
    const double steering =
        controller.step(state, dense, errors, s.dt, progress);
    const double latency = elapsed_us(c0, Clock::now());
    const double throttle = longitudinal_step(s.longitudinal, state.v, steering);
    const ControlCommand cmd{steering, throttle};

    log.steps.push_back(
        {static_cast<double>(k) * s.dt, state, cmd, errors, latency});

    state = plant_step(state, cmd, s.dt, s.plant);
    if (progress >= arm_index &&
        euclidean_distance(state.position(), goal) <= s.stop.finish_radius) {
      log.termination = Termination::kFinished;
      break;
    }
  }
  return log;
}

TrackingMetrics compute_metrics(const RunLog& log) {
  if (log.steps.empty())
    throw std::invalid_argument("cannot compute metrics of an empty run log");
  TrackingMetrics m;
  m.steps = log.steps.size();
  double sum_c = 0.0;
  double sum_h = 0.0;
  std::vector<double> latencies;
  latencies.reserve(log.steps.size());
  for (const StepRecord& r : log.steps) {
    const double c = std::abs(r.errors.crosstrack);
    sum_c += c;
    sum_h += std::abs(r.errors.heading);
    m.max_abs_crosstrack = std::max(m.max_abs_crosstrack, c);
    latencies.push_back(r.latency_us);
  }
  const auto n = static_cast<double>(m.steps);
  m.mean_abs_crosstrack = sum_c / n;
  m.mean_abs_heading = sum_h / n;
  const LatencyStats ls = latency_stats(latencies);
  m.mean_latency = ls.mean;
  m.p99_latency = ls.p99;
  return m;
}

LatencyStats latency_stats(const std::vector<double>& samples_us) {
  if (samples_us.empty())
    throw std::invalid_argument("latency_stats needs at least one sample");
  std::vector<double> sorted = samples_us;
  std::sort(sorted.begin(), sorted.end());
  LatencyStats ls;
  ls.samples = sorted.size();
  double sum = 0.0;
  for (const double v : sorted) sum += v;
  ls.mean = sum / static_cast<double>(sorted.size());
  ls.p50 = percentile(sorted, 0.5);
  ls.p99 = percentile(sorted, 0.99);
  return ls;
}

void zero_latencies(RunLog& log) {
  log.densify_us = 0.0;
  for (StepRecord& r : log.steps) r.latency_us = 0.0;
}

namespace {

void check_homogeneous(const std::vector<Scenario>& scenarios) {
  const Scenario& ref = scenarios.front();
  for (std::size_t i = 1; i < scenarios.size(); ++i) {
    const Scenario& s = scenarios[i];
    const char* field = nullptr;
    if (s.track != ref.track) field = "track";
    else if (s.densify_resolution != ref.densify_resolution)
      field = "densify_resolution";
    else if (s.epsilon != ref.epsilon) field = "epsilon";
    else if (s.closed_loop_lookahead != ref.closed_loop_lookahead)
      field = "closed_loop_lookahead";
    else if (s.dt != ref.dt) field = "dt";
    else if (!(s.longitudinal == ref.longitudinal)) field = "longitudinal";
    else if (!(s.plant == ref.plant)) field = "plant";
    else if (!(s.spawn == ref.spawn)) field = "spawn";
    else if (!(s.stop == ref.stop)) field = "stop";
    else if (s.bailout_crosstrack != ref.bailout_crosstrack) field = "bailout";
    if (field)
      throw std::invalid_argument(
          std::string("compare requires identical shared fields; entry ") +
          std::to_string(i) + " differs in " + field);
  }
}

}  // namespace

CompareRuns compare_with_logs(const std::vector<Scenario>& scenarios,
                              unsigned max_threads) {
  if (scenarios.empty())
    throw std::invalid_argument("compare needs at least one scenario");
  check_homogeneous(scenarios);

  std::vector<RunLog> logs(scenarios.size());
  const unsigned want = max_threads == 0
                            ? static_cast<unsigned>(scenarios.size())
                            : max_threads;
  const unsigned workers =
      std::max(1u, std::min(want, static_cast<unsigned>(scenarios.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < scenarios.size(); ++i)
      logs[i] = run_scenario(scenarios[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < scenarios.size();
             i = next.fetch_add(1))
          logs[i] = run_scenario(scenarios[i]);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  CompareRuns result;
  result.ranking.reserve(scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    CompareEntry e;
    e.label = controller_label(lateral_kind(scenarios[i].lateral));
    e.termination = logs[i].termination;
    if (!logs[i].steps.empty()) e.metrics = compute_metrics(logs[i]);
    result.ranking.push_back(std::move(e));
  }
  // Diverged or empty runs never outrank completed ones.
  auto sort_key = [](const CompareEntry& e) {
    return (e.termination == Termination::kDiverged || e.metrics.steps == 0)
               ? std::numeric_limits<double>::infinity()
               : e.metrics.mean_abs_crosstrack;
  };
  std::stable_sort(result.ranking.begin(), result.ranking.end(),
                   [&](const CompareEntry& a, const CompareEntry& b) {
                     return sort_key(a) < sort_key(b);
                   });
  for (std::size_t i = 0; i < result.ranking.size(); ++i)
    result.ranking[i].rank = i + 1;
  result.logs = std::move(logs);
  return result;
}

std::vector<CompareEntry> compare(const std::vector<Scenario>& scenarios,
                                  unsigned max_threads) {
  return compare_with_logs(scenarios, max_threads).ranking;
}

void write_run_csv(const RunLog& log, const std::filesystem::path& file) {
  std::string out = "t,x,y,theta,v,steering,throttle,crosstrack,heading_err,latency_us\n";
  for (const StepRecord& r : log.steps) {
    append_double(out, r.t);
    out.push_back(',');
    append_double(out, r.state.x);
    out.push_back(',');
    append_double(out, r.state.y);
    out.push_back(',');
    append_double(out, r.state.theta);
    out.push_back(',');
    append_double(out, r.state.v);
    out.push_back(',');
    append_double(out, r.command.steering);
    out.push_back(',');
    append_double(out, r.command.throttle);
    out.push_back(',');
    append_double(out, r.errors.crosstrack);
    out.push_back(',');
    append_double(out, r.errors.heading);
    out.push_back(',');
    append_double(out, r.latency_us);
    out.push_back('\n');
  }
  std::ofstream f(file, std::ios::binary);
  if (!f || !(f << out))
    throw IoError("cannot write run log: " + file.string());
}

}  // namespace popctl
