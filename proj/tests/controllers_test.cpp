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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pop_oracle.hpp"
#include "popctl/controllers.hpp"
#include "popctl/trajectory.hpp"
#include "popctl/types.hpp"

namespace {

using namespace popctl;

constexpr double kPi = std::numbers::pi;
constexpr double kLimit = 1.22;

Path straight_path(double spacing = 0.01, double length = 30.0) {
  std::vector<Waypoint> pts;
  const auto n = static_cast<int>(length / spacing);
  for (int i = 0; i <= n; ++i) pts.push_back({spacing * i, 0.0});
  return Path(std::move(pts), spacing);
}

// Mirror a path across the x axis, preserving every coordinate's magnitude.
Path mirror_path(const Path& path) {
  std::vector<Waypoint> pts;
  for (const Waypoint& w : path.waypoints()) pts.push_back({w.x, -w.y});
  return Path(std::move(pts), path.resolution(), path.epsilon(),
              path.closed());
}

VehicleState mirror_state(const VehicleState& s) {
  return {s.x, -s.y, -s.theta, s.v, -s.omega};
}

}  // namespace

TEST_CASE("clamp_steering known cases") {
  CHECK(clamp_steering(0.3, kLimit) == 0.3);
  CHECK(clamp_steering(2.0, kLimit) == kLimit);
  CHECK(clamp_steering(-5.0, kLimit) == -kLimit);
}

TEST_CASE("pid_step saturates a fresh large error") {
  PidConfig cfg;
  PidState st;
  // kp*1 + ki*1 + kd*(1-0)/0.05 = 4.26 before the clamp.
  CHECK(pid_step(cfg, st, 1.0, 0.05, kLimit) == kLimit);
}

TEST_CASE("pid integral window forgets old errors") {
  PidConfig cfg;
  PidState st;
  double out = 0.0;
  for (int i = 0; i < 600; ++i) out = pid_step(cfg, st, 0.1, 0.05, kLimit);
  CHECK(st.error_buffer.size() == cfg.buffer_len);
  // Integral term holds at ki * 500 * 0.1 = 0.5; an unbounded sum would
  // have reached 0.6 by step 600.
  CHECK(out == doctest::Approx(0.525).epsilon(1e-12));
}

TEST_CASE("pid buffer is a strict FIFO at its configured capacity") {
  std::mt19937 rng(20260814);
  std::uniform_real_distribution<double> err(-2.0, 2.0);
  std::uniform_int_distribution<int> len_pick(1, 1500);
  PidConfig cfg;  // buffer_len 500
  for (int rep = 0; rep < 200; ++rep) {
    PidState st;
    const int n = len_pick(rng);
    std::vector<double> fed;
    for (int i = 0; i < n; ++i) {
      const double e = err(rng);
      fed.push_back(e);
      pid_step(cfg, st, e, 0.05, kLimit);
      CHECK(st.error_buffer.size() <= cfg.buffer_len);
    }
    const std::size_t kept =
        std::min(fed.size(), static_cast<std::size_t>(cfg.buffer_len));
    REQUIRE(st.error_buffer.size() == kept);
    // Eviction is strictly oldest-first: the buffer equals the tail of the
    // fed sequence in arrival order.
    bool ordered = true;
    for (std::size_t i = 0; i < kept; ++i)
      ordered = ordered &&
                st.error_buffer[i] == fed[fed.size() - kept + i];
    CHECK(ordered);
    CHECK(st.prev_error == fed.back());
  }
}

TEST_CASE("pure_pursuit_step known cases") {
  const Path path = straight_path();

  VehicleState ahead{0, 0, 0, 10.0, 0};
  CHECK(pure_pursuit_step({}, ahead, path, 0, kLimit) == 0.0);

  // A lookahead target at bearing 0.1 reproduces the closed form.
  const double kv = 0.9, v = 10.0, wheelbase = 2.89;
  const double ld = kv * v;
  const std::vector<Waypoint> two{{ld * std::cos(0.1), ld * std::sin(0.1)},
                                  {2.0 * ld * std::cos(0.1),
                                   2.0 * ld * std::sin(0.1)}};
  const Path bearing_path(two, ld);
  VehicleState org{0, 0, 0, v, 0};
  const double got = pure_pursuit_step({}, org, bearing_path, 0, kLimit);
  const double want =
      std::atan(2.0 * wheelbase * std::sin(0.1) / (kv * v));
  CHECK(got == doctest::Approx(want).epsilon(1e-9));
  CHECK(got == doctest::Approx(0.0640).epsilon(1e-2));
}

TEST_CASE("pure_pursuit_step floors the lookahead speed") {
  const Path path = straight_path();
  VehicleState stopped{0, 0.5, 0, 0.0, 0};
  PurePursuitConfig cfg;
  cfg.min_speed_floor = 1.0;
  // At v = 0 the law must stay defined and finite.
  const double out = pure_pursuit_step(cfg, stopped, path, 0, kLimit);
  CHECK(std::isfinite(out));
  CHECK(std::abs(out) <= kLimit);
}

TEST_CASE("stanley_step known cases") {
  const Path path = straight_path();
  const double wheelbase = 2.89;

  VehicleState aligned{5.0, 0.0, 0.0, 3.0, 0};
  CHECK(stanley_step({}, aligned, path, wheelbase, kLimit) == 0.0);

  // Front axle exactly on the path, heading error +0.2: pure heading term.
  VehicleState yawed{5.0, -wheelbase * std::sin(-0.2), -0.2, 3.0, 0};
  CHECK(stanley_step({}, yawed, path, wheelbase, kLimit, 500) == 0.2);

  // A huge crosstrack beneath the path plus heading error 1.0 saturates.
  VehicleState far{5.0, -40.0, -1.0, 3.0, 0};
  CHECK(stanley_step({}, far, path, wheelbase, kLimit, 500) == kLimit);

  // Left of the path steers negative (back toward it).
  VehicleState left{5.0, 1.0, 0.0, 5.0, 0};
  CHECK(stanley_step({}, left, path, wheelbase, kLimit, 500) < 0.0);
}

TEST_CASE("build_candidates known grids") {
  const std::vector<double> centered = build_candidates(0.0, 0.1, 3, kLimit);
  REQUIRE(centered.size() == 3);
  CHECK(centered[0] == -0.1);
  CHECK(centered[1] == 0.0);
  CHECK(centered[2] == 0.1);

  const std::vector<double> clipped = build_candidates(1.20, 0.1, 3, kLimit);
  REQUIRE(clipped.size() == 3);
  CHECK(clipped[0] == doctest::Approx(1.10).epsilon(1e-12));
  CHECK(clipped[1] == 1.20);
  CHECK(clipped[2] == kLimit);

  const std::vector<double> wide = build_candidates(0.4, 0.05, 21, kLimit);
  REQUIRE(wide.size() == 21);
  CHECK(wide[10] == 0.4);
  for (std::size_t i = 0; i + 1 < wide.size(); ++i) {
    CHECK(wide[i + 1] - wide[i] ==
          doctest::Approx(2.0 * 0.05 / 20.0).epsilon(1e-9));
  }
}

TEST_CASE("build_candidates rejects invalid shapes") {
  CHECK_THROWS_AS(build_candidates(0.0, 0.1, 2, kLimit),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_candidates(0.0, 0.1, 1, kLimit),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_candidates(0.0, 0.0, 3, kLimit),
                  std::invalid_argument);
}

TEST_CASE("build_candidates center, ordering, and clamping properties") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> prev_pick(-1.5, 1.5);
  std::uniform_real_distribution<double> nbd_pick(0.001, 0.5);
  std::uniform_int_distribution<std::size_t> res_pick(1, 30);
  for (int rep = 0; rep < 300; ++rep) {
    const double prev = prev_pick(rng);
    const double nbd = nbd_pick(rng);
    const std::size_t res = 2 * res_pick(rng) + 1;
    const auto c = build_candidates(prev, nbd, res, kLimit);
    REQUIRE(c.size() == res);
    CHECK(c[res / 2] == clamp_steering(prev, kLimit));
    for (std::size_t i = 0; i + 1 < c.size(); ++i) CHECK(c[i] <= c[i + 1]);
    // Containment holds against the clamped neighborhood edges: a prev
    // outside the limit pins every candidate to the nearer limit.
    const double lo = clamp_steering(prev - nbd, kLimit);
    const double hi = clamp_steering(prev + nbd, kLimit);
    for (const double d : c) {
      CHECK(std::abs(d) <= kLimit);
      CHECK(d >= lo - 1e-12);
      CHECK(d <= hi + 1e-12);
    }
  }
}

TEST_CASE("build_candidates negation mirrors the grid exactly") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> prev_pick(-1.5, 1.5);
  std::uniform_real_distribution<double> nbd_pick(0.001, 0.5);
  std::uniform_int_distribution<std::size_t> res_pick(1, 30);
  for (int rep = 0; rep < 300; ++rep) {
    const double prev = prev_pick(rng);
    const double nbd = nbd_pick(rng);
    const std::size_t res = 2 * res_pick(rng) + 1;
    const auto c = build_candidates(prev, nbd, res, kLimit);
    const auto m = build_candidates(-prev, nbd, res, kLimit);
    for (std::size_t i = 0; i < res; ++i)
      CHECK(m[i] == -c[res - 1 - i]);
  }
}

TEST_CASE("pop_step returns exactly zero on a dead-ahead straight") {
  const Path path = straight_path();
  PopConfig cfg;
  PopState st;
  VehicleState s{1.0, 0.0, 0.0, 10.0, 0};
  CHECK(pop_step(cfg, st, s, path, kLimit) == 0.0);
  CHECK(st.prev_steering == 0.0);
}

TEST_CASE("pop_step stays within the proximal neighborhood") {
  std::mt19937 rng(20260814);
  for (int rep = 0; rep < 300; ++rep) {
    const Path path = popctl_oracle::random_oracle_path(rng);
    auto inst = popctl_oracle::random_pop_instance(rng, path);
    const double prev = inst.st.prev_steering;
    const double out =
        pop_step(inst.cfg, inst.st, inst.state, path, inst.limit);
    CHECK(std::abs(out) <= inst.limit);
    // The neighborhood edges are clamped along with the candidates.
    CHECK(out >= clamp_steering(prev - inst.cfg.nbd, inst.limit) - 1e-12);
    CHECK(out <= clamp_steering(prev + inst.cfg.nbd, inst.limit) + 1e-12);
    CHECK(inst.st.prev_steering == out);
  }
}

TEST_CASE("pop_step matches the exhaustive oracle on 1000 instances") {
  std::mt19937 rng(424242);
  int mismatches = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const Path path = popctl_oracle::random_oracle_path(rng);
    auto inst = popctl_oracle::random_pop_instance(rng, path);
    PopState lib_st = inst.st;
    PopState ora_st = inst.st;
    const double lib =
        pop_step(inst.cfg, lib_st, inst.state, path, inst.limit);
    const double ora = popctl_oracle::oracle_pop_step(inst.cfg, ora_st,
                                                      inst.state, path,
                                                      inst.limit);
    if (lib != ora || lib_st.prev_steering != ora_st.prev_steering ||
        lib_st.search_start != ora_st.search_start)
      ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("mirrored worlds negate the steering command exactly") {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> prev_pick(-1.0, 1.0);
  int cases = 0;
  while (cases < 250) {
    const Path path = popctl_oracle::random_oracle_path(rng);
    auto inst = popctl_oracle::random_pop_instance(rng, path);
    const Path mirrored = mirror_path(path);
    const VehicleState ms = mirror_state(inst.state);

    const double pp =
        pure_pursuit_step({}, inst.state, path, inst.st.search_start,
                          inst.limit);
    const double pp_m =
        pure_pursuit_step({}, ms, mirrored, inst.st.search_start, inst.limit);
    CHECK(pp_m == -pp);

    const double st =
        stanley_step({}, inst.state, path, 2.89, inst.limit,
                     inst.st.search_start);
    const double st_m = stanley_step({}, ms, mirrored, 2.89, inst.limit,
                                     inst.st.search_start);
    CHECK(st_m == -st);

    PopState a = inst.st;
    PopState b = inst.st;
    b.prev_steering = -a.prev_steering;
    const double pop = pop_step(inst.cfg, a, inst.state, path, inst.limit);
    const double pop_m = pop_step(inst.cfg, b, ms, mirrored, inst.limit);
    CHECK(pop_m == -pop);
    ++cases;
  }
}

TEST_CASE("pid negating the error sequence negates the command exactly") {
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> err(-3.0, 3.0);
  for (int rep = 0; rep < 200; ++rep) {
    PidConfig cfg;
    cfg.buffer_len = 50;
    PidState pos, neg;
    for (int i = 0; i < 120; ++i) {
      const double e = err(rng);
      const double a = pid_step(cfg, pos, e, 0.05, kLimit);
      const double b = pid_step(cfg, neg, -e, 0.05, kLimit);
      CHECK(b == -a);
    }
  }
}

TEST_CASE("every controller respects the steering limit") {
  std::mt19937 rng(20260814);
  std::uniform_real_distribution<double> limit_pick(0.1, 1.22);
  std::uniform_real_distribution<double> err(-20.0, 20.0);
  std::uniform_real_distribution<double> dt_pick(0.01, 0.1);
  for (int rep = 0; rep < 250; ++rep) {
    const Path path = popctl_oracle::random_oracle_path(rng);
    auto inst = popctl_oracle::random_pop_instance(rng, path);
    const double limit = limit_pick(rng);

    PidConfig pid_cfg;
    PidState pid_st;
    CHECK(std::abs(pid_step(pid_cfg, pid_st, err(rng), dt_pick(rng),
                            limit)) <= limit);

    CHECK(std::abs(pure_pursuit_step({}, inst.state, path,
                                     inst.st.search_start, limit)) <= limit);

    CHECK(std::abs(stanley_step({}, inst.state, path, 2.89, limit,
                                inst.st.search_start)) <= limit);

    PopState pop_st = inst.st;
    pop_st.prev_steering = clamp_steering(pop_st.prev_steering, limit);
    CHECK(std::abs(pop_step(inst.cfg, pop_st, inst.state, path, limit)) <=
          limit);
  }
}

TEST_CASE("longitudinal law boundary values") {
  const LongitudinalConfig cfg;
  CHECK(longitudinal_step(cfg, 0.0, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(longitudinal_step(cfg, cfg.v_lim, 0.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(longitudinal_step(cfg, cfg.v_lim, cfg.delta_lim) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("longitudinal law is monotone and bounded") {
  const LongitudinalConfig cfg;
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> v_pick(0.0, 90.0);
  std::uniform_real_distribution<double> d_pick(-2.0, 2.0);
  for (int rep = 0; rep < 300; ++rep) {
    const double v1 = v_pick(rng), v2 = v_pick(rng);
    const double d1 = d_pick(rng), d2 = d_pick(rng);
    const double lo_v = std::min(v1, v2), hi_v = std::max(v1, v2);
    CHECK(longitudinal_step(cfg, hi_v, d1) <=
          longitudinal_step(cfg, lo_v, d1) + 1e-15);
    const double lo_d = std::min(std::abs(d1), std::abs(d2));
    const double hi_d = std::max(std::abs(d1), std::abs(d2));
    CHECK(longitudinal_step(cfg, v1, hi_d) <=
          longitudinal_step(cfg, v1, lo_d) + 1e-15);
    const double tau = longitudinal_step(cfg, v1, d1);
    CHECK(tau >= -1.0);
    CHECK(tau <= 1.0);
    // Steering magnitudes beyond the limit saturate the effort term.
    CHECK(longitudinal_step(cfg, v1, 2.0) ==
          longitudinal_step(cfg, v1, cfg.delta_lim));
    CHECK(longitudinal_step(cfg, v1, d1) ==
          longitudinal_step(cfg, v1, -d1));
  }
}

TEST_CASE("controller labels and variant kinds line up") {
  CHECK(std::string(controller_label(ControllerKind::kPid)) == "pid");
  CHECK(std::string(controller_label(ControllerKind::kPurePursuit)) ==
        "pure_pursuit");
  CHECK(std::string(controller_label(ControllerKind::kStanley)) == "stanley");
  CHECK(std::string(controller_label(ControllerKind::kPop)) == "pop");

  CHECK(lateral_kind(LateralConfig{PidConfig{}}) == ControllerKind::kPid);
  CHECK(lateral_kind(LateralConfig{PurePursuitConfig{}}) ==
        ControllerKind::kPurePursuit);
  CHECK(lateral_kind(LateralConfig{StanleyConfig{}}) ==
        ControllerKind::kStanley);
  CHECK(lateral_kind(LateralConfig{PopConfig{}}) == ControllerKind::kPop);
}

TEST_CASE("the stepping facade dispatches with the documented conventions") {
  const Path path = straight_path();
  const double wheelbase = 2.89;

  LateralController pid(PidConfig{}, wheelbase, kLimit);
  CHECK(pid.kind() == ControllerKind::kPid);
  TrackingErrors left{1.0, 0.0};  // vehicle left of path
  VehicleState s{1.0, 1.0, 0.0, 5.0, 0.0};
  CHECK(pid.step(s, path, left, 0.05, 0) < 0.0);

  LateralController pop(PopConfig{}, wheelbase, kLimit);
  CHECK(pop.kind() == ControllerKind::kPop);
  VehicleState on{1.0, 0.0, 0.0, 10.0, 0.0};
  CHECK(pop.step(on, path, {0.0, 0.0}, 0.05, 0) == 0.0);

  LateralController pp(PurePursuitConfig{}, wheelbase, kLimit);
  LateralController stanley(StanleyConfig{}, wheelbase, kLimit);
  CHECK(std::abs(pp.step(s, path, left, 0.05, 0)) <= kLimit);
  CHECK(std::abs(stanley.step(s, path, left, 0.05, 0)) <= kLimit);
}
