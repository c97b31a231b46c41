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

#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "popctl/trajectory.hpp"
#include "track_gen.hpp"

namespace popctl::tools {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok) throw ParseError("unknown key '" + key + "' in " + ctx);
  }
}

const json& child(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.contains(key))
    throw ParseError("missing key '" + std::string(key) + "' in " + ctx);
  return obj.at(key);
}

double get_num(const json& obj, const char* key, double fallback,
               const std::string& ctx) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number())
    throw ParseError(ctx + "." + key + " must be a number");
  return v.get<double>();
}

std::size_t get_count(const json& obj, const char* key, std::size_t fallback,
                      const std::string& ctx) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(ctx + "." + key + " must be a non-negative integer");
  return v.get<std::size_t>();
}

bool get_bool(const json& obj, const char* key, bool fallback,
              const std::string& ctx) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ParseError(ctx + "." + key + " must be a boolean");
  return v.get<bool>();
}

// Radian-valued field with an optional *_deg twin; giving both is an error.
double get_angle(const json& obj, const char* key, const char* deg_key,
                 double fallback, const std::string& ctx) {
  const bool has_rad = obj.contains(key);
  const bool has_deg = obj.contains(deg_key);
  if (has_rad && has_deg)
    throw ParseError(ctx + ": give either " + key + " or " + deg_key +
                     ", not both");
  if (has_deg) return deg_to_rad(get_num(obj, deg_key, 0.0, ctx));
  return get_num(obj, key, fallback, ctx);
}

LateralConfig parse_controller(const json& obj, const std::string& ctx) {
  if (!obj.is_object()) throw ParseError(ctx + " must be a JSON object");
  const json& type_v = child(obj, "type", ctx);
  if (!type_v.is_string())
    throw ParseError(ctx + ".type must be a string");
  const auto type = type_v.get<std::string>();
  if (type == "pid") {
    check_keys(obj, ctx, {"type", "kp", "ki", "kd", "buffer_len"});
    PidConfig c;
    c.kp = get_num(obj, "kp", c.kp, ctx);
    c.ki = get_num(obj, "ki", c.ki, ctx);
    c.kd = get_num(obj, "kd", c.kd, ctx);
    c.buffer_len = get_count(obj, "buffer_len", c.buffer_len, ctx);
    if (c.buffer_len < 1) throw ParseError(ctx + ".buffer_len must be >= 1");
    return c;
  }
  if (type == "pure_pursuit") {
    check_keys(obj, ctx, {"type", "wheelbase", "kv", "min_speed_floor"});
    PurePursuitConfig c;
    c.wheelbase = get_num(obj, "wheelbase", c.wheelbase, ctx);
    c.kv = get_num(obj, "kv", c.kv, ctx);
    c.min_speed_floor = get_num(obj, "min_speed_floor", c.min_speed_floor, ctx);
    if (!(c.wheelbase > 0.0 && c.kv > 0.0 && c.min_speed_floor > 0.0))
      throw ParseError(ctx + ": pure_pursuit parameters must be > 0");
    return c;
  }
  if (type == "stanley") {
    check_keys(obj, ctx, {"type", "k_cross", "kv", "ks"});
    StanleyConfig c;
    c.k_cross = get_num(obj, "k_cross", c.k_cross, ctx);
    c.kv = get_num(obj, "kv", c.kv, ctx);
    c.ks = get_num(obj, "ks", c.ks, ctx);
    if (!(c.ks > 0.0)) throw ParseError(ctx + ".ks must be > 0");
    return c;
  }
  if (type == "pop") {
    check_keys(obj, ctx,
               {"type", "kv", "ld_min", "nbd", "nbd_deg", "resolution",
                "predict_dt"});
    PopConfig c;
    c.kv = get_num(obj, "kv", c.kv, ctx);
    c.ld_min = get_num(obj, "ld_min", c.ld_min, ctx);
    c.nbd = get_angle(obj, "nbd", "nbd_deg", c.nbd, ctx);
    c.resolution = get_count(obj, "resolution", c.resolution, ctx);
    c.predict_dt = get_num(obj, "predict_dt", c.predict_dt, ctx);
    if (c.resolution < 3 || c.resolution % 2 == 0)
      throw ParseError(ctx + ".resolution must be odd and >= 3");
    if (!(c.nbd > 0.0)) throw ParseError(ctx + ".nbd must be > 0");
    if (!(c.ld_min >= 0.0)) throw ParseError(ctx + ".ld_min must be >= 0");
    if (!(c.predict_dt > 0.0)) throw ParseError(ctx + ".predict_dt must be > 0");
    return c;
  }
  throw ParseError(ctx + ".type '" + type +
                   "' unknown (expected pid, pure_pursuit, stanley, or pop)");
}

std::vector<Waypoint> parse_track(const json& obj,
                                  const std::filesystem::path& base_dir) {
  if (!obj.is_object()) throw ParseError("track must be a JSON object");
  check_keys(obj, "track", {"file", "generator"});
  const bool has_file = obj.contains("file");
  const bool has_gen = obj.contains("generator");
  if (has_file == has_gen)
    throw ParseError("track: give exactly one of 'file' or 'generator'");
  if (has_file) {
    const json& f = obj.at("file");
    if (!f.is_string()) throw ParseError("track.file must be a string");
    std::filesystem::path p = f.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return load_track_csv(p);
  }
  return generate_from_spec(obj.at("generator"));
}

VehicleState parse_spawn(const json& obj, const std::vector<Waypoint>& track) {
  if (!obj.is_object()) throw ParseError("spawn must be a JSON object");
  check_keys(obj, "spawn",
             {"x", "y", "theta", "theta_deg", "v", "omega", "lateral_offset",
              "along_offset"});
  const bool relative =
      obj.contains("lateral_offset") || obj.contains("along_offset");
  const bool absolute = obj.contains("x") || obj.contains("y") ||
                        obj.contains("theta") || obj.contains("theta_deg");
  if (relative && absolute)
    throw ParseError(
        "spawn: offset keys (lateral_offset/along_offset) cannot be mixed "
        "with absolute pose keys");
  VehicleState s;
  if (relative) {
    // Pose relative to the first track segment: +lateral is left of the
    // direction of travel, heading aligned with it.
    const Waypoint& a = track.front();
    const Waypoint& b = track[1];
    const double len = euclidean_distance(a, b);
    const double ux = (b.x - a.x) / len;
    const double uy = (b.y - a.y) / len;
    const double lat = get_num(obj, "lateral_offset", 0.0, "spawn");
    const double along = get_num(obj, "along_offset", 0.0, "spawn");
    s.x = a.x + along * ux - lat * uy;
    s.y = a.y + along * uy + lat * ux;
    s.theta = std::atan2(uy, ux);
  } else {
    s.x = get_num(obj, "x", 0.0, "spawn");
    s.y = get_num(obj, "y", 0.0, "spawn");
    s.theta = get_angle(obj, "theta", "theta_deg", 0.0, "spawn");
  }
  s.v = get_num(obj, "v", 0.0, "spawn");
  s.omega = get_num(obj, "omega", 0.0, "spawn");
  return s;
}

}  // namespace

LoadedScenario load_scenario_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open scenario file: " + file.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("scenario " + file.string() + ": " + e.what());
  }
  if (!doc.is_object())
    throw ParseError("scenario document must be a JSON object");
  check_keys(doc, "scenario",
             {"name", "track", "densify_resolution", "epsilon",
              "closed_loop_lookahead", "dt", "controller", "controllers",
              "longitudinal", "plant", "spawn", "stop", "bailout_crosstrack",
              "output"});

  LoadedScenario out;
  Scenario& s = out.base;

  if (doc.contains("name")) {
    if (!doc.at("name").is_string())
      throw ParseError("scenario.name must be a string");
    s.name = doc.at("name").get<std::string>();
  } else {
    s.name = file.stem().string();
  }

  s.track = parse_track(child(doc, "track", "scenario"),
                        file.has_parent_path() ? file.parent_path()
                                               : std::filesystem::path("."));
  if (s.track.size() < 2)
    throw ParseError("scenario track needs at least 2 waypoints");

  s.densify_resolution =
      get_num(doc, "densify_resolution", s.densify_resolution, "scenario");
  s.epsilon = get_num(doc, "epsilon", s.epsilon, "scenario");
  s.closed_loop_lookahead = get_bool(doc, "closed_loop_lookahead",
                                     s.closed_loop_lookahead, "scenario");
  s.dt = get_num(doc, "dt", s.dt, "scenario");
  s.bailout_crosstrack =
      get_num(doc, "bailout_crosstrack", s.bailout_crosstrack, "scenario");

  if (doc.contains("plant")) {
    const json& p = doc.at("plant");
    if (!p.is_object()) throw ParseError("plant must be a JSON object");
    check_keys(p, "plant",
               {"wheelbase", "steering_limit", "max_accel", "max_decel",
                "v_cap"});
    s.plant.wheelbase = get_num(p, "wheelbase", s.plant.wheelbase, "plant");
    s.plant.steering_limit =
        get_num(p, "steering_limit", s.plant.steering_limit, "plant");
    s.plant.max_accel = get_num(p, "max_accel", s.plant.max_accel, "plant");
    s.plant.max_decel = get_num(p, "max_decel", s.plant.max_decel, "plant");
    s.plant.v_cap = get_num(p, "v_cap", s.plant.v_cap, "plant");
  }

  if (doc.contains("longitudinal")) {
    const json& l = doc.at("longitudinal");
    if (!l.is_object()) throw ParseError("longitudinal must be a JSON object");
    check_keys(l, "longitudinal", {"k_tau", "delta_lim", "v_lim"});
    s.longitudinal.k_tau =
        get_num(l, "k_tau", s.longitudinal.k_tau, "longitudinal");
    s.longitudinal.delta_lim =
        get_num(l, "delta_lim", s.longitudinal.delta_lim, "longitudinal");
    s.longitudinal.v_lim =
        get_num(l, "v_lim", s.longitudinal.v_lim, "longitudinal");
    if (!(s.longitudinal.k_tau >= 0.0 && s.longitudinal.k_tau <= 1.0))
      throw ParseError("longitudinal.k_tau must be in [0, 1]");
    if (!(s.longitudinal.delta_lim > 0.0 && s.longitudinal.v_lim > 0.0))
      throw ParseError("longitudinal limits must be > 0");
  }

  if (doc.contains("stop")) {
    const json& st = doc.at("stop");
    if (!st.is_object()) throw ParseError("stop must be a JSON object");
    check_keys(st, "stop", {"max_steps", "finish_radius"});
    s.stop.max_steps = get_count(st, "max_steps", s.stop.max_steps, "stop");
    s.stop.finish_radius =
        get_num(st, "finish_radius", s.stop.finish_radius, "stop");
  }

  if (doc.contains("spawn"))
    s.spawn = parse_spawn(doc.at("spawn"), s.track);

  const bool has_one = doc.contains("controller");
  const bool has_many = doc.contains("controllers");
  if (has_one == has_many)
    throw ParseError(
        "scenario: give exactly one of 'controller' or 'controllers'");
  if (has_one) {
    out.controllers.push_back(
        parse_controller(doc.at("controller"), "controller"));
  } else {
    const json& list = doc.at("controllers");
    if (!list.is_array() || list.empty())
      throw ParseError("controllers must be a non-empty JSON array");
    for (std::size_t i = 0; i < list.size(); ++i)
      out.controllers.push_back(parse_controller(
          list.at(i), "controllers[" + std::to_string(i) + "]"));
  }
  s.lateral = out.controllers.front();

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (!o.is_object()) throw ParseError("output must be a JSON object");
    check_keys(o, "output", {"dir", "svg"});
    out.svg = get_bool(o, "svg", out.svg, "output");
    if (o.contains("dir")) {
      if (!o.at("dir").is_string())
        throw ParseError("output.dir must be a string");
      out.output_dir = o.at("dir").get<std::string>();
    }
  }
  return out;
}

Scenario scenario_for(const LoadedScenario& doc, std::size_t index) {
  Scenario s = doc.base;
  s.lateral = doc.controllers.at(index);
  s.name += "/";
  s.name += controller_label(lateral_kind(s.lateral));
  return s;
}

}  // namespace popctl::tools
