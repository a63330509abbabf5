// Copyright 2026 The lanegame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lanegame/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#ifndef LANEGAME_SCENARIO_DIR
#define LANEGAME_SCENARIO_DIR ""
#endif
#ifndef LANEGAME_INSTALL_SCENARIO_DIR
#define LANEGAME_INSTALL_SCENARIO_DIR ""
#endif

namespace lanegame {

using nlohmann::json;

namespace {

const std::set<std::string> kRoles = {"EC", "LC", "LC2", "AC1", "AC2"};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

// Reads optional members of one JSON object and rejects unknown keys.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      fail(path_ + "." + key, std::string("wrong type (") + e.what() + ")");
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string path(const char* key) const { return path_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail(path_ + "." + it.key(), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_road(const json& j, RoadGeometry& road) {
  Reader r(j, "road");
  std::string type = "straight";
  double radius = 0.0;
  r.get("type", type);
  r.get("radius", radius);
  r.get("lane_width", road.lane_width);
  r.get("lane_count", road.lane_count);
  r.get("terminating_lane", road.terminating_lane);
  r.get("lane_end_station", road.lane_end_station);
  r.get("station_min", road.station_min);
  r.get("station_max", road.station_max);
  r.get("edge_line_weight", road.edge_line_weight);
  r.get("interior_line_weight", road.interior_line_weight);
  r.finish();
  if (type == "straight") {
    road.curvature = 0.0;
  } else if (type == "arc") {
    if (radius == 0.0) fail("road.radius", "arc roads need a nonzero radius");
    road.curvature = 1.0 / radius;
  } else {
    fail("road.type", "must be 'straight' or 'arc'");
  }
}

void read_limits(const json& j, SpeedLimits& l, const std::string& path) {
  Reader r(j, path);
  r.get("v_min", l.v_min);
  r.get("v_max", l.v_max);
  r.get("a_min", l.a_min);
  r.get("a_max", l.a_max);
  r.finish();
}

void read_gains(const json& j, CostGains& g) {
  Reader r(j, "gains");
  r.get("kappa_v_log", g.kappa_v_log);
  r.get("kappa_s_log", g.kappa_s_log);
  r.get("kappa_v_lat", g.kappa_v_lat);
  r.get("kappa_s_lat", g.kappa_s_lat);
  r.get("kappa_ax", g.kappa_ax);
  r.get("kappa_ay", g.kappa_ay);
  r.get("epsilon", g.epsilon);
  r.get("l_v", g.l_v);
  r.get("horizon", g.horizon);
  r.get("lane_change_time", g.lane_change_time);
  r.get("lane_end_margin", g.lane_end_margin);
  r.get("lane_end_decel", g.lane_end_decel);
  r.get("lane_speed_weight", g.lane_speed_weight);
  r.finish();
}

void read_field(const json& j, FieldParams& f) {
  Reader r(j, "field");
  if (const json* o = r.child("obstacle")) {
    Reader ro(*o, "field.obstacle");
    ro.get("a_oc", f.obstacle.a_oc);
    ro.get("rho_x", f.obstacle.rho_x);
    ro.get("rho_y", f.obstacle.rho_y);
    ro.get("b", f.obstacle.b);
    ro.get("c", f.obstacle.c);
    ro.finish();
  }
  if (const json* o = r.child("road")) {
    Reader rr(*o, "field.road");
    rr.get("a_r", f.road.a_r);
    rr.get("d_safe", f.road.d_safe);
    rr.get("W", f.road.W);
    rr.finish();
  }
  r.finish();
}

void read_mpc(const json& j, MpcConfig& m) {
  Reader r(j, "mpc");
  r.get("N_p", m.N_p);
  r.get("N_c", m.N_c);
  r.get("dt", m.dt);
  std::vector<double> q;
  r.get("Q_diag", q);
  if (!q.empty()) {
    if (q.size() != 3) fail("mpc.Q_diag", "needs three entries");
    m.Q = Eigen::Vector3d(q[0], q[1], q[2]).asDiagonal();
  }
  r.get("R", m.R);
  r.get("u_min", m.u_min);
  r.get("u_max", m.u_max);
  r.get("du_min", m.du_min);
  r.get("du_max", m.du_max);
  r.get("max_iterations", m.max_iterations);
  r.get("tolerance", m.tolerance);
  r.finish();
}

void read_vehicle_params(const json& j, VehicleParams& v) {
  Reader r(j, "vehicle_params");
  r.get("m", v.m);
  r.get("I_z", v.I_z);
  r.get("l_f", v.l_f);
  r.get("l_r", v.l_r);
  r.get("k_f", v.k_f);
  r.get("k_r", v.k_r);
  r.get("K_s", v.K_s);
  r.finish();
}

StyleProfile read_style(const json& j, const std::string& name) {
  const std::string path = "styles." + name;
  Reader r(j, path);
  StyleProfile s;
  s.name = name;
  std::string base;
  r.get("base", base);
  if (!base.empty()) {
    try {
      s = style_profile(base);
    } catch (const UnknownStyle&) {
      fail(path + ".base", "unknown built-in style '" + base + "'");
    }
    s.name = name;
  }
  r.get("T_d", s.driver.T_d);
  r.get("T_p", s.driver.T_p);
  r.get("G_s", s.driver.G_s);
  r.get("a", s.driver.a);
  r.get("w_ds", s.w_ds);
  r.get("w_rc", s.w_rc);
  r.get("w_pe", s.w_pe);
  r.finish();
  return s;
}

std::string line_context(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

StyleProfile ScenarioConfig::style(const std::string& name) const {
  auto it = custom_styles.find(name);
  if (it != custom_styles.end()) return it->second;
  return style_profile(name);
}

ActionGrid ScenarioConfig::grid() const {
  const SpeedLimits& l = limits.front();
  return ActionGrid::uniform(l.a_min, l.a_max, acceleration_step);
}

void ScenarioConfig::validate() const {
  auto wrap = [](const std::string& path, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  };
  wrap("road", [&] { road.validate(); });
  wrap("gains", [&] { gains.validate(); });
  wrap("field.obstacle", [&] { field.obstacle.validate(); });
  wrap("field.road", [&] { field.road.validate(); });
  wrap("mpc", [&] { mpc.validate(); });
  wrap("vehicle_params", [&] { vehicle.validate(); });
  if (!(duration > 0.0)) fail("duration", "must be positive");
  if (!(dt > 0.0)) fail("dt", "must be positive");
  if (std::abs(mpc.dt - dt) > 1e-12) fail("mpc.dt", "must equal the simulation dt");
  if (!(acceleration_step > 0.0)) fail("acceleration_step", "must be positive");
  if (!(v_floor > 0.0)) fail("v_floor", "must be positive");
  if (limits.size() != 1 && static_cast<int>(limits.size()) != road.lane_count) {
    fail("limits", "give one block or one block per lane");
  }
  for (std::size_t k = 0; k < limits.size(); ++k) {
    const SpeedLimits& l = limits[k];
    const std::string p = "limits[" + std::to_string(k) + "]";
    if (!(l.v_min <= l.v_max) || l.v_min < 0.0) fail(p, "need 0 <= v_min <= v_max");
    if (!(l.a_min <= 0.0 && 0.0 <= l.a_max)) fail(p, "need a_min <= 0 <= a_max");
  }
  for (const auto& [name, s] : custom_styles) {
    wrap("styles." + name, [&] { s.validate(); });
  }
  wrap("ego_style", [&] { (void)style(ego_style); });
  wrap("surrounding_style", [&] { (void)style(surrounding_style); });

  const auto ec = std::count_if(vehicles.begin(), vehicles.end(),
                                [](const VehicleSpec& v) { return v.role == "EC"; });
  if (ec != 1) {
    fail("vehicles", "exactly one EC is required, found " + std::to_string(ec));
  }
  std::set<std::string> ids;
  for (std::size_t k = 0; k < vehicles.size(); ++k) {
    const VehicleSpec& v = vehicles[k];
    const std::string p = "vehicles[" + std::to_string(k) + "]";
    if (!kRoles.count(v.role)) fail(p + ".role", "unknown role '" + v.role + "'");
    if (!ids.insert(v.id).second) fail(p + ".id", "duplicate id '" + v.id + "'");
    if (!(v.v >= 0.0)) fail(p + ".velocity", "must be non-negative");
    if (v.role == "EC" && !(v.v > v_floor)) fail(p + ".velocity", "ego speed must exceed v_floor");
    const FrenetPoint f = road.project(v.X, v.Y);
    if (!road.in_station_domain(f.s)) fail(p + ".position", "outside the road station range");
    if (f.n > road.left_extent() || f.n < road.right_extent()) {
      fail(p + ".position", "not on a valid lane");
    }
    if (!road.lane_open(road.lane_at(f.n), f.s)) fail(p + ".position", "on a lane that has ended");
    if (!v.style.empty()) wrap(p + ".style", [&] { (void)style(v.style); });
  }
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": parse error at " + line_context(text, e.byte) + ": " +
                      e.what());
  }
  ScenarioConfig c;
  Reader r(j, "$");
  r.get("name", c.name);
  std::string strategy = "nash";
  r.get("strategy", strategy);
  try {
    c.strategy = parse_equilibrium(strategy);
  } catch (const std::invalid_argument&) {
    fail("strategy", "must be 'nash' or 'stackelberg'");
  }
  r.get("ego_style", c.ego_style);
  r.get("surrounding_style", c.surrounding_style);
  r.get("duration", c.duration);
  r.get("dt", c.dt);
  c.mpc.dt = c.dt;
  r.get("acceleration_step", c.acceleration_step);
  r.get("v_floor", c.v_floor);
  r.get("completion_lateral", c.completion_lateral);
  r.get("completion_heading", c.completion_heading);
  if (const json* road = r.child("road")) read_road(*road, c.road);
  if (const json* lim = r.child("limits")) {
    if (lim->is_array()) {
      c.limits.assign(lim->size(), SpeedLimits{});
      for (std::size_t k = 0; k < lim->size(); ++k) {
        read_limits((*lim)[k], c.limits[k], "limits[" + std::to_string(k) + "]");
      }
    } else {
      read_limits(*lim, c.limits.front(), "limits");
    }
  }
  if (const json* g = r.child("gains")) read_gains(*g, c.gains);
  if (const json* f = r.child("field")) read_field(*f, c.field);
  if (const json* m = r.child("mpc")) read_mpc(*m, c.mpc);
  if (const json* v = r.child("vehicle_params")) read_vehicle_params(*v, c.vehicle);
  if (const json* s = r.child("styles")) {
    if (!s->is_object()) fail("styles", "expected an object");
    for (auto it = s->begin(); it != s->end(); ++it) {
      c.custom_styles[it.key()] = read_style(it.value(), it.key());
    }
  }
  if (const json* vs = r.child("vehicles")) {
    if (!vs->is_array()) fail("vehicles", "expected an array");
    for (std::size_t k = 0; k < vs->size(); ++k) {
      const std::string p = "vehicles[" + std::to_string(k) + "]";
      Reader rv((*vs)[k], p);
      VehicleSpec v;
      std::vector<double> pos;
      rv.get("id", v.id);
      rv.get("role", v.role);
      rv.get("position", pos);
      rv.get("velocity", v.v);
      rv.get("style", v.style);
      rv.finish();
      if (pos.size() != 2) fail(p + ".position", "needs [X, Y]");
      v.X = pos[0];
      v.Y = pos[1];
      if (v.id.empty()) v.id = v.role;
      c.vehicles.push_back(v);
    }
  }
  r.finish();
  c.validate();
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

std::string resolve_scenario_path(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  if (fs::exists(name_or_path)) return name_or_path;
  std::vector<std::string> dirs;
  if (const char* env = std::getenv("LANEGAME_SCENARIO_DIR")) dirs.emplace_back(env);
  dirs.emplace_back(LANEGAME_SCENARIO_DIR);
  dirs.emplace_back(LANEGAME_INSTALL_SCENARIO_DIR);
  for (const std::string& d : dirs) {
    if (d.empty()) continue;
    const fs::path p = fs::path(d) / (name_or_path + ".json");
    if (fs::exists(p)) return p.string();
  }
  throw ConfigError(name_or_path + ": no such scenario file or bundled scenario");
}

}  // namespace lanegame
