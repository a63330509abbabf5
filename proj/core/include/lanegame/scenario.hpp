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

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lanegame/costs.hpp"
#include "lanegame/field.hpp"
#include "lanegame/game.hpp"
#include "lanegame/mpc.hpp"
#include "lanegame/road.hpp"
#include "lanegame/styles.hpp"
#include "lanegame/vehicle_model.hpp"

namespace lanegame {

// Parse failures carry line context; validation failures name the field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VehicleSpec {
  std::string id;
  std::string role;  // EC, LC, LC2, AC1, AC2
  double X = 0.0;
  double Y = 0.0;
  double v = 0.0;
  std::string style;  // empty: EC takes the run style, others the default surrounding style
};

struct ScenarioConfig {
  std::string name;
  RoadGeometry road;
  std::vector<VehicleSpec> vehicles;
  std::vector<SpeedLimits> limits{SpeedLimits{}};
  EquilibriumKind strategy = EquilibriumKind::kNash;
  std::string ego_style = "normal";
  std::string surrounding_style = "normal";
  double duration = 15.0;
  double dt = 0.05;
  double acceleration_step = 0.5;
  CostGains gains;
  FieldParams field;
  MpcConfig mpc;
  VehicleParams vehicle;
  double v_floor = kDefaultVFloor;
  double completion_lateral = 0.2;   // |y2| bound that ends a lane change (m)
  double completion_heading = 0.02;  // |y3| bound that ends a lane change (rad)
  std::map<std::string, StyleProfile> custom_styles;

  // Throws ConfigError naming the violated invariant.
  void validate() const;
  StyleProfile style(const std::string& name) const;
  ActionGrid grid() const;
};

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin = "<string>");
ScenarioConfig load_scenario(const std::string& path);

// Resolves a bundled scenario name ("scenario_a") or a file path.
std::string resolve_scenario_path(const std::string& name_or_path);

}  // namespace lanegame
