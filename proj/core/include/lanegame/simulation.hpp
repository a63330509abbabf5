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

#include <optional>
#include <string>
#include <vector>

#include "lanegame/game.hpp"
#include "lanegame/scenario.hpp"

namespace lanegame {

struct AgentSample {
  double X = 0.0;
  double Y = 0.0;
  double s = 0.0;
  double v = 0.0;
  double a = 0.0;
  int lane = 0;
};

struct TraceRow {
  double t = 0.0;
  VehicleState ego;
  double ego_s = 0.0;
  double ego_n = 0.0;
  int lane = 0;             // decision lane nu
  int committed_sigma = 0;  // latched lane-change direction, 0 when none
  DecisionAction decision;  // equilibrium ego action of this step
  int multiplicity = 0;
  bool game_fallback = false;
  int game_side = 0;
  double u = 0.0;           // applied preview coordinate
  double field = 0.0;       // total field at the ego position
  CostBreakdown cost;
  double mpc_cost = 0.0;
  double mpc_zero_cost = 0.0;
  int mpc_iterations = 0;
  bool mpc_degraded = false;
  bool mpc_monotone = true;
  bool mpc_in_bounds = true;
  bool v_floor_clamped = false;
  std::vector<AgentSample> others;
};

struct TraceLog {
  std::string scenario;
  std::string style;
  EquilibriumKind strategy = EquilibriumKind::kNash;
  double dt = 0.05;
  double l_v = 5.0;
  std::vector<std::string> other_ids;
  std::vector<std::string> other_roles;
  std::vector<TraceRow> rows;
  bool aborted = false;
  std::string abort_reason;
};

TraceLog run_simulation(const ScenarioConfig& config, const std::string& style,
                        EquilibriumKind strategy);

struct RunMetrics {
  std::optional<double> t_c;
  int sigma = 0;  // committed direction at t_c
  std::optional<double> t_complete;
  std::vector<std::string> ids;
  std::vector<std::string> roles;
  std::vector<double> gap_at_tc;       // per surrounding vehicle, sign(ds) * (distance - l_v)
  std::vector<double> velocity_at_tc;  // per surrounding vehicle
  double ego_velocity_at_tc = 0.0;
  double rms_safety = 0.0;
  double rms_comfort = 0.0;
  double rms_efficiency = 0.0;
  double rms_total = 0.0;
  double min_distance = 0.0;  // smallest ego-to-vehicle Euclidean distance
  double max_field = 0.0;
  int game_fallbacks = 0;
  int mpc_degraded = 0;
  int mpc_zero_dominance_violations = 0;
  int mpc_monotone_violations = 0;
  int mpc_bound_violations = 0;
  int v_floor_events = 0;
  bool aborted = false;
};

RunMetrics summarize(const TraceLog& trace);

}  // namespace lanegame
