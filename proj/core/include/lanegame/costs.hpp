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

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lanegame/road.hpp"
#include "lanegame/styles.hpp"

namespace lanegame {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct DecisionAction {
  double a_x = 0.0;
  int sigma = 0;  // -1 change left, 0 keep lane, +1 change right
};

struct CostGains {
  double kappa_v_log = 1.0;
  double kappa_s_log = 100.0;
  double kappa_v_lat = 1.0;
  double kappa_s_lat = 100.0;
  double kappa_ax = 1.0;
  double kappa_ay = 1.0;
  double epsilon = 0.01;
  double l_v = 5.0;
  double horizon = 3.0;             // T_dm, propagation time of the decision costs
  double lane_change_time = 3.0;    // T_lc used for the lateral acceleration estimate
  double lane_end_margin = 30.0;    // keep-lane becomes infeasible inside this distance
  double lane_end_decel = 2.0;      // braking rate behind a lane end (virtual leader)
  double lane_speed_weight = 0.0;   // weight of (v_max - v_bar)^2 in the efficiency term

  void validate() const;
};

struct CostBreakdown {
  double j_ds = 0.0;
  double j_rc = 0.0;
  double j_pe = 0.0;
  double total = 0.0;
  double j_ds_log = 0.0;
  double j_ds_lat = 0.0;

  bool feasible() const { return total < kInf; }
  static CostBreakdown infeasible();
};

// Position and speed used by the pairwise safety terms.
struct Kinematic {
  double X = 0.0;
  double Y = 0.0;
  double v = 0.0;
};

// kappa_v * lambda * dv^2 + kappa_s / (ds^2 + eps), ds = distance - l_v.
double pair_safety(double distance, double dv, double kappa_v, double kappa_s,
                   const CostGains& g);

// dv = v_lead - v_ego, lambda = 1 iff dv < 0. Absent lead costs 0.
double longitudinal_safety_cost(const Kinematic& ego, const std::optional<Kinematic>& lead,
                                const CostGains& g);

// dv = v_ego - v_adjacent, lambda = 1 iff dv < 0. Absent partner costs 0.
double lateral_safety_cost(const Kinematic& ego, const std::optional<Kinematic>& adjacent,
                           const CostGains& g);

double comfort_cost(double a_x, double a_y, int sigma, const CostGains& g);

// Peak lateral acceleration of a sinusoidal lane change of width w over t_lc.
double lane_change_lateral_accel(double lane_width, double t_lc);

// (v - v_bar)^2 + lane_speed_weight * (v_max - v_bar)^2.
double efficiency_cost(double v_ego, double v_bar, double v_max, const CostGains& g);

struct SpeedLimits {
  double v_min = 0.0;
  double v_max = 25.0;
  double a_min = -4.0;
  double a_max = 3.0;
};

// A vehicle as seen by the decision layer: lane-bound, Frenet station and speed.
struct Agent {
  std::string id;
  std::string role;
  int lane = 1;
  double s = 0.0;
  double v = 0.0;
  double a = 0.0;  // acceleration assumed when the agent is not a player
  StyleProfile style;
};

struct DecisionScene {
  RoadGeometry road;
  std::vector<SpeedLimits> limits;  // per lane, index lane - 1; a single entry applies to all
  Agent ego;                        // ego.lane is the current lane nu
  std::vector<Agent> others;

  const SpeedLimits& limits_for(int lane) const;
};

struct Propagated {
  double s;
  double v;
};

// Constant acceleration over t, with the speed held once it reaches a bound.
Propagated propagate(double s, double v, double a, double t, double v_min, double v_max);

struct LaneBody {
  int lane;
  double s;
  double v;
};

// Lane speed target v_bar for a vehicle at station s_query: the lane limit,
// the speed of the nearest body ahead, and the lane-end virtual leader.
double lane_target_speed(const DecisionScene& scene, int lane, double s_query,
                         const std::vector<LaneBody>& bodies, const CostGains& g);

// partner < 0 means no adjacent player. partner_accel applies to others[partner].
// The lead car is the nearest one ahead now; its spacing after propagation is
// floored at l_v, so overtaking it within the horizon scores as the closest call.
CostBreakdown ego_cost(const DecisionScene& scene, const DecisionAction& action,
                       int partner, double partner_accel, const CostGains& g);

CostBreakdown ac_cost(const DecisionScene& scene, int ac, const DecisionAction& ego_action,
                      double ac_accel, const CostGains& g);

}  // namespace lanegame
