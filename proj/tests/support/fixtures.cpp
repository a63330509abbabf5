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


#include "fixtures.hpp"

#include <cmath>

namespace lanegame::testing {

Agent make_agent(const std::string& id, const std::string& role, int lane, double s, double v) {
  Agent a;
  a.id = id;
  a.role = role;
  a.lane = lane;
  a.s = s;
  a.v = v;
  a.style = style_profile("normal");
  return a;
}

DecisionScene straight_scene(int lanes, int ego_lane, double ego_s, double ego_v) {
  DecisionScene sc;
  sc.road.lane_count = lanes;
  sc.limits = {SpeedLimits{}};
  sc.ego = make_agent("EC", "EC", ego_lane, ego_s, ego_v);
  return sc;
}

ScenarioConfig bundled(const std::string& name) { return load_scenario(resolve_scenario_path(name)); }

CostTable random_table(std::mt19937& rng, int n_accel, const std::vector<int>& sigmas,
                       int n_cols, bool coarse) {
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::uniform_int_distribution<int> k(0, 4);
  CostTable t;
  for (int s : sigmas) {
    for (int i = 0; i < n_accel; ++i) t.rows.push_back({-2.0 + 0.5 * i, s});
  }
  for (int j = 0; j < n_cols; ++j) t.cols.push_back(-2.0 + 0.5 * j);
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  t.ego.resize(n, n_cols);
  t.ac.resize(n, n_cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n_cols; ++j) {
      t.ego(i, j) = coarse ? k(rng) : u(rng);
      t.ac(i, j) = coarse ? k(rng) : u(rng);
    }
  }
  return t;
}

DecisionScene random_scene(std::mt19937& rng, int lanes, int n_others) {
  std::uniform_int_distribution<int> lane(1, lanes);
  std::uniform_real_distribution<double> ds(-40.0, 40.0);
  std::uniform_real_distribution<double> v(8.0, 24.0);
  DecisionScene sc = straight_scene(lanes, lane(rng), 100.0, v(rng));
  for (int k = 0; k < n_others; ++k) {
    const std::string id = "V" + std::to_string(k);
    sc.others.push_back(make_agent(id, "AC1", lane(rng), 100.0 + ds(rng), v(rng)));
  }
  return sc;
}

namespace {

int nearest_ac(const DecisionScene& sc, int lane) {
  int best = -1;
  double best_d = kInf;
  for (std::size_t i = 0; i < sc.others.size(); ++i) {
    const Agent& o = sc.others[i];
    if (o.lane != lane || o.role.rfind("AC", 0) != 0) continue;
    if (std::abs(o.s - sc.ego.s) < best_d) {
      best_d = std::abs(o.s - sc.ego.s);
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace

DecisionScene first_decision_scene(const ScenarioConfig& cfg, const std::string& style) {
  DecisionScene sc;
  sc.road = cfg.road;
  sc.limits = cfg.limits;
  for (const VehicleSpec& v : cfg.vehicles) {
    const FrenetPoint f = cfg.road.project(v.X, v.Y);
    Agent a;
    a.id = v.id;
    a.role = v.role;
    a.lane = cfg.road.lane_at(f.n);
    a.s = f.s;
    a.v = v.v;
    if (v.role == "EC") {
      a.style = cfg.style(style);
      sc.ego = a;
    } else {
      a.style = cfg.style(v.style.empty() ? cfg.surrounding_style : v.style);
      sc.others.push_back(a);
    }
  }
  return sc;
}

GameSolution first_decision(const DecisionScene& sc, const ActionGrid& grid, const CostGains& g,
                            EquilibriumKind kind) {
  const RoadGeometry& r = sc.road;
  const int lane = sc.ego.lane;
  if (r.lane_exists(lane - 1) && r.lane_exists(lane + 1)) {
    return solve_two_ac(sc, nearest_ac(sc, lane - 1), nearest_ac(sc, lane + 1), grid, g, kind);
  }
  const int side = r.lane_exists(lane - 1) ? lane - 1 : lane + 1;
  return solve_2p(sc, r.lane_exists(side) ? nearest_ac(sc, side) : -1, grid, g, kind);
}

}  // namespace lanegame::testing
