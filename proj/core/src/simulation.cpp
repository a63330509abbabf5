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

#include "lanegame/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lanegame {

namespace {

bool is_adjacent_role(const std::string& role) { return role.rfind("AC", 0) == 0; }

struct PointMass {
  int lane;
  double s;
  double v;
  double a = 0.0;
};

// Nearest AC-role vehicle on `lane` by station distance, or -1.
int nearest_ac(const DecisionScene& sc, int lane) {
  if (!sc.road.lane_exists(lane)) return -1;
  int best = -1;
  double best_d = kInf;
  for (std::size_t i = 0; i < sc.others.size(); ++i) {
    const Agent& o = sc.others[i];
    if (o.lane != lane || !is_adjacent_role(o.role)) continue;
    const double d = std::abs(o.s - sc.ego.s);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

VehicleState with_pose(VehicleState x, const Pose2& p) {
  x.X = p.X;
  x.Y = p.Y;
  x.phi = p.heading;
  return x;
}

}  // namespace

TraceLog run_simulation(const ScenarioConfig& cfg, const std::string& style,
                        EquilibriumKind strategy) {
  cfg.validate();
  const RoadGeometry& road = cfg.road;
  const StyleProfile ego_style = cfg.style(style);
  const ActionGrid base_grid = cfg.grid();

  TraceLog trace;
  trace.scenario = cfg.name;
  trace.style = style;
  trace.strategy = strategy;
  trace.dt = cfg.dt;
  trace.l_v = cfg.gains.l_v;

  DecisionScene scene;
  scene.road = road;
  scene.limits = cfg.limits;
  scene.ego.id = "EC";
  scene.ego.role = "EC";
  scene.ego.style = ego_style;

  VehicleState ego;
  int lane = 1;
  std::vector<PointMass> masses;
  for (const VehicleSpec& v : cfg.vehicles) {
    const FrenetPoint f = road.project(v.X, v.Y);
    if (v.role == "EC") {
      ego.X = v.X;
      ego.Y = v.Y;
      ego.v_x = v.v;
      ego.phi = road.heading_at(f.s);
      lane = road.lane_at(f.n);
      scene.ego.id = v.id;
      continue;
    }
    Agent a;
    a.id = v.id;
    a.role = v.role;
    a.lane = road.lane_at(f.n);
    a.style = cfg.style(v.style.empty() ? cfg.surrounding_style : v.style);
    scene.others.push_back(a);
    masses.push_back({a.lane, f.s, v.v});
    trace.other_ids.push_back(v.id);
    trace.other_roles.push_back(v.role);
  }

  // The driver preview law acts in a road-aligned frame anchored at the ego's
  // station. The preview point is carried between steps as a global point.
  Pose2 preview;
  {
    const Pose2 fr = road.frame_at(road.project(ego.X, ego.Y).s);
    const VehicleState xl = with_pose(ego, to_frame(fr, {ego.X, ego.Y, ego.phi}));
    const double u0 = lane_preview_target(xl, lane, road, ego_style.driver, fr);
    preview = from_frame(fr, {xl.X + ego_style.driver.T_p * xl.v_x, u0, 0.0});
  }
  int committed = 0;
  const int steps = static_cast<int>(std::llround(cfg.duration / cfg.dt));

  for (int k = 0; k < steps; ++k) {
    TraceRow row;
    row.t = k * cfg.dt;
    try {
      const FrenetPoint fe = road.project(ego.X, ego.Y);
      scene.ego.lane = lane;
      scene.ego.s = fe.s;
      scene.ego.v = ego.v_x;
      for (std::size_t i = 0; i < masses.size(); ++i) {
        scene.others[i].s = masses[i].s;
        scene.others[i].v = masses[i].v;
        scene.others[i].a = masses[i].a;
      }

      GameSolution sol;
      if (committed != 0) {
        ActionGrid g = base_grid;
        g.sigmas = {committed};
        sol = solve_2p(scene, nearest_ac(scene, lane + committed), g, cfg.gains, strategy);
      } else if (road.lane_exists(lane - 1) && road.lane_exists(lane + 1)) {
        sol = solve_two_ac(scene, nearest_ac(scene, lane - 1), nearest_ac(scene, lane + 1),
                           base_grid, cfg.gains, strategy);
      } else {
        const int side = road.lane_exists(lane - 1) ? lane - 1 : lane + 1;
        sol = solve_2p(scene, nearest_ac(scene, side), base_grid, cfg.gains, strategy);
      }
      if (committed == 0 && sol.ego_action.sigma != 0) committed = sol.ego_action.sigma;

      std::vector<bool> playing(masses.size(), false);
      for (std::size_t k2 = 0; k2 < sol.ac_index.size(); ++k2) {
        const auto i = static_cast<std::size_t>(sol.ac_index[k2]);
        masses[i].a = sol.ac_actions[k2];
        playing[i] = true;
      }
      for (std::size_t i = 0; i < masses.size(); ++i) {
        if (playing[i]) continue;
        masses[i].a = is_adjacent_role(scene.others[i].role)
                          ? best_response_accel(scene, static_cast<int>(i), sol.ego_action,
                                                base_grid, cfg.gains)
                          : 0.0;
      }

      const Pose2 frame = road.frame_at(fe.s);
      const VehicleState ego_local = with_pose(ego, to_frame(frame, {ego.X, ego.Y, ego.phi}));
      const double u_prev = to_frame(frame, preview).Y;

      PlanScene ps;
      ps.frame = frame;
      ps.road = &road;
      ps.target_lane = lane + committed;
      ps.a_x = sol.ego_action.a_x;
      ps.vehicle = cfg.vehicle;
      ps.driver = ego_style.driver;
      ps.field = cfg.field;
      for (const PointMass& m : masses) {
        const Pose2 p = road.to_global(m.s, road.lane_center(m.lane));
        ps.obstacles.push_back({p.X, p.Y, p.heading, m.v});
      }
      const PlanResult plan = solve_plan(ego_local, u_prev, ps, cfg.mpc);
      const double u = apply_receding(u_prev, plan);

      row.ego = ego;
      row.ego_s = fe.s;
      row.ego_n = fe.n;
      row.lane = lane;
      row.committed_sigma = committed;
      row.decision = sol.ego_action;
      row.multiplicity = sol.multiplicity;
      row.game_fallback = sol.fallback;
      row.game_side = sol.side;
      row.cost = sol.ego_cost;
      row.u = u;
      row.field = total_field(ego.X, ego.Y, ps.obstacles, road, cfg.field);
      row.mpc_cost = plan.cost;
      row.mpc_zero_cost = plan.zero_cost;
      row.mpc_iterations = plan.iterations;
      row.mpc_degraded = plan.degraded;
      for (std::size_t h = 1; h < plan.cost_history.size(); ++h) {
        if (plan.cost_history[h] > plan.cost_history[h - 1]) row.mpc_monotone = false;
      }
      double uu = u_prev;
      for (Eigen::Index j = 0; j < plan.du_sequence.size(); ++j) {
        const double du = plan.du_sequence(j);
        uu += du;
        if (du < cfg.mpc.du_min - 1e-12 || du > cfg.mpc.du_max + 1e-12 ||
            uu < plan.u_min - 1e-9 || uu > plan.u_max + 1e-9) {
          row.mpc_in_bounds = false;
        }
      }
      for (std::size_t i = 0; i < masses.size(); ++i) {
        const Pose2 p = road.to_global(masses[i].s, road.lane_center(masses[i].lane));
        row.others.push_back({p.X, p.Y, masses[i].s, masses[i].v, masses[i].a, masses[i].lane});
      }

      const StepResult next = step(ego_local, {u, sol.ego_action.a_x}, cfg.dt, cfg.vehicle,
                                   ego_style.driver, cfg.v_floor);
      row.v_floor_clamped = next.v_floor_clamped;
      const VehicleState& xn = next.state;
      ego = with_pose(xn, from_frame(frame, {xn.X, xn.Y, xn.phi}));
      preview = from_frame(frame, {ego_local.X + ego_style.driver.T_p * ego_local.v_x, u, 0.0});
      for (std::size_t i = 0; i < masses.size(); ++i) {
        PointMass& m = masses[i];
        const SpeedLimits& lim = scene.limits_for(m.lane);
        const double vn = std::clamp(m.v + m.a * cfg.dt, lim.v_min, lim.v_max);
        m.s += 0.5 * (m.v + vn) * cfg.dt;
        m.v = vn;
      }

      if (committed != 0) {
        const FrenetPoint fn = road.project(ego.X, ego.Y);
        const double y2 = fn.n - road.lane_center(lane + committed);
        const double y3 = wrap_angle(ego.phi - road.heading_at(fn.s));
        if (std::abs(y2) < cfg.completion_lateral && std::abs(y3) < cfg.completion_heading) {
          lane += committed;
          committed = 0;
        }
      }
      if (!ego.finite()) throw DomainError("ego state became non-finite");
    } catch (const std::exception& e) {
      trace.aborted = true;
      trace.abort_reason = e.what();
      break;
    }
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

RunMetrics summarize(const TraceLog& trace) {
  RunMetrics m;
  m.ids = trace.other_ids;
  m.roles = trace.other_roles;
  m.aborted = trace.aborted;
  if (trace.rows.empty()) return m;
  const int first_lane = trace.rows.front().lane;
  m.min_distance = kInf;
  double ss = 0.0, sc = 0.0, se = 0.0, st = 0.0;
  for (const TraceRow& r : trace.rows) {
    if (!m.t_c && r.committed_sigma != 0) {
      m.t_c = r.t;
      m.sigma = r.committed_sigma;
      m.ego_velocity_at_tc = r.ego.v_x;
      for (const AgentSample& o : r.others) {
        const double d = std::hypot(r.ego.X - o.X, r.ego.Y - o.Y);
        const double sign = r.ego_s >= o.s ? 1.0 : -1.0;
        m.gap_at_tc.push_back(sign * (d - trace.l_v));
        m.velocity_at_tc.push_back(o.v);
      }
    }
    if (!m.t_complete && r.lane != first_lane) m.t_complete = r.t;
    ss += r.cost.j_ds * r.cost.j_ds;
    sc += r.cost.j_rc * r.cost.j_rc;
    se += r.cost.j_pe * r.cost.j_pe;
    st += r.cost.total * r.cost.total;
    for (const AgentSample& o : r.others) {
      m.min_distance = std::min(m.min_distance, std::hypot(r.ego.X - o.X, r.ego.Y - o.Y));
    }
    m.max_field = std::max(m.max_field, r.field);
    m.game_fallbacks += r.game_fallback ? 1 : 0;
    m.mpc_degraded += r.mpc_degraded ? 1 : 0;
    m.mpc_zero_dominance_violations +=
        r.mpc_cost > r.mpc_zero_cost + 1e-12 * std::max(1.0, std::abs(r.mpc_zero_cost)) ? 1 : 0;
    m.mpc_monotone_violations += r.mpc_monotone ? 0 : 1;
    m.mpc_bound_violations += r.mpc_in_bounds ? 0 : 1;
    m.v_floor_events += r.v_floor_clamped ? 1 : 0;
  }
  const double n = static_cast<double>(trace.rows.size());
  m.rms_safety = std::sqrt(ss / n);
  m.rms_comfort = std::sqrt(sc / n);
  m.rms_efficiency = std::sqrt(se / n);
  m.rms_total = std::sqrt(st / n);
  return m;
}

}  // namespace lanegame
