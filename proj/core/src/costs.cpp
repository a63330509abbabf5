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

#include "lanegame/costs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lanegame {

void CostGains::validate() const {
  for (double k : {kappa_v_log, kappa_s_log, kappa_v_lat, kappa_s_lat, kappa_ax, kappa_ay,
                   lane_speed_weight, lane_end_decel, lane_end_margin}) {
    if (!(k >= 0.0)) throw std::invalid_argument("cost gains must be non-negative");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(l_v > 0.0)) throw std::invalid_argument("l_v must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("decision horizon must be positive");
  if (!(lane_change_time > 0.0)) throw std::invalid_argument("lane_change_time must be positive");
}

CostBreakdown CostBreakdown::infeasible() {
  CostBreakdown c;
  c.total = kInf;
  return c;
}

double pair_safety(double distance, double dv, double kappa_v, double kappa_s,
                   const CostGains& g) {
  const double lambda = dv < 0.0 ? 1.0 : 0.0;
  const double ds = distance - g.l_v;
  return kappa_v * lambda * dv * dv + kappa_s / (ds * ds + g.epsilon);
}

double longitudinal_safety_cost(const Kinematic& ego, const std::optional<Kinematic>& lead,
                                const CostGains& g) {
  if (!lead) return 0.0;
  const double d = std::hypot(lead->X - ego.X, lead->Y - ego.Y);
  return pair_safety(d, lead->v - ego.v, g.kappa_v_log, g.kappa_s_log, g);
}

double lateral_safety_cost(const Kinematic& ego, const std::optional<Kinematic>& adjacent,
                           const CostGains& g) {
  if (!adjacent) return 0.0;
  const double d = std::hypot(adjacent->X - ego.X, adjacent->Y - ego.Y);
  return pair_safety(d, ego.v - adjacent->v, g.kappa_v_lat, g.kappa_s_lat, g);
}

double comfort_cost(double a_x, double a_y, int sigma, const CostGains& g) {
  const double s2 = static_cast<double>(sigma * sigma);
  return g.kappa_ax * a_x * a_x + s2 * g.kappa_ay * a_y * a_y;
}

double lane_change_lateral_accel(double lane_width, double t_lc) {
  return 2.0 * std::numbers::pi * lane_width / (t_lc * t_lc);
}

double efficiency_cost(double v_ego, double v_bar, double v_max, const CostGains& g) {
  const double e = v_ego - v_bar;
  const double loss = v_max - v_bar;
  return e * e + g.lane_speed_weight * loss * loss;
}

const SpeedLimits& DecisionScene::limits_for(int lane) const {
  if (limits.empty()) throw std::logic_error("decision scene has no speed limits");
  if (limits.size() == 1) return limits.front();
  return limits.at(static_cast<std::size_t>(lane - 1));
}

Propagated propagate(double s, double v, double a, double t, double v_min, double v_max) {
  double t_hit = t;
  double v_end = v + a * t;
  if (a > 0.0 && v_end > v_max) {
    t_hit = std::max(0.0, (v_max - v) / a);
    v_end = std::max(v, v_max);
  } else if (a < 0.0 && v_end < v_min) {
    t_hit = std::max(0.0, (v_min - v) / a);
    v_end = std::min(v, v_min);
  }
  const double s_hit = s + v * t_hit + 0.5 * a * t_hit * t_hit;
  return {s_hit + v_end * (t - t_hit), v_end};
}

double lane_target_speed(const DecisionScene& scene, int lane, double s_query,
                         const std::vector<LaneBody>& bodies, const CostGains& g) {
  double v_bar = scene.limits_for(lane).v_max;
  const LaneBody* lead = nullptr;
  for (const auto& b : bodies) {
    if (b.lane == lane && b.s > s_query && (!lead || b.s < lead->s)) lead = &b;
  }
  if (lead) v_bar = std::min(v_bar, lead->v);
  const RoadGeometry& road = scene.road;
  if (road.terminating_lane == lane) {
    const double room = std::max(road.lane_end_station - s_query - g.lane_end_margin, 0.0);
    v_bar = std::min(v_bar, std::sqrt(2.0 * g.lane_end_decel * room));
  }
  return v_bar;
}

namespace {

struct HorizonView {
  Propagated ego;
  std::vector<Propagated> others;
};

HorizonView horizon_view(const DecisionScene& sc, double ego_accel, int partner,
                         double partner_accel, const CostGains& g) {
  HorizonView h;
  const SpeedLimits& le = sc.limits_for(sc.ego.lane);
  h.ego = propagate(sc.ego.s, sc.ego.v, ego_accel, g.horizon, le.v_min, le.v_max);
  h.others.reserve(sc.others.size());
  for (std::size_t i = 0; i < sc.others.size(); ++i) {
    const Agent& o = sc.others[i];
    const SpeedLimits& lo = sc.limits_for(o.lane);
    const double a = static_cast<int>(i) == partner ? partner_accel : o.a;
    h.others.push_back(propagate(o.s, o.v, a, g.horizon, lo.v_min, lo.v_max));
  }
  return h;
}

Kinematic kin_at(const RoadGeometry& road, double s, int lane, double v) {
  const Pose2 p = road.to_global(s, road.lane_center(lane));
  return {p.X, p.Y, v};
}

std::vector<LaneBody> bodies_of(const DecisionScene& sc, const HorizonView& h, int skip) {
  std::vector<LaneBody> out;
  for (std::size_t i = 0; i < sc.others.size(); ++i) {
    if (static_cast<int>(i) == skip) continue;
    out.push_back({sc.others[i].lane, h.others[i].s, h.others[i].v});
  }
  return out;
}

std::vector<LaneBody> current_bodies(const DecisionScene& sc, int skip) {
  std::vector<LaneBody> out;
  for (std::size_t i = 0; i < sc.others.size(); ++i) {
    if (static_cast<int>(i) == skip) continue;
    out.push_back({sc.others[i].lane, sc.others[i].s, sc.others[i].v});
  }
  return out;
}

// Lead identity is fixed at the current positions. A lead that the follower
// overtakes within the horizon would be a rear-end collision, so the pair is
// scored at the closest admissible spacing instead of dropping out.
std::optional<Kinematic> lead_of(const RoadGeometry& road, const std::vector<LaneBody>& now,
                                 const std::vector<LaneBody>& later, int lane, double s_now,
                                 double s_later, double l_v) {
  int lead = -1;
  for (std::size_t i = 0; i < now.size(); ++i) {
    if (now[i].lane == lane && now[i].s > s_now && (lead < 0 || now[i].s < now[static_cast<std::size_t>(lead)].s)) {
      lead = static_cast<int>(i);
    }
  }
  if (lead < 0) return std::nullopt;
  const LaneBody& b = later[static_cast<std::size_t>(lead)];
  return kin_at(road, std::max(b.s, s_later + l_v), lane, b.v);
}

double weighted(const StyleProfile& st, const CostBreakdown& c) {
  return st.w_ds * c.j_ds + st.w_rc * c.j_rc + st.w_pe * c.j_pe;
}

}  // namespace

CostBreakdown ego_cost(const DecisionScene& sc, const DecisionAction& action, int partner,
                       double partner_accel, const CostGains& g) {
  const RoadGeometry& road = sc.road;
  const int nu = sc.ego.lane;
  const int tl = nu + action.sigma;
  if (action.sigma < -1 || action.sigma > 1) throw std::invalid_argument("sigma out of range");
  if (!road.lane_open(tl, sc.ego.s)) return CostBreakdown::infeasible();

  const HorizonView h = horizon_view(sc, action.a_x, partner, partner_accel, g);
  if (action.sigma == 0 && road.terminating_lane == nu &&
      road.lane_end_station - h.ego.s < g.lane_end_margin) {
    return CostBreakdown::infeasible();
  }

  const Kinematic ego = kin_at(road, h.ego.s, tl, h.ego.v);
  const std::vector<LaneBody> bodies = bodies_of(sc, h, -1);

  CostBreakdown c;
  if (action.sigma == 0) {
    c.j_ds_log = longitudinal_safety_cost(
        ego, lead_of(road, current_bodies(sc, -1), bodies, nu, sc.ego.s, h.ego.s, g.l_v), g);
  } else if (partner >= 0 && sc.others[static_cast<std::size_t>(partner)].lane == tl) {
    const auto& pp = h.others[static_cast<std::size_t>(partner)];
    c.j_ds_lat = lateral_safety_cost(ego, kin_at(road, pp.s, tl, pp.v), g);
  }
  const double s2 = static_cast<double>(action.sigma * action.sigma);
  c.j_ds = (s2 - 1.0) * (s2 - 1.0) * c.j_ds_log + s2 * c.j_ds_lat;
  const double a_y = lane_change_lateral_accel(road.lane_width, g.lane_change_time);
  c.j_rc = comfort_cost(action.a_x, a_y, action.sigma, g);
  const double v_bar = lane_target_speed(sc, tl, h.ego.s, bodies, g);
  c.j_pe = efficiency_cost(h.ego.v, v_bar, sc.limits_for(tl).v_max, g);
  c.total = weighted(sc.ego.style, c);
  return c;
}

CostBreakdown ac_cost(const DecisionScene& sc, int ac, const DecisionAction& ego_action,
                      double ac_accel, const CostGains& g) {
  const RoadGeometry& road = sc.road;
  const Agent& me = sc.others.at(static_cast<std::size_t>(ac));
  const HorizonView h = horizon_view(sc, ego_action.a_x, ac, ac_accel, g);
  const Propagated& pm = h.others[static_cast<std::size_t>(ac)];
  const Kinematic self = kin_at(road, pm.s, me.lane, pm.v);

  std::vector<LaneBody> bodies = bodies_of(sc, h, ac);
  bodies.push_back({sc.ego.lane, h.ego.s, h.ego.v});

  CostBreakdown c;
  std::vector<LaneBody> now = current_bodies(sc, ac);
  now.push_back({sc.ego.lane, sc.ego.s, sc.ego.v});
  c.j_ds_log = longitudinal_safety_cost(
      self, lead_of(road, now, bodies, me.lane, me.s, pm.s, g.l_v), g);
  const int tl = sc.ego.lane + ego_action.sigma;
  if (ego_action.sigma != 0 && me.lane == tl) {
    const Kinematic ego = kin_at(road, h.ego.s, tl, h.ego.v);
    c.j_ds_lat = lateral_safety_cost(ego, self, g);
  }
  const double s2 = static_cast<double>(ego_action.sigma * ego_action.sigma);
  c.j_ds = c.j_ds_log + s2 * c.j_ds_lat;
  c.j_rc = g.kappa_ax * ac_accel * ac_accel;
  const double v_bar = lane_target_speed(sc, me.lane, pm.s, bodies, g);
  c.j_pe = efficiency_cost(pm.v, v_bar, sc.limits_for(me.lane).v_max, g);
  c.total = weighted(me.style, c);
  return c;
}

}  // namespace lanegame
