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

#include "lanegame/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lanegame {

void MpcConfig::validate() const {
  if (!(N_c >= 1 && N_p >= N_c)) throw std::invalid_argument("mpc: need N_p >= N_c >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("mpc: dt must be positive");
  if (!(R > 0.0)) throw std::invalid_argument("mpc: R must be positive");
  if (!Q.isApprox(Q.transpose())) throw std::invalid_argument("mpc: Q must be symmetric");
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(Q);
  if (es.eigenvalues().minCoeff() < -1e-12) throw std::invalid_argument("mpc: Q must be PSD");
  if (!(du_min <= du_max)) throw std::invalid_argument("mpc: du bounds out of order");
  if (!std::isnan(u_min) && !std::isnan(u_max) && !(u_min <= u_max)) {
    throw std::invalid_argument("mpc: u bounds out of order");
  }
  if (max_iterations < 0 || !(tolerance >= 0.0)) {
    throw std::invalid_argument("mpc: bad iteration settings");
  }
}

PredictionModel make_prediction_model(const VehicleState& x_k, double u_prev,
                                      const PlanScene& scene, double dt) {
  const ControlInput u{u_prev, scene.a_x};
  const Linearization lin = linearize(x_k, u, scene.vehicle, scene.driver);
  return {discretize(lin.A, lin.B, dt, affine_drift(lin, x_k, u))};
}

namespace {

double wrap_angle(double a) {
  return std::remainder(a, 2.0 * std::numbers::pi);
}

Obstacle at_time(const Obstacle& o, double t) {
  return {o.X + o.v * std::cos(o.heading) * t, o.Y + o.v * std::sin(o.heading) * t, o.heading,
          o.v};
}

Eigen::Vector3d output_at(double X, double Y, double phi, double t, const PlanScene& sc) {
  std::vector<Obstacle> obs;
  obs.reserve(sc.obstacles.size());
  for (const Obstacle& o : sc.obstacles) obs.push_back(at_time(o, t));
  const RoadGeometry& road = *sc.road;
  const Pose2 g = from_frame(sc.frame, {X, Y, phi});
  const FrenetPoint f = road.project(g.X, g.Y);
  return {total_field(g.X, g.Y, obs, road, sc.field), f.n - road.lane_center(sc.target_lane),
          wrap_angle(g.heading - road.heading_at(f.s))};
}

// Affine prediction: x(i) = free[i] + S[i] * du for i = 1..N_p.
struct AffinePrediction {
  std::vector<Vec8> free;
  std::vector<Eigen::Matrix<double, 8, Eigen::Dynamic>> S;
};

AffinePrediction affine_prediction(const VehicleState& x_k, double u_prev,
                                   const PredictionModel& m, const MpcConfig& cfg) {
  AffinePrediction p;
  const Discretization& d = m.disc;
  Vec8 x = x_k.to_vector();
  Eigen::Matrix<double, 8, Eigen::Dynamic> S = Eigen::Matrix<double, 8, Eigen::Dynamic>::Zero(8, cfg.N_c);
  for (int i = 0; i < cfg.N_p; ++i) {
    x = d.A_k * x + d.B_k * u_prev + d.c_k;
    Eigen::Matrix<double, 8, Eigen::Dynamic> Sn = d.A_k * S;
    for (int j = 0; j <= std::min(i, cfg.N_c - 1); ++j) Sn.col(j) += d.B_k;
    S = Sn;
    p.free.push_back(x);
    p.S.push_back(S);
  }
  return p;
}

struct Evaluation {
  double cost;
  std::vector<Eigen::Vector3d> y;
};

Evaluation evaluate(const AffinePrediction& ap, const Eigen::VectorXd& du, const PlanScene& sc,
                    const MpcConfig& cfg) {
  Evaluation e{cfg.R * du.squaredNorm(), {}};
  e.y.reserve(ap.free.size());
  for (std::size_t i = 0; i < ap.free.size(); ++i) {
    const Vec8 x = ap.free[i] + ap.S[i] * du;
    const Eigen::Vector3d y = output_at(x(VehicleState::kX), x(VehicleState::kY),
                                        x(VehicleState::kPhi), (i + 1) * cfg.dt, sc);
    e.cost += y.dot(cfg.Q * y);
    e.y.push_back(y);
  }
  return e;
}

Eigen::VectorXd gradient(const AffinePrediction& ap, const Eigen::VectorXd& du,
                         const Evaluation& ev, const PlanScene& sc, const MpcConfig& cfg) {
  constexpr double h = 1e-5;
  Eigen::VectorXd g = 2.0 * cfg.R * du;
  for (std::size_t i = 0; i < ap.free.size(); ++i) {
    const Vec8 x = ap.free[i] + ap.S[i] * du;
    const double X = x(VehicleState::kX);
    const double Y = x(VehicleState::kY);
    const double phi = x(VehicleState::kPhi);
    const double t = (i + 1) * cfg.dt;
    Eigen::Matrix3d J;
    J.col(0) = (output_at(X + h, Y, phi, t, sc) - output_at(X - h, Y, phi, t, sc)) / (2 * h);
    J.col(1) = (output_at(X, Y + h, phi, t, sc) - output_at(X, Y - h, phi, t, sc)) / (2 * h);
    J.col(2) = Eigen::Vector3d(0.0, 0.0, 1.0);
    Eigen::Matrix<double, 3, Eigen::Dynamic> Sxy(3, du.size());
    Sxy.row(0) = ap.S[i].row(VehicleState::kX);
    Sxy.row(1) = ap.S[i].row(VehicleState::kY);
    Sxy.row(2) = ap.S[i].row(VehicleState::kPhi);
    g += 2.0 * (J * Sxy).transpose() * (cfg.Q * ev.y[i]);
  }
  return g;
}

// Maps an increment sequence into the feasible set by sequential clamping.
Eigen::VectorXd make_feasible(Eigen::VectorXd du, double u_prev, double u_min, double u_max,
                              const MpcConfig& cfg) {
  double u = u_prev;
  for (Eigen::Index j = 0; j < du.size(); ++j) {
    const double lo = std::max(cfg.du_min, u_min - u);
    const double hi = std::min(cfg.du_max, u_max - u);
    du(j) = std::clamp(du(j), std::min(lo, 0.0), std::max(hi, 0.0));
    u += du(j);
  }
  return du;
}

}  // namespace

OutputVector evaluate_output(const VehicleState& x, double t, const PlanScene& scene) {
  const Eigen::Vector3d y = output_at(x.X, x.Y, x.phi, t, scene);
  return {y(0), y(1), y(2)};
}

Prediction predict_outputs(const VehicleState& x_k, double u_prev, const Eigen::VectorXd& du_seq,
                           const PredictionModel& model, const PlanScene& scene,
                           const MpcConfig& cfg) {
  if (du_seq.size() > cfg.N_c) throw std::invalid_argument("du sequence longer than N_c");
  Prediction p;
  Vec8 x = x_k.to_vector();
  double u = u_prev;
  for (int i = 0; i < cfg.N_p; ++i) {
    if (i < du_seq.size()) u += du_seq(i);
    x = model.disc.A_k * x + model.disc.B_k * u + model.disc.c_k;
    const VehicleState s = VehicleState::from_vector(x);
    p.states.push_back(s);
    p.outputs.push_back(evaluate_output(s, (i + 1) * cfg.dt, scene));
  }
  return p;
}

double mpc_cost(const std::vector<OutputVector>& outputs, const Eigen::VectorXd& du_seq,
                const Eigen::Matrix3d& Q, double R) {
  double c = R * du_seq.squaredNorm();
  for (const OutputVector& o : outputs) {
    const Eigen::Vector3d y = o.vec();
    c += y.dot(Q * y);
  }
  return c;
}

double lane_preview_target(const VehicleState& x, int lane, const RoadGeometry& road,
                           const DriverParams& dp, const Pose2& frame) {
  const Pose2 g = from_frame(frame, {x.X, x.Y, x.phi});
  const FrenetPoint f = road.project(g.X, g.Y);
  return to_frame(frame, road.to_global(f.s + dp.T_p * x.v_x, road.lane_center(lane))).Y;
}

std::pair<double, double> preview_bounds(const VehicleState& x_k, double u_prev,
                                         const PlanScene& scene, const MpcConfig& cfg) {
  double lo = cfg.u_min;
  double hi = cfg.u_max;
  if (std::isnan(lo) || std::isnan(hi)) {
    const RoadGeometry& road = *scene.road;
    const Pose2 g = from_frame(scene.frame, {x_k.X, x_k.Y, x_k.phi});
    const FrenetPoint f = road.project(g.X, g.Y);
    const double sp = f.s + scene.driver.T_p * x_k.v_x;
    if (std::isnan(lo)) lo = to_frame(scene.frame, road.to_global(sp, road.right_extent())).Y;
    if (std::isnan(hi)) hi = to_frame(scene.frame, road.to_global(sp, road.left_extent())).Y;
  }
  return {std::min(lo, u_prev), std::max(hi, u_prev)};
}

PlanResult solve_plan(const VehicleState& x_k, double u_prev, const PlanScene& scene,
                      const MpcConfig& cfg) {
  cfg.validate();
  if (scene.road == nullptr) throw std::invalid_argument("plan scene has no road");
  const PredictionModel model = make_prediction_model(x_k, u_prev, scene, cfg.dt);
  const AffinePrediction ap = affine_prediction(x_k, u_prev, model, cfg);
  const auto [u_min, u_max] = preview_bounds(x_k, u_prev, scene, cfg);

  PlanResult r;
  r.u_min = u_min;
  r.u_max = u_max;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(cfg.N_c);
  Evaluation ev = evaluate(ap, z, scene, cfg);
  r.zero_cost = ev.cost;
  r.cost_history.push_back(ev.cost);

  double alpha = -1.0;
  bool ok = std::isfinite(ev.cost);
  for (int it = 0; ok && it < cfg.max_iterations; ++it) {
    const Eigen::VectorXd g = gradient(ap, z, ev, scene, cfg);
    if (!g.allFinite()) {
      ok = false;
      break;
    }
    const double gmax = g.lpNorm<Eigen::Infinity>();
    if (gmax == 0.0) break;
    if (alpha <= 0.0) alpha = 0.1 / gmax;
    alpha *= 2.0;
    bool accepted = false;
    for (int half = 0; half < 40; ++half, alpha *= 0.5) {
      const Eigen::VectorXd zn = make_feasible(z - alpha * g, u_prev, u_min, u_max, cfg);
      const Eigen::VectorXd step = zn - z;
      if (step.lpNorm<Eigen::Infinity>() < 1e-14) break;
      Evaluation en = evaluate(ap, zn, scene, cfg);
      if (!std::isfinite(en.cost)) continue;
      if (en.cost <= ev.cost + 1e-4 * g.dot(step)) {
        const double prev = ev.cost;
        z = zn;
        ev = std::move(en);
        r.cost_history.push_back(ev.cost);
        accepted = true;
        r.iterations = it + 1;
        if (prev - ev.cost <= cfg.tolerance * std::max(1.0, std::abs(prev))) {
          it = cfg.max_iterations;
        }
        break;
      }
    }
    if (!accepted) break;
  }

  if (!ok || !(ev.cost <= r.zero_cost)) {
    z.setZero();
    ev = evaluate(ap, z, scene, cfg);
    r.degraded = true;
  }
  r.du_sequence = z;
  r.cost = ev.cost;
  r.u_applied = u_prev + z(0);
  const Prediction pred = predict_outputs(x_k, u_prev, z, model, scene, cfg);
  r.predicted_states = pred.states;
  r.predicted_outputs = pred.outputs;
  return r;
}

double apply_receding(double u_prev, const PlanResult& plan) {
  return u_prev + plan.du_sequence(0);
}

}  // namespace lanegame
