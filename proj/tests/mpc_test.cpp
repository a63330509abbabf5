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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lanegame/costs.hpp"
#include "lanegame/mpc.hpp"
#include "lanegame/styles.hpp"

namespace lanegame {
namespace {

struct Fixture {
  RoadGeometry road;
  PlanScene scene;
  MpcConfig cfg;

  explicit Fixture(int target_lane = 2) {
    scene.road = &road;
    scene.target_lane = target_lane;
    scene.driver = style_profile("normal").driver;
  }
};

VehicleState cruising(double Y, double v = 20.0) {
  VehicleState s;
  s.v_x = v;
  s.X = 50.0;
  s.Y = Y;
  return s;
}

TEST(MpcCost, Examples) {
  EXPECT_EQ(mpc_cost({{0.0, 0.0, 0.0}}, Eigen::VectorXd::Zero(3), Eigen::Matrix3d::Identity(), 1.0), 0.0);
  Eigen::VectorXd du(1);
  du << 1.0;
  EXPECT_DOUBLE_EQ(mpc_cost({{1.0, 2.0, 3.0}}, du, Eigen::Matrix3d::Identity(), 2.0), 16.0);
  const Eigen::Matrix3d Q = Eigen::Vector3d(1.0, 10.0, 50.0).asDiagonal();
  EXPECT_DOUBLE_EQ(mpc_cost({{1.0, -2.0, 0.3}}, du, Q, 1.0), mpc_cost({{-1.0, 2.0, -0.3}}, du, Q, 1.0));
}

TEST(Predict, EquilibriumTracking) {
  Fixture f;
  const VehicleState x = cruising(f.road.lane_center(2));
  const double u = x.Y;
  const PredictionModel m = make_prediction_model(x, u, f.scene, f.cfg.dt);
  const Prediction p = predict_outputs(x, u, Eigen::VectorXd::Zero(f.cfg.N_c), m, f.scene, f.cfg);
  ASSERT_EQ(p.outputs.size(), static_cast<std::size_t>(f.cfg.N_p));
  for (std::size_t i = 0; i < p.outputs.size(); ++i) {
    EXPECT_NEAR(p.outputs[i].y2, 0.0, 1e-9);
    EXPECT_NEAR(p.outputs[i].y3, 0.0, 1e-12);
    const VehicleState& s = p.states[i];
    EXPECT_NEAR(p.outputs[i].y1, road_field(s.X, s.Y, f.road, f.scene.field.road), 1e-9);
  }
}

TEST(Predict, FirstStepIsAffineMap) {
  Fixture f;
  VehicleState x = cruising(1.0);
  x.v_y = 0.2;
  x.r = 0.03;
  x.phi = 0.02;
  x.delta_f = 0.01;
  const double u_prev = 0.5;
  Eigen::VectorXd du(3);
  du << 0.2, -0.1, 0.05;
  const PredictionModel m = make_prediction_model(x, u_prev, f.scene, f.cfg.dt);
  const Prediction p = predict_outputs(x, u_prev, du, m, f.scene, f.cfg);
  const Vec8 want = m.disc.A_k * x.to_vector() + m.disc.B_k * (u_prev + 0.2) + m.disc.c_k;
  EXPECT_EQ(p.states[0].to_vector(), want);
}

TEST(Predict, InputHeldAfterLastIncrement) {
  Fixture f;
  const VehicleState x = cruising(0.4);
  const double u_prev = 0.0;
  Eigen::VectorXd du(1);
  du << 0.25;
  const PredictionModel m = make_prediction_model(x, u_prev, f.scene, f.cfg.dt);
  const Prediction p = predict_outputs(x, u_prev, du, m, f.scene, f.cfg);
  Vec8 s = x.to_vector();
  for (int i = 0; i < f.cfg.N_p; ++i) {
    s = m.disc.A_k * s + m.disc.B_k * 0.25 + m.disc.c_k;
    EXPECT_EQ(p.states[static_cast<std::size_t>(i)].to_vector(), s) << i;
  }
  Eigen::VectorXd too_long = Eigen::VectorXd::Zero(f.cfg.N_c + 1);
  EXPECT_THROW(predict_outputs(x, u_prev, too_long, m, f.scene, f.cfg), std::invalid_argument);
}

TEST(SolvePlan, AtRestStaysPut) {
  // Middle lane of three, where the edge fields balance.
  Fixture f;
  f.road.lane_count = 3;
  const VehicleState x = cruising(f.road.lane_center(2));
  const double u = lane_preview_target(x, 2, f.road, f.scene.driver);
  const PlanResult r = solve_plan(x, u, f.scene, f.cfg);
  EXPECT_LT(r.du_sequence.lpNorm<Eigen::Infinity>(), 1e-3);
  EXPECT_FALSE(r.degraded);
}

// Brute-force sweep of the first increment with the rest held at zero.
TEST(SolvePlan, MovesTowardsTargetLikeOneDimensionalSweep) {
  Fixture f;
  const VehicleState x = cruising(f.road.lane_center(1));
  const double u_prev = x.Y;
  const PredictionModel m = make_prediction_model(x, u_prev, f.scene, f.cfg.dt);
  double best = kInf;
  double best_du = 0.0;
  for (double d = f.cfg.du_min; d <= f.cfg.du_max + 1e-12; d += 0.01) {
    Eigen::VectorXd du = Eigen::VectorXd::Zero(f.cfg.N_c);
    du(0) = d;
    const Prediction p = predict_outputs(x, u_prev, du, m, f.scene, f.cfg);
    const double c = mpc_cost(p.outputs, du, f.cfg.Q, f.cfg.R);
    if (c < best) {
      best = c;
      best_du = d;
    }
  }
  ASSERT_LT(best_du, 0.0);
  const PlanResult r = solve_plan(x, u_prev, f.scene, f.cfg);
  EXPECT_LT(r.u_applied, u_prev);
  EXPECT_LE(r.cost, best + 1e-9);
}

TEST(SolvePlan, AvoidsObstacleOnTargetCentreline) {
  // Late in a lane change, with a pacing car on the target centreline just ahead.
  Fixture f(3);
  f.road.lane_count = 3;
  const VehicleState x = cruising(f.road.lane_center(3) + 1.0);
  f.scene.obstacles.push_back({x.X + 6.0, f.road.lane_center(3), 0.0, x.v_x});
  const double u_prev = x.Y;
  const PlanResult r = solve_plan(x, u_prev, f.scene, f.cfg);
  // Reference: step the preview towards the target centreline as fast as allowed.
  const double target = lane_preview_target(x, 3, f.road, f.scene.driver);
  Eigen::VectorXd ref(f.cfg.N_c);
  double u = u_prev;
  for (int j = 0; j < f.cfg.N_c; ++j) {
    ref(j) = std::clamp(target - u, f.cfg.du_min, f.cfg.du_max);
    u += ref(j);
  }
  const PredictionModel m = make_prediction_model(x, u_prev, f.scene, f.cfg.dt);
  const Prediction p = predict_outputs(x, u_prev, ref, m, f.scene, f.cfg);
  auto peak = [](const std::vector<OutputVector>& ys) {
    double v = 0.0;
    for (const OutputVector& y : ys) v = std::max(v, y.y1);
    return v;
  };
  EXPECT_LT(peak(r.predicted_outputs), peak(p.outputs));
}

TEST(SolvePlan, PropertiesOnRandomStates) {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 60; ++k) {
    Fixture f(1 + k % 2);
    f.road.lane_count = 2 + k % 2;
    VehicleState x = cruising(3.0 * u(rng), 20.0 + 8.0 * u(rng));
    x.v_y = 0.3 * u(rng);
    x.r = 0.05 * u(rng);
    x.phi = 0.05 * u(rng);
    x.delta_f = 0.01 * u(rng);
    if (k % 3 == 0) f.scene.obstacles.push_back({x.X + 15.0 + 10.0 * u(rng), 4.0 * u(rng), 0.0, 15.0});
    const double u_prev = x.Y + 2.0 * u(rng);
    const PlanResult r = solve_plan(x, u_prev, f.scene, f.cfg);
    EXPECT_LE(r.cost, r.zero_cost);
    for (std::size_t i = 1; i < r.cost_history.size(); ++i) {
      EXPECT_LE(r.cost_history[i], r.cost_history[i - 1]);
    }
    double uu = u_prev;
    for (Eigen::Index j = 0; j < r.du_sequence.size(); ++j) {
      EXPECT_GE(r.du_sequence(j), f.cfg.du_min - 1e-12);
      EXPECT_LE(r.du_sequence(j), f.cfg.du_max + 1e-12);
      uu += r.du_sequence(j);
      EXPECT_GE(uu, r.u_min - 1e-9);
      EXPECT_LE(uu, r.u_max + 1e-9);
    }
    EXPECT_EQ(r.u_applied, apply_receding(u_prev, r));
  }
}

TEST(SolvePlan, NoIncreaseAtUpperBound) {
  Fixture f;
  f.cfg.u_min = -6.0;
  f.cfg.u_max = 1.0;
  const VehicleState x = cruising(3.5);  // target lane 1 would pull the preview up
  f.scene.target_lane = 1;
  const PlanResult r = solve_plan(x, f.cfg.u_max, f.scene, f.cfg);
  EXPECT_LE(r.du_sequence(0), 0.0);
  EXPECT_LE(r.u_applied, f.cfg.u_max);
}

TEST(SolvePlan, RecedingIncrementsShrink) {
  Fixture f;
  VehicleState x = cruising(f.road.lane_center(2) + 0.6);
  double u = x.Y;
  std::vector<double> first;
  for (int k = 0; k < 120; ++k) {
    f.scene.frame = {};
    const PlanResult r = solve_plan(x, u, f.scene, f.cfg);
    first.push_back(std::abs(r.du_sequence(0)));
    u = apply_receding(u, r);
    x = step(x, {u, 0.0}, f.cfg.dt, f.scene.vehicle, f.scene.driver).state;
  }
  const double early = *std::max_element(first.begin(), first.begin() + 10);
  const double late = *std::max_element(first.end() - 10, first.end());
  EXPECT_LT(late, 0.1 * early);
  EXPECT_LT(late, 1e-3);
}

TEST(ApplyReceding, Arithmetic) {
  PlanResult r;
  r.du_sequence = Eigen::VectorXd::Zero(5);
  r.du_sequence(0) = 0.1;
  EXPECT_DOUBLE_EQ(apply_receding(0.3, r), 0.4);
  r.du_sequence(0) = 0.0;
  EXPECT_EQ(apply_receding(0.3, r), 0.3);
}

TEST(PlanningFrame, RotatedFrameMatchesGlobalOutputs) {
  RoadGeometry road;
  road.curvature = 1.0 / 500.0;
  road.lane_count = 3;
  PlanScene sc;
  sc.road = &road;
  sc.target_lane = 2;
  sc.frame = road.frame_at(200.0);
  const Pose2 g = road.to_global(205.0, 1.0);
  const Pose2 l = to_frame(sc.frame, {g.X, g.Y, g.heading + 0.01});
  VehicleState x = cruising(0.0);
  x.X = l.X;
  x.Y = l.Y;
  x.phi = l.heading;
  const OutputVector y = evaluate_output(x, 0.0, sc);
  EXPECT_NEAR(y.y2, 1.0, 1e-9);
  EXPECT_NEAR(y.y3, 0.01, 1e-12);
  EXPECT_NEAR(y.y1, road_field(g.X, g.Y, road, sc.field.road), 1e-9);
}

TEST(MpcConfigTest, Validation) {
  MpcConfig c;
  EXPECT_NO_THROW(c.validate());
  c.N_c = 30;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = MpcConfig{};
  c.R = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = MpcConfig{};
  c.Q(0, 0) = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = MpcConfig{};
  c.du_min = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace lanegame
