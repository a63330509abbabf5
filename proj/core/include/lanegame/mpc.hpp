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

#include <Eigen/Dense>

#include <limits>
#include <vector>

#include "lanegame/field.hpp"
#include "lanegame/road.hpp"
#include "lanegame/vehicle_model.hpp"

namespace lanegame {

struct MpcConfig {
  int N_p = 20;
  int N_c = 5;
  double dt = 0.05;
  Eigen::Matrix3d Q = Eigen::Vector3d(1.0, 10.0, 50.0).asDiagonal();
  double R = 1.0;
  // Preview bounds. NaN means the road's lateral extent at the preview point.
  double u_min = std::numeric_limits<double>::quiet_NaN();
  double u_max = std::numeric_limits<double>::quiet_NaN();
  double du_min = -0.3;
  double du_max = 0.3;
  int max_iterations = 100;
  double tolerance = 1e-6;  // relative cost change

  void validate() const;
};

struct OutputVector {
  double y1 = 0.0;  // field value at the predicted position
  double y2 = 0.0;  // lateral error to the target lane centre
  double y3 = 0.0;  // heading error against the road tangent

  Eigen::Vector3d vec() const { return {y1, y2, y3}; }
};

struct PlanScene {
  const RoadGeometry* road = nullptr;
  std::vector<Obstacle> obstacles;
  int target_lane = 1;
  double a_x = 0.0;
  VehicleParams vehicle;
  DriverParams driver;
  FieldParams field;
  // Global pose of the planning frame. Vehicle states, Y_p and its bounds are
  // expressed in this frame; obstacles stay global.
  Pose2 frame;
};

/**
 * Linear prediction model frozen at the planning state:
 * x(i+1) = A_k x(i) + B_k u(i) + c_k. c_k carries the first-order drift of
 * the nonlinear model at the linearization point.
 */
struct PredictionModel {
  Discretization disc;
};

PredictionModel make_prediction_model(const VehicleState& x_k, double u_prev, const PlanScene& scene,
                                      double dt);

OutputVector evaluate_output(const VehicleState& x, double t, const PlanScene& scene);

struct Prediction {
  std::vector<VehicleState> states;   // x(1) .. x(N_p)
  std::vector<OutputVector> outputs;  // y(1) .. y(N_p)
};

// du_seq may be shorter than N_c; u is held after the last increment.
Prediction predict_outputs(const VehicleState& x_k, double u_prev, const Eigen::VectorXd& du_seq,
                           const PredictionModel& model, const PlanScene& scene,
                           const MpcConfig& cfg);

double mpc_cost(const std::vector<OutputVector>& outputs, const Eigen::VectorXd& du_seq,
                const Eigen::Matrix3d& Q, double R);

struct PlanResult {
  Eigen::VectorXd du_sequence;
  double u_applied = 0.0;
  std::vector<VehicleState> predicted_states;
  std::vector<OutputVector> predicted_outputs;
  double cost = 0.0;
  double zero_cost = 0.0;  // cost of the all-zero increment sequence
  int iterations = 0;
  bool degraded = false;
  double u_min = 0.0;
  double u_max = 0.0;
  std::vector<double> cost_history;  // accepted iterates, first entry is the start point
};

// Bounds [u_min, u_max] in force for this call; always contain u_prev.
std::pair<double, double> preview_bounds(const VehicleState& x_k, double u_prev,
                                         const PlanScene& scene, const MpcConfig& cfg);

PlanResult solve_plan(const VehicleState& x_k, double u_prev, const PlanScene& scene,
                      const MpcConfig& cfg);

double apply_receding(double u_prev, const PlanResult& plan);

// Preview coordinate that points at the centre of `lane` for state x, both
// expressed in `frame`.
double lane_preview_target(const VehicleState& x, int lane, const RoadGeometry& road,
                           const DriverParams& dp, const Pose2& frame = {});

}  // namespace lanegame
