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

#include <stdexcept>

namespace lanegame {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Integrated driver-vehicle state. Index constants below match the vector layout.
struct VehicleState {
  double v_x = 0.0;
  double v_y = 0.0;
  double r = 0.0;
  double phi = 0.0;
  double X = 0.0;
  double Y = 0.0;
  double delta_f = 0.0;
  double delta_f_dot = 0.0;

  static constexpr int kVx = 0;
  static constexpr int kVy = 1;
  static constexpr int kR = 2;
  static constexpr int kPhi = 3;
  static constexpr int kX = 4;
  static constexpr int kY = 5;
  static constexpr int kDelta = 6;
  static constexpr int kDeltaDot = 7;

  Vec8 to_vector() const;
  static VehicleState from_vector(const Vec8& x);
  bool finite() const;
};

struct VehicleParams {
  double m = 1300.0;
  double I_z = 2500.0;
  double l_f = 1.25;
  double l_r = 1.32;
  double k_f = 35000.0;
  double k_r = 38000.0;
  // Steering transmission ratio K_s, front-wheel angle per steering-wheel angle.
  double K_s = 1.0 / 30.0;

  void validate() const;
};

struct DriverParams {
  double T_d = 0.18;
  double T_p = 0.94;
  double G_s = 0.75;
  double a = 0.23;

  void validate() const;
};

struct ControlInput {
  double Y_p = 0.0;  // preview-point lateral coordinate
  double a_x = 0.0;  // longitudinal acceleration, held from the decision layer
};

struct TyreForces {
  double alpha_f;
  double alpha_r;
  double F_yf;
  double F_yr;
};

TyreForces tyre_forces(const VehicleState& s, const VehicleParams& vp);

Vec8 derivatives(const VehicleState& s, const ControlInput& u,
                 const VehicleParams& vp, const DriverParams& dp);

inline constexpr double kDefaultVFloor = 0.5;

struct StepResult {
  VehicleState state;
  bool v_floor_clamped = false;
};

// Classic RK4. v_x is clamped to v_floor at each stage and the result flagged.
StepResult step(const VehicleState& s, const ControlInput& u, double dt,
                const VehicleParams& vp, const DriverParams& dp,
                double v_floor = kDefaultVFloor);

struct Linearization {
  Mat8 A;
  Vec8 B;  // d f / d Y_p
  Vec8 f0;  // f at the linearization point
};

Linearization linearize(const VehicleState& s, const ControlInput& u,
                        const VehicleParams& vp, const DriverParams& dp);

struct Discretization {
  Mat8 A_k;
  Vec8 B_k;
  Vec8 c_k;  // zero unless an affine drift was supplied
};

/**
 * Zero-order-hold discretization through the exponential of the augmented
 * matrix [[A, B, g], [0, 0, 0], [0, 0, 0]] * dt. g is an optional constant
 * drift; pass zero to obtain the plain (A_k, B_k) pair.
 */
Discretization discretize(const Mat8& A, const Vec8& B, double dt,
                          const Vec8& g = Vec8::Zero());

// Drift g = f(x0, u0) - A x0 - B u0 of the first-order expansion.
Vec8 affine_drift(const Linearization& lin, const VehicleState& s,
                  const ControlInput& u);

}  // namespace lanegame
