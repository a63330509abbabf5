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

#include "lanegame/vehicle_model.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

namespace lanegame {

Vec8 VehicleState::to_vector() const {
  Vec8 x;
  x << v_x, v_y, r, phi, X, Y, delta_f, delta_f_dot;
  return x;
}

VehicleState VehicleState::from_vector(const Vec8& x) {
  return {x(0), x(1), x(2), x(3), x(4), x(5), x(6), x(7)};
}

bool VehicleState::finite() const { return to_vector().allFinite(); }

void VehicleParams::validate() const {
  if (!(m > 0 && I_z > 0 && l_f > 0 && l_r > 0 && k_f > 0 && k_r > 0 && K_s > 0)) {
    throw DomainError("vehicle parameters must be strictly positive");
  }
}

void DriverParams::validate() const {
  if (!(T_d > 0 && T_p > 0 && G_s > 0 && a > 0)) {
    throw DomainError("driver parameters must be strictly positive");
  }
}

namespace {

void check_state(const VehicleState& s) {
  if (!s.finite()) throw DomainError("vehicle state has a non-finite field");
  if (!(s.v_x > 0.0)) {
    throw DomainError("v_x must be positive, got " + std::to_string(s.v_x));
  }
}

}  // namespace

TyreForces tyre_forces(const VehicleState& s, const VehicleParams& vp) {
  TyreForces t{};
  t.alpha_f = -s.delta_f + (s.v_y + vp.l_f * s.r) / s.v_x;
  t.alpha_r = (s.v_y - vp.l_r * s.r) / s.v_x;
  t.F_yf = -vp.k_f * t.alpha_f;
  t.F_yr = -vp.k_r * t.alpha_r;
  return t;
}

Vec8 derivatives(const VehicleState& s, const ControlInput& u,
                 const VehicleParams& vp, const DriverParams& dp) {
  check_state(s);
  if (!std::isfinite(u.Y_p) || !std::isfinite(u.a_x)) {
    throw DomainError("control input is not finite");
  }
  const TyreForces t = tyre_forces(s, vp);
  const double cd = std::cos(s.delta_f);
  const double cphi = std::cos(s.phi);
  const double sphi = std::sin(s.phi);
  const double aTd = dp.a * dp.T_d;
  const double aTd2 = dp.a * dp.T_d * dp.T_d;

  Vec8 f;
  f(0) = s.v_y * s.r + u.a_x;
  f(1) = -s.v_x * s.r + (t.F_yf * cd + t.F_yr) / vp.m;
  f(2) = (vp.l_f * t.F_yf * cd - vp.l_r * t.F_yr) / vp.I_z;
  f(3) = s.r;
  f(4) = s.v_x * cphi - s.v_y * sphi;
  f(5) = s.v_x * sphi + s.v_y * cphi;
  f(6) = s.delta_f_dot;
  f(7) = -s.delta_f_dot / aTd - s.delta_f / aTd2 +
         (vp.K_s * dp.G_s / aTd2) * (u.Y_p - (s.Y + dp.T_p * s.v_x * s.phi));
  return f;
}

StepResult step(const VehicleState& s, const ControlInput& u, double dt,
                const VehicleParams& vp, const DriverParams& dp,
                double v_floor) {
  if (!std::isfinite(dt) || dt == 0.0) throw DomainError("dt must be finite and nonzero");
  StepResult out;
  auto clamp = [&](Vec8 x) {
    if (x(0) < v_floor) {
      x(0) = v_floor;
      out.v_floor_clamped = true;
    }
    return x;
  };
  const Vec8 x0 = clamp(s.to_vector());
  auto f = [&](const Vec8& x) {
    return derivatives(VehicleState::from_vector(clamp(x)), u, vp, dp);
  };
  const Vec8 k1 = f(x0);
  const Vec8 k2 = f(x0 + 0.5 * dt * k1);
  const Vec8 k3 = f(x0 + 0.5 * dt * k2);
  const Vec8 k4 = f(x0 + dt * k3);
  out.state = VehicleState::from_vector(
      clamp(x0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)));
  return out;
}

Linearization linearize(const VehicleState& s, const ControlInput& u,
                        const VehicleParams& vp, const DriverParams& dp) {
  Linearization lin;
  lin.f0 = derivatives(s, u, vp, dp);
  const TyreForces t = tyre_forces(s, vp);
  const double vx = s.v_x;
  const double cd = std::cos(s.delta_f);
  const double sd = std::sin(s.delta_f);
  const double cphi = std::cos(s.phi);
  const double sphi = std::sin(s.phi);

  // Slip-angle partials with respect to (v_x, v_y, r, delta_f).
  const double daf_vx = -(s.v_y + vp.l_f * s.r) / (vx * vx);
  const double daf_vy = 1.0 / vx;
  const double daf_r = vp.l_f / vx;
  const double daf_d = -1.0;
  const double dar_vx = -(s.v_y - vp.l_r * s.r) / (vx * vx);
  const double dar_vy = 1.0 / vx;
  const double dar_r = -vp.l_r / vx;

  const double dFf_vx = -vp.k_f * daf_vx, dFf_vy = -vp.k_f * daf_vy;
  const double dFf_r = -vp.k_f * daf_r, dFf_d = -vp.k_f * daf_d;
  const double dFr_vx = -vp.k_r * dar_vx, dFr_vy = -vp.k_r * dar_vy;
  const double dFr_r = -vp.k_r * dar_r;

  Mat8& A = lin.A;
  A.setZero();
  A(0, 1) = s.r;
  A(0, 2) = s.v_y;

  A(1, 0) = -s.r + (dFf_vx * cd + dFr_vx) / vp.m;
  A(1, 1) = (dFf_vy * cd + dFr_vy) / vp.m;
  A(1, 2) = -vx + (dFf_r * cd + dFr_r) / vp.m;
  A(1, 6) = (dFf_d * cd - t.F_yf * sd) / vp.m;

  A(2, 0) = (vp.l_f * dFf_vx * cd - vp.l_r * dFr_vx) / vp.I_z;
  A(2, 1) = (vp.l_f * dFf_vy * cd - vp.l_r * dFr_vy) / vp.I_z;
  A(2, 2) = (vp.l_f * dFf_r * cd - vp.l_r * dFr_r) / vp.I_z;
  A(2, 6) = vp.l_f * (dFf_d * cd - t.F_yf * sd) / vp.I_z;

  A(3, 2) = 1.0;

  A(4, 0) = cphi;
  A(4, 1) = -sphi;
  A(4, 3) = -vx * sphi - s.v_y * cphi;

  A(5, 0) = sphi;
  A(5, 1) = cphi;
  A(5, 3) = vx * cphi - s.v_y * sphi;

  A(6, 7) = 1.0;

  const double K = vp.K_s * dp.G_s / (dp.a * dp.T_d * dp.T_d);
  A(7, 0) = -K * dp.T_p * s.phi;
  A(7, 3) = -K * dp.T_p * vx;
  A(7, 5) = -K;
  A(7, 6) = -1.0 / (dp.a * dp.T_d * dp.T_d);
  A(7, 7) = -1.0 / (dp.a * dp.T_d);

  lin.B.setZero();
  lin.B(7) = K;
  return lin;
}

Vec8 affine_drift(const Linearization& lin, const VehicleState& s,
                  const ControlInput& u) {
  return lin.f0 - lin.A * s.to_vector() - lin.B * u.Y_p;
}

Discretization discretize(const Mat8& A, const Vec8& B, double dt,
                          const Vec8& g) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (!A.allFinite() || !B.allFinite() || !g.allFinite()) {
    throw DomainError("discretize: non-finite input");
  }
  Eigen::Matrix<double, 10, 10> M = Eigen::Matrix<double, 10, 10>::Zero();
  M.topLeftCorner<8, 8>() = A * dt;
  M.block<8, 1>(0, 8) = B * dt;
  M.block<8, 1>(0, 9) = g * dt;
  const Eigen::Matrix<double, 10, 10> E = M.exp();
  Discretization d;
  d.A_k = E.topLeftCorner<8, 8>();
  d.B_k = E.block<8, 1>(0, 8);
  d.c_k = E.block<8, 1>(0, 9);
  return d;
}

}  // namespace lanegame
