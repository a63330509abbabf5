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

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "lanegame/field.hpp"
#include "lanegame/vehicle_model.hpp"

namespace lanegame {
namespace {

TEST(ObstacleField, PeakAtCentre) {
  const ObstacleFieldParams p;
  EXPECT_EQ(obstacle_field(10.0, 2.0, {10.0, 2.0, 0.3, 25.0}, p), p.a_oc);
  EXPECT_EQ(skew_gamma(0.0, 0.0, p), 0.0);
}

TEST(ObstacleField, ClosedFormOnAxis) {
  const ObstacleFieldParams p;
  const double x = p.rho_x * std::sqrt(2.0);
  EXPECT_NEAR(obstacle_field(x, 0.0, {0.0, 0.0, 0.0, 0.0}, p), p.a_oc * std::exp(-1.0), 1e-12);
  EXPECT_NEAR(obstacle_field(x, 0.0, {}, p), critical_field(p), 1e-12);
}

TEST(ObstacleField, SkewByHand) {
  ObstacleFieldParams p;
  p.b = 1.0;
  const double xh = 6.0;
  const double yh = 0.8;
  const double qx = xh * xh / (2.0 * 64.0);
  const double qy = yh * yh / (2.0 * 1.44);
  const double want = 50.0 * std::exp(-(qx + qy) + 0.05 * 20.0 * qx / std::sqrt(qx + qy));
  EXPECT_NEAR(obstacle_field(xh, yh, {0.0, 0.0, 0.0, 20.0}, p), want, 1e-12);
  const double behind = 50.0 * std::exp(-(qx + qy) - 0.05 * 20.0 * qx / std::sqrt(qx + qy));
  EXPECT_NEAR(obstacle_field(-xh, yh, {0.0, 0.0, 0.0, 20.0}, p), behind, 1e-12);
}

TEST(ObstacleField, StationarySymmetric) {
  const ObstacleFieldParams p;
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int k = 0; k < 500; ++k) {
    const double x = u(rng);
    const double y = 0.2 * u(rng);
    EXPECT_NEAR(obstacle_field(x, y, {}, p), obstacle_field(-x, y, {}, p), 1e-12);
    EXPECT_NEAR(obstacle_field(x, y, {}, p), obstacle_field(x, -y, {}, p), 1e-12);
  }
}

TEST(ObstacleField, ForeDominatesAftWhenMoving) {
  const ObstacleFieldParams p;
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0.0, 25.0);
  for (int k = 0; k < 500; ++k) {
    const double x = u(rng);
    const double y = 0.2 * (u(rng) - 12.5);
    const Obstacle o{0.0, 0.0, 0.0, u(rng)};
    EXPECT_GE(obstacle_field(x, y, o, p), obstacle_field(-x, y, o, p));
  }
}

TEST(ObstacleField, RotationInvariant) {
  const ObstacleFieldParams p;
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> u(-15.0, 15.0);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (int k = 0; k < 500; ++k) {
    const Obstacle o{u(rng), u(rng), ang(rng), std::abs(u(rng))};
    const double qx = o.X + u(rng);
    const double qy = o.Y + 0.3 * u(rng);
    const double rot = ang(rng);
    const double c = std::cos(rot);
    const double s = std::sin(rot);
    const Obstacle o2{c * o.X - s * o.Y, s * o.X + c * o.Y, o.heading + rot, o.v};
    const double a = obstacle_field(qx, qy, o, p);
    const double b = obstacle_field(c * qx - s * qy, s * qx + c * qy, o2, p);
    EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, a));
  }
}

TEST(ObstacleField, ContinuousAtCentre) {
  const ObstacleFieldParams p;
  const Obstacle o{0.0, 0.0, 0.0, 30.0};
  for (double ang = 0.0; ang < 2.0 * std::numbers::pi; ang += 0.3) {
    const double r = 1e-9;
    EXPECT_NEAR(obstacle_field(r * std::cos(ang), r * std::sin(ang), o, p), p.a_oc, 1e-6);
  }
}

TEST(ObstacleField, BoundedBySkew) {
  const ObstacleFieldParams p;
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int k = 0; k < 2000; ++k) {
    const double v = std::abs(u(rng));
    const double x = u(rng);
    const double y = 0.2 * u(rng);
    const double f = obstacle_field(x, y, {0.0, 0.0, 0.0, v}, p);
    const double g = skew_gamma(x, y, p);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(std::abs(g), std::sqrt(x * x / (2.0 * p.rho_x * p.rho_x)) + 1e-12);
    EXPECT_LE(f, p.a_oc * std::exp(p.c * v * std::max(0.0, g)) + 1e-12);
  }
}

TEST(RoadField, ClosedForms) {
  RoadGeometry r;
  r.lane_count = 2;
  const RoadFieldParams p;
  // Left edge at n = 4, right edge at n = -4; the other edge is 8 m away.
  const double far = p.a_r * std::exp(-8.0 + p.d_safe + 0.5 * p.W);
  EXPECT_NEAR(road_field(0.0, 4.0, r, p), p.a_r * std::exp(p.d_safe + 0.5 * p.W) + far, 1e-12);
  const double d = p.d_safe + 0.5 * p.W;
  EXPECT_NEAR(road_field(0.0, 4.0 - d, r, p), p.a_r + p.a_r * std::exp(-(8.0 - d) + d), 1e-12);
}

TEST(RoadField, DecaysAwayFromEdge) {
  RoadGeometry r;
  const RoadFieldParams p;
  double prev = std::numeric_limits<double>::infinity();
  for (double n = 4.0; n >= 0.0; n -= 0.1) {
    const double f = road_field(50.0, n, r, p) - p.a_r * std::exp(-(n + 4.0) + p.d_safe + 0.5 * p.W);
    EXPECT_LT(f, prev);
    prev = f;
  }
}

TEST(RoadField, InteriorLinesWeightedZeroByDefault) {
  RoadGeometry r;
  const RoadFieldParams p;
  const double base = road_field(0.0, 0.0, r, p);
  r.interior_line_weight = 1.0;
  EXPECT_NEAR(road_field(0.0, 0.0, r, p) - base, p.a_r * std::exp(p.d_safe + 0.5 * p.W), 1e-12);
}

TEST(RoadField, OutsideStationDomain) {
  RoadGeometry r;
  EXPECT_THROW(road_field(r.station_max + 1.0, 0.0, r, RoadFieldParams{}), DomainError);
  EXPECT_THROW(road_field(r.station_min - 1.0, 0.0, r, RoadFieldParams{}), DomainError);
}

TEST(TotalField, SumsTerms) {
  RoadGeometry r;
  const FieldParams p;
  EXPECT_EQ(total_field(3.0, 1.0, {}, r, p), road_field(3.0, 1.0, r, p.road));
  const Obstacle o{5.0, 1.5, 0.0, 12.0};
  const double one = total_field(3.0, 1.0, {o}, r, p) - road_field(3.0, 1.0, r, p.road);
  const double two = total_field(3.0, 1.0, {o, o}, r, p) - road_field(3.0, 1.0, r, p.road);
  EXPECT_NEAR(two, 2.0 * one, 1e-12);
}

TEST(TotalField, MidLaneFarFromObstaclesBelowCritical) {
  RoadGeometry r;
  const FieldParams p;
  const std::vector<Obstacle> obs = {{60.0, 2.0, 0.0, 20.0}, {-50.0, -2.0, 0.0, 15.0}};
  EXPECT_LT(total_field(0.0, 2.0, obs, r, p), critical_field(p.obstacle));
  EXPECT_LT(total_field(0.0, -2.0, obs, r, p), critical_field(p.obstacle));
}

TEST(FieldParamsTest, Validation) {
  ObstacleFieldParams o;
  o.b = 0.5;
  EXPECT_THROW(o.validate(), std::invalid_argument);
  RoadFieldParams rp;
  rp.W = 0.0;
  EXPECT_THROW(rp.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace lanegame
