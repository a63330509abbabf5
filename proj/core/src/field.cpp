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

#include "lanegame/field.hpp"

#include <cmath>
#include <stdexcept>

#include "lanegame/vehicle_model.hpp"

namespace lanegame {

void ObstacleFieldParams::validate() const {
  if (!(a_oc > 0 && rho_x > 0 && rho_y > 0 && b >= 1.0 && c >= 0.0)) {
    throw std::invalid_argument("obstacle field parameters out of range");
  }
}

void RoadFieldParams::validate() const {
  if (!(a_r > 0 && d_safe >= 0.0 && W > 0)) {
    throw std::invalid_argument("road field parameters out of range");
  }
}

double skew_gamma(double xh, double yh, const ObstacleFieldParams& p) {
  const double qx = xh * xh / (2.0 * p.rho_x * p.rho_x);
  const double q = qx + yh * yh / (2.0 * p.rho_y * p.rho_y);
  if (q == 0.0) return 0.0;
  const double k = xh < 0.0 ? -1.0 : 1.0;
  return k * qx / std::sqrt(q);
}

double obstacle_field(double X, double Y, const Obstacle& oc, const ObstacleFieldParams& p) {
  const double dx = X - oc.X;
  const double dy = Y - oc.Y;
  const double ch = std::cos(oc.heading);
  const double sh = std::sin(oc.heading);
  const double xh = dx * ch + dy * sh;
  const double yh = -dx * sh + dy * ch;
  const double q = xh * xh / (2.0 * p.rho_x * p.rho_x) + yh * yh / (2.0 * p.rho_y * p.rho_y);
  const double theta = -std::pow(q, p.b) + p.c * oc.v * skew_gamma(xh, yh, p);
  return p.a_oc * std::exp(theta);
}

double road_field(double X, double Y, const RoadGeometry& road, const RoadFieldParams& p) {
  const FrenetPoint f = road.project(X, Y);
  if (!road.in_station_domain(f.s)) {
    throw DomainError("road field query outside the road station range");
  }
  double sum = 0.0;
  for (int k = 0; k <= road.lane_count; ++k) {
    const double w = road.line_weight(k);
    if (w == 0.0) continue;
    const double d = std::abs(f.n - road.line_offset(k));
    sum += w * p.a_r * std::exp(-d + p.d_safe + 0.5 * p.W);
  }
  return sum;
}

double total_field(double X, double Y, const std::vector<Obstacle>& obstacles,
                   const RoadGeometry& road, const FieldParams& p) {
  double sum = road_field(X, Y, road, p.road);
  for (const Obstacle& o : obstacles) sum += obstacle_field(X, Y, o, p.obstacle);
  return sum;
}

double critical_field(const ObstacleFieldParams& p) { return p.a_oc * std::exp(-1.0); }

}  // namespace lanegame
