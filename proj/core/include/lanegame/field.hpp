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

#include <vector>

#include "lanegame/road.hpp"

namespace lanegame {

struct ObstacleFieldParams {
  double a_oc = 50.0;
  double rho_x = 8.0;
  double rho_y = 1.2;
  double b = 1.0;
  double c = 0.05;  // velocity skew gain (s/m)

  void validate() const;
};

struct RoadFieldParams {
  double a_r = 10.0;
  double d_safe = 0.2;
  double W = 1.8;  // vehicle width

  void validate() const;
};

struct FieldParams {
  ObstacleFieldParams obstacle;
  RoadFieldParams road;
};

struct Obstacle {
  double X = 0.0;
  double Y = 0.0;
  double heading = 0.0;
  double v = 0.0;
};

// Skew term gamma in the obstacle frame; zero at the obstacle centre.
double skew_gamma(double xh, double yh, const ObstacleFieldParams& p);

double obstacle_field(double X, double Y, const Obstacle& oc, const ObstacleFieldParams& p);

// Sum over weighted lane lines of a_r * exp(-d + d_safe + W/2). Throws
// DomainError when the query projects outside the road's station range.
double road_field(double X, double Y, const RoadGeometry& road, const RoadFieldParams& p);

double total_field(double X, double Y, const std::vector<Obstacle>& obstacles,
                   const RoadGeometry& road, const FieldParams& p);

// Field value at which the obstacle core is entered, a_oc / e.
double critical_field(const ObstacleFieldParams& p);

}  // namespace lanegame
