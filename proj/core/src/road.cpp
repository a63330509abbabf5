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

#include "lanegame/road.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lanegame {

void RoadGeometry::validate() const {
  if (!(lane_width > 0.0)) throw std::invalid_argument("road.lane_width must be positive");
  if (lane_count < 2 || lane_count > 3) {
    throw std::invalid_argument("road.lane_count must be 2 or 3");
  }
  const double half_width = 0.5 * lane_count * lane_width;
  if (!(std::abs(curvature) * half_width < 1.0)) {
    throw std::invalid_argument("road.curvature too tight for the road width");
  }
  if (terminating_lane != 0 && !lane_exists(terminating_lane)) {
    throw std::invalid_argument("road.terminating_lane is not a lane of the road");
  }
  if (!(station_max > station_min)) {
    throw std::invalid_argument("road station range is empty");
  }
  if (edge_line_weight < 0.0 || interior_line_weight < 0.0) {
    throw std::invalid_argument("road line weights must be non-negative");
  }
}

Pose2 RoadGeometry::to_global(double s, double n) const {
  if (curvature == 0.0) return {s, n, 0.0};
  const double R = 1.0 / curvature;
  const double th = s * curvature;
  return {(R - n) * std::sin(th), R - (R - n) * std::cos(th), th};
}

FrenetPoint RoadGeometry::project(double X, double Y) const {
  if (curvature == 0.0) return {X, Y};
  const double R = 1.0 / curvature;
  const double sg = R > 0.0 ? 1.0 : -1.0;
  const double th = std::atan2(sg * X, sg * (R - Y));
  const double rho = std::hypot(X, R - Y);
  return {R * th, R - sg * rho};
}

Pose2 to_frame(const Pose2& frame, const Pose2& p) {
  const double c = std::cos(frame.heading);
  const double sn = std::sin(frame.heading);
  const double dx = p.X - frame.X;
  const double dy = p.Y - frame.Y;
  return {c * dx + sn * dy, -sn * dx + c * dy, p.heading - frame.heading};
}

Pose2 from_frame(const Pose2& frame, const Pose2& p) {
  const double c = std::cos(frame.heading);
  const double sn = std::sin(frame.heading);
  return {frame.X + c * p.X - sn * p.Y, frame.Y + sn * p.X + c * p.Y, p.heading + frame.heading};
}

double RoadGeometry::heading_at(double s) const { return s * curvature; }

double RoadGeometry::lane_center(int lane) const {
  return (0.5 * (lane_count + 1) - lane) * lane_width;
}

double RoadGeometry::line_offset(int k) const {
  return (0.5 * lane_count - k) * lane_width;
}

double RoadGeometry::line_weight(int k) const {
  return (k == 0 || k == lane_count) ? edge_line_weight : interior_line_weight;
}

int RoadGeometry::lane_at(double n) const {
  const int k = static_cast<int>(std::floor((left_extent() - n) / lane_width)) + 1;
  return std::clamp(k, 1, lane_count);
}

bool RoadGeometry::lane_open(int lane, double s) const {
  if (!lane_exists(lane)) return false;
  return lane != terminating_lane || s < lane_end_station;
}

}  // namespace lanegame
