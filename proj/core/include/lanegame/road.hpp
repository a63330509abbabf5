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

namespace lanegame {

struct FrenetPoint {
  double s = 0.0;  // station along the reference line (m)
  double n = 0.0;  // lateral offset, positive to the left (m)
};

struct Pose2 {
  double X = 0.0;
  double Y = 0.0;
  double heading = 0.0;
};

/**
 * Straight or constant-curvature road. The reference line is the road
 * centre; lanes are numbered 1..lane_count from left to right.
 * curvature > 0 bends left. A lane may terminate at a station.
 */
struct RoadGeometry {
  double curvature = 0.0;
  double lane_width = 4.0;
  int lane_count = 2;
  int terminating_lane = 0;  // 0 when every lane runs through
  double lane_end_station = 0.0;
  double station_min = -200.0;
  double station_max = 2000.0;
  // Weights of lane lines in the road field. Lines are indexed 0..lane_count
  // from the left edge.
  double edge_line_weight = 1.0;
  double interior_line_weight = 0.0;

  void validate() const;

  Pose2 to_global(double s, double n) const;
  // Road-aligned frame at station s: origin on the reference line, x along the tangent.
  Pose2 frame_at(double s) const { return to_global(s, 0.0); }
  FrenetPoint project(double X, double Y) const;
  double heading_at(double s) const;

  double lane_center(int lane) const;
  // Lateral offset of lane line k, k = 0 is the left edge.
  double line_offset(int k) const;
  double line_weight(int k) const;
  // Lane whose strip contains offset n, clamped to the valid range.
  int lane_at(double n) const;
  bool lane_exists(int lane) const { return lane >= 1 && lane <= lane_count; }
  bool lane_open(int lane, double s) const;
  double left_extent() const { return line_offset(0); }
  double right_extent() const { return line_offset(lane_count); }
  bool in_station_domain(double s) const { return s >= station_min && s <= station_max; }
};

// Coordinates of global pose p in the frame whose global pose is `frame`.
Pose2 to_frame(const Pose2& frame, const Pose2& p);
// Inverse of to_frame.
Pose2 from_frame(const Pose2& frame, const Pose2& p);

}  // namespace lanegame
