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

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lanegame/vehicle_model.hpp"

namespace lanegame {

struct StyleProfile {
  std::string name;
  DriverParams driver;
  double w_ds = 0.0;  // driving safety
  double w_rc = 0.0;  // ride comfort
  double w_pe = 0.0;  // travel efficiency

  // Throws std::invalid_argument when weights are out of (0, 1) or do not sum to one.
  void validate() const;
};

class UnknownStyle : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

StyleProfile style_profile(std::string_view name);

inline constexpr std::array<std::string_view, 3> kStyleNames = {
    "aggressive", "normal", "conservative"};

}  // namespace lanegame
