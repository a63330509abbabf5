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

#include "lanegame/styles.hpp"

#include <cmath>

namespace lanegame {

void StyleProfile::validate() const {
  driver.validate();
  for (double w : {w_ds, w_rc, w_pe}) {
    if (!(w > 0.0 && w < 1.0)) {
      throw std::invalid_argument("style '" + name + "': weights must lie in (0, 1)");
    }
  }
  if (std::abs(w_ds + w_rc + w_pe - 1.0) > 1e-12) {
    throw std::invalid_argument("style '" + name + "': weights must sum to 1");
  }
}

StyleProfile style_profile(std::string_view name) {
  if (name == "aggressive") {
    return {"aggressive", {0.14, 1.02, 0.84, 0.24}, 0.1, 0.1, 0.8};
  }
  if (name == "normal") {
    return {"normal", {0.18, 0.94, 0.75, 0.23}, 0.5, 0.3, 0.2};
  }
  if (name == "conservative") {
    return {"conservative", {0.24, 0.83, 0.62, 0.22}, 0.7, 0.2, 0.1};
  }
  throw UnknownStyle("unknown driving style: " + std::string(name));
}

}  // namespace lanegame
