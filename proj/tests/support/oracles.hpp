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


// Reference implementations used only by the test suites. They enumerate
// directly and do not share code paths with the library solvers.
#pragma once

#include <vector>

#include "lanegame/costs.hpp"
#include "lanegame/game.hpp"
#include "lanegame/vehicle_model.hpp"

namespace lanegame::oracle {

struct Cell {
  int row = -1;
  int col = -1;
  int multiplicity = 0;
  bool fallback = false;
};

// Pure equilibria by exhaustive best-response checks, smallest ego cost first.
Cell nash(const CostTable& t, double tol = kBestResponseTol);
// min over rows of the worst ego cost inside the follower's best-response set.
Cell stackelberg(const CostTable& t, double tol = kBestResponseTol);

struct SideResult {
  bool present = false;
  DecisionAction ego;
  double ac_accel = 0.0;
  double ego_total = 0.0;
};

struct TwoAcResult {
  SideResult left;
  SideResult right;
  int chosen_side = 0;  // 1 left, 2 right
};

// Enumerates both per-side subgames from ego_cost/ac_cost directly.
TwoAcResult two_ac(const DecisionScene& scene, int ac1, int ac2, const ActionGrid& grid,
                   const CostGains& g, EquilibriumKind kind);

// Central differences of `derivatives` with respect to state and preview input.
Linearization finite_difference_jacobian(const VehicleState& s, const ControlInput& u,
                                         const VehicleParams& vp, const DriverParams& dp);

// Propagates x' = A x + B u + g over dt in `substeps` pieces, each by a
// truncated Taylor series of the flow.
Vec8 fine_propagate(const Mat8& A, const Vec8& B, const Vec8& g, const Vec8& x0, double u,
                    double dt, int substeps = 10);

}  // namespace lanegame::oracle
