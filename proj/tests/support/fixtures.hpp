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

#include <random>
#include <string>
#include <vector>

#include "lanegame/costs.hpp"
#include "lanegame/game.hpp"
#include "lanegame/scenario.hpp"

namespace lanegame::testing {

Agent make_agent(const std::string& id, const std::string& role, int lane, double s, double v);

// Straight road with `lanes` lanes and the ego in `ego_lane`.
DecisionScene straight_scene(int lanes, int ego_lane, double ego_s, double ego_v);

ScenarioConfig bundled(const std::string& name);

// Random bimatrix table. With `coarse`, costs are small integers so ties
// and multiple equilibria are common.
CostTable random_table(std::mt19937& rng, int n_accel, const std::vector<int>& sigmas,
                       int n_cols, bool coarse);

// Random straight-road scene with up to `n_others` vehicles spread around the ego.
DecisionScene random_scene(std::mt19937& rng, int lanes, int n_others);

// Decision scene of the first simulation step of `cfg`, with the ego styled `style`.
DecisionScene first_decision_scene(const ScenarioConfig& cfg, const std::string& style);

// Solves the first decision the way the simulation dispatches it: both side
// subgames on a middle lane, otherwise the two-player game with the one side.
GameSolution first_decision(const DecisionScene& sc, const ActionGrid& grid, const CostGains& g,
                            EquilibriumKind kind);

}  // namespace lanegame::testing
