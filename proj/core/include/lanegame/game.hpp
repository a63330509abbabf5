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

#include <Eigen/Dense>

#include <stdexcept>
#include <string_view>
#include <vector>

#include "lanegame/costs.hpp"

namespace lanegame {

class InfeasibleGame : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EquilibriumKind { kNash, kStackelberg };

EquilibriumKind parse_equilibrium(std::string_view name);
std::string_view to_string(EquilibriumKind kind);

// Relative tolerance used for best-response set membership.
inline constexpr double kBestResponseTol = 1e-9;

/**
 * Bimatrix game over ego actions (rows) and adjacent-car accelerations
 * (columns). ego(i, j) and ac(i, j) are the two players' costs.
 */
struct CostTable {
  std::vector<DecisionAction> rows;
  std::vector<double> cols;
  Eigen::MatrixXd ego;
  Eigen::MatrixXd ac;
};

struct MatrixSolution {
  int row = -1;
  int col = -1;
  int multiplicity = 0;  // pure equilibria found; 0 marks the security fallback
  bool fallback = false;
};

// Order used to break ties between equally good cells.
int sigma_rank(int sigma);

MatrixSolution solve_nash(const CostTable& t, double tol = kBestResponseTol);
MatrixSolution solve_stackelberg(const CostTable& t, double tol = kBestResponseTol);
MatrixSolution solve(const CostTable& t, EquilibriumKind kind, double tol = kBestResponseTol);

struct ActionGrid {
  std::vector<double> accelerations;
  std::vector<int> sigmas = {-1, 0, 1};

  static ActionGrid uniform(double a_min, double a_max, double step);
  void validate() const;
};

struct GameSolution {
  DecisionAction ego_action;
  CostBreakdown ego_cost;
  std::vector<int> ac_index;      // indices into DecisionScene::others
  std::vector<double> ac_actions;
  std::vector<CostBreakdown> ac_costs;
  EquilibriumKind kind = EquilibriumKind::kNash;
  int multiplicity = 0;
  bool fallback = false;
  int side = 0;  // 0 two-player form, 1 left subgame, 2 right subgame
};

// Builds the table of one ego-vs-partner subgame. partner < 0 yields a single
// dummy column. Rows or columns that leave the speed bounds over the decision
// horizon are dropped; when every entry would be dropped the least violating
// ones are kept.
CostTable build_table(const DecisionScene& scene, int partner, const std::vector<int>& sigmas,
                      const ActionGrid& grid, const CostGains& g);

GameSolution solve_2p(const DecisionScene& scene, int partner, const ActionGrid& grid,
                      const CostGains& g, EquilibriumKind kind);
GameSolution solve_nash_2p(const DecisionScene& scene, int partner, const ActionGrid& grid,
                           const CostGains& g);
GameSolution solve_stackelberg_2p(const DecisionScene& scene, int partner,
                                  const ActionGrid& grid, const CostGains& g);

// Left subgame uses sigma in {-1, 0} against ac1, right subgame {0, +1}
// against ac2; the lower ego cost wins and an exact tie goes left.
GameSolution solve_two_ac(const DecisionScene& scene, int ac1, int ac2, const ActionGrid& grid,
                          const CostGains& g, EquilibriumKind kind);
GameSolution solve_nash_two_ac(const DecisionScene& scene, int ac1, int ac2,
                               const ActionGrid& grid, const CostGains& g);
GameSolution solve_stackelberg_two_ac(const DecisionScene& scene, int ac1, int ac2,
                                      const ActionGrid& grid, const CostGains& g);

// Acceleration minimizing a non-playing car's own cost with the ego action fixed.
double best_response_accel(const DecisionScene& scene, int agent, const DecisionAction& ego,
                           const ActionGrid& grid, const CostGains& g);

}  // namespace lanegame
