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

#include "lanegame/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace lanegame {

EquilibriumKind parse_equilibrium(std::string_view name) {
  if (name == "nash") return EquilibriumKind::kNash;
  if (name == "stackelberg") return EquilibriumKind::kStackelberg;
  throw std::invalid_argument("unknown strategy: " + std::string(name));
}

std::string_view to_string(EquilibriumKind kind) {
  return kind == EquilibriumKind::kNash ? "nash" : "stackelberg";
}

int sigma_rank(int sigma) {
  switch (sigma) {
    case 0: return 0;
    case -1: return 1;
    default: return 2;
  }
}

namespace {

bool within(double x, double best, double tol) {
  return x <= best + tol * std::max(1.0, std::abs(best));
}

auto row_key(const CostTable& t, int i) {
  const DecisionAction& a = t.rows[static_cast<std::size_t>(i)];
  return std::make_tuple(std::abs(a.a_x), sigma_rank(a.sigma), a.a_x);
}

auto col_key(const CostTable& t, int j) {
  const double c = t.cols[static_cast<std::size_t>(j)];
  return std::make_tuple(std::abs(c), c);
}

void check_table(const CostTable& t) {
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  const auto m = static_cast<Eigen::Index>(t.cols.size());
  if (n == 0 || m == 0) throw InfeasibleGame("empty cost table");
  if (t.ego.rows() != n || t.ego.cols() != m || t.ac.rows() != n || t.ac.cols() != m) {
    throw std::invalid_argument("cost table dimensions disagree");
  }
}

// Column of row i realizing the largest ego cost among `candidates`.
int worst_column(const CostTable& t, int i, const std::vector<int>& candidates) {
  int best = -1;
  for (int j : candidates) {
    if (best < 0) {
      best = j;
      continue;
    }
    const double e = t.ego(i, j);
    const double eb = t.ego(i, best);
    if (e > eb || (e == eb && col_key(t, j) < col_key(t, best))) best = j;
  }
  return best;
}

MatrixSolution security(const CostTable& t) {
  const int n = static_cast<int>(t.rows.size());
  const int m = static_cast<int>(t.cols.size());
  std::vector<int> all(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) all[static_cast<std::size_t>(j)] = j;
  MatrixSolution s;
  double best = kInf;
  for (int i = 0; i < n; ++i) {
    const int j = worst_column(t, i, all);
    const double v = t.ego(i, j);
    if (s.row < 0 || v < best || (v == best && row_key(t, i) < row_key(t, s.row))) {
      s.row = i;
      s.col = j;
      best = v;
    }
  }
  s.multiplicity = 0;
  s.fallback = true;
  return s;
}

}  // namespace

MatrixSolution solve_nash(const CostTable& t, double tol) {
  check_table(t);
  const int n = static_cast<int>(t.rows.size());
  const int m = static_cast<int>(t.cols.size());
  const Eigen::RowVectorXd col_min = t.ego.colwise().minCoeff();
  const Eigen::VectorXd row_min = t.ac.rowwise().minCoeff();

  MatrixSolution s;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!within(t.ego(i, j), col_min(j), tol) || !within(t.ac(i, j), row_min(i), tol)) continue;
      ++s.multiplicity;
      if (s.row < 0) {
        s.row = i;
        s.col = j;
        continue;
      }
      const double e = t.ego(i, j);
      const double eb = t.ego(s.row, s.col);
      const auto k = std::tuple_cat(row_key(t, i), col_key(t, j));
      const auto kb = std::tuple_cat(row_key(t, s.row), col_key(t, s.col));
      if (e < eb || (e == eb && k < kb)) {
        s.row = i;
        s.col = j;
      }
    }
  }
  if (s.multiplicity == 0) return security(t);
  return s;
}

MatrixSolution solve_stackelberg(const CostTable& t, double tol) {
  check_table(t);
  const int n = static_cast<int>(t.rows.size());
  const int m = static_cast<int>(t.cols.size());
  MatrixSolution s;
  double best = kInf;
  std::vector<double> value(static_cast<std::size_t>(n));
  std::vector<int> response;
  for (int i = 0; i < n; ++i) {
    const double fmin = t.ac.row(i).minCoeff();
    response.clear();
    for (int j = 0; j < m; ++j) {
      if (within(t.ac(i, j), fmin, tol)) response.push_back(j);
    }
    const int j = worst_column(t, i, response);
    const double v = t.ego(i, j);
    value[static_cast<std::size_t>(i)] = v;
    if (s.row < 0 || v < best || (v == best && row_key(t, i) < row_key(t, s.row))) {
      s.row = i;
      s.col = j;
      best = v;
    }
  }
  s.multiplicity = static_cast<int>(std::count(value.begin(), value.end(), best));
  return s;
}

MatrixSolution solve(const CostTable& t, EquilibriumKind kind, double tol) {
  return kind == EquilibriumKind::kNash ? solve_nash(t, tol) : solve_stackelberg(t, tol);
}

ActionGrid ActionGrid::uniform(double a_min, double a_max, double step) {
  if (!(step > 0.0) || !(a_max >= a_min)) throw std::invalid_argument("bad acceleration grid");
  ActionGrid g;
  const int count = static_cast<int>(std::floor((a_max - a_min) / step + 1e-9)) + 1;
  for (int k = 0; k < count; ++k) {
    // Rounded so that grid points such as 0 are exact.
    g.accelerations.push_back(std::round((a_min + k * step) * 1e9) / 1e9);
  }
  return g;
}

void ActionGrid::validate() const {
  if (accelerations.empty() || sigmas.empty()) throw std::invalid_argument("empty action grid");
  if (!std::is_sorted(accelerations.begin(), accelerations.end())) {
    throw std::invalid_argument("acceleration grid must be sorted ascending");
  }
  for (int s : sigmas) {
    if (s < -1 || s > 1) throw std::invalid_argument("sigma grid entries must be -1, 0 or 1");
  }
}

namespace {

// Accelerations keeping v + a*T inside [v_min, v_max]; the least violating
// ones when none does.
std::vector<double> admissible(const std::vector<double>& accels, double v,
                               const SpeedLimits& lim, double horizon) {
  std::vector<double> ok;
  std::vector<double> violation;
  double least = kInf;
  for (double a : accels) {
    const double ve = v + a * horizon;
    const double viol = std::max({0.0, lim.v_min - ve, ve - lim.v_max});
    violation.push_back(viol);
    least = std::min(least, viol);
    if (viol <= 1e-9) ok.push_back(a);
  }
  if (!ok.empty()) return ok;
  for (std::size_t k = 0; k < accels.size(); ++k) {
    if (violation[k] == least) ok.push_back(accels[k]);
  }
  return ok;
}

GameSolution finish(const DecisionScene& sc, int partner, const CostTable& t,
                    const MatrixSolution& ms, const CostGains& g, EquilibriumKind kind) {
  GameSolution out;
  out.kind = kind;
  out.ego_action = t.rows[static_cast<std::size_t>(ms.row)];
  const double ac_a = t.cols[static_cast<std::size_t>(ms.col)];
  out.ego_cost = ego_cost(sc, out.ego_action, partner, ac_a, g);
  if (partner >= 0) {
    out.ac_index.push_back(partner);
    out.ac_actions.push_back(ac_a);
    out.ac_costs.push_back(ac_cost(sc, partner, out.ego_action, ac_a, g));
  }
  out.multiplicity = ms.multiplicity;
  out.fallback = ms.fallback;
  return out;
}

}  // namespace

CostTable build_table(const DecisionScene& sc, int partner, const std::vector<int>& sigmas,
                      const ActionGrid& grid, const CostGains& g) {
  grid.validate();
  CostTable t;
  if (partner >= 0) {
    const Agent& p = sc.others.at(static_cast<std::size_t>(partner));
    t.cols = admissible(grid.accelerations, p.v, sc.limits_for(p.lane), g.horizon);
  } else {
    t.cols = {0.0};
  }
  const std::vector<double> ego_accels =
      admissible(grid.accelerations, sc.ego.v, sc.limits_for(sc.ego.lane), g.horizon);

  const auto m = static_cast<Eigen::Index>(t.cols.size());
  std::vector<Eigen::RowVectorXd> e_rows;
  std::vector<Eigen::RowVectorXd> f_rows;
  for (int sigma : sigmas) {
    for (double a : ego_accels) {
      const DecisionAction act{a, sigma};
      Eigen::RowVectorXd e(m);
      Eigen::RowVectorXd f(m);
      bool feasible = true;
      for (Eigen::Index j = 0; j < m && feasible; ++j) {
        const double c = t.cols[static_cast<std::size_t>(j)];
        e(j) = ego_cost(sc, act, partner, c, g).total;
        feasible = e(j) < kInf;
        f(j) = partner >= 0 ? ac_cost(sc, partner, act, c, g).total : 0.0;
      }
      if (!feasible) continue;
      t.rows.push_back(act);
      e_rows.push_back(e);
      f_rows.push_back(f);
    }
  }
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  t.ego.resize(n, m);
  t.ac.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    t.ego.row(i) = e_rows[static_cast<std::size_t>(i)];
    t.ac.row(i) = f_rows[static_cast<std::size_t>(i)];
  }
  return t;
}

GameSolution solve_2p(const DecisionScene& sc, int partner, const ActionGrid& grid,
                      const CostGains& g, EquilibriumKind kind) {
  const CostTable t = build_table(sc, partner, grid.sigmas, grid, g);
  if (t.rows.empty()) throw InfeasibleGame("no feasible ego action");
  return finish(sc, partner, t, solve(t, kind), g, kind);
}

GameSolution solve_nash_2p(const DecisionScene& sc, int partner, const ActionGrid& grid,
                           const CostGains& g) {
  return solve_2p(sc, partner, grid, g, EquilibriumKind::kNash);
}

GameSolution solve_stackelberg_2p(const DecisionScene& sc, int partner, const ActionGrid& grid,
                                  const CostGains& g) {
  return solve_2p(sc, partner, grid, g, EquilibriumKind::kStackelberg);
}

GameSolution solve_two_ac(const DecisionScene& sc, int ac1, int ac2, const ActionGrid& grid,
                          const CostGains& g, EquilibriumKind kind) {
  struct Side {
    int partner;
    std::vector<int> sigmas;
    bool lane_exists;
  };
  const Side sides[2] = {{ac1, {-1, 0}, sc.road.lane_exists(sc.ego.lane - 1)},
                         {ac2, {0, 1}, sc.road.lane_exists(sc.ego.lane + 1)}};
  std::optional<GameSolution> chosen;
  std::vector<GameSolution> solved;
  for (int k = 0; k < 2; ++k) {
    const Side& side = sides[k];
    if (!side.lane_exists) continue;
    std::vector<int> sig;
    for (int s : side.sigmas) {
      if (std::find(grid.sigmas.begin(), grid.sigmas.end(), s) != grid.sigmas.end()) sig.push_back(s);
    }
    const CostTable t = build_table(sc, side.partner, sig, grid, g);
    if (t.rows.empty()) continue;
    GameSolution sol = finish(sc, side.partner, t, solve(t, kind), g, kind);
    sol.side = k + 1;
    solved.push_back(sol);
    // Strict comparison keeps the left side on an exact tie.
    if (!chosen || sol.ego_cost.total < chosen->ego_cost.total) chosen = sol;
  }
  if (!chosen) throw InfeasibleGame("no feasible ego action in either subgame");
  GameSolution out = *chosen;
  out.ac_index.clear();
  out.ac_actions.clear();
  out.ac_costs.clear();
  for (const GameSolution& s : solved) {
    for (std::size_t k = 0; k < s.ac_index.size(); ++k) {
      out.ac_index.push_back(s.ac_index[k]);
      out.ac_actions.push_back(s.ac_actions[k]);
      out.ac_costs.push_back(s.ac_costs[k]);
    }
  }
  return out;
}

GameSolution solve_nash_two_ac(const DecisionScene& sc, int ac1, int ac2, const ActionGrid& grid,
                               const CostGains& g) {
  return solve_two_ac(sc, ac1, ac2, grid, g, EquilibriumKind::kNash);
}

GameSolution solve_stackelberg_two_ac(const DecisionScene& sc, int ac1, int ac2,
                                      const ActionGrid& grid, const CostGains& g) {
  return solve_two_ac(sc, ac1, ac2, grid, g, EquilibriumKind::kStackelberg);
}

double best_response_accel(const DecisionScene& sc, int agent, const DecisionAction& ego,
                           const ActionGrid& grid, const CostGains& g) {
  const Agent& me = sc.others.at(static_cast<std::size_t>(agent));
  const std::vector<double> accels =
      admissible(grid.accelerations, me.v, sc.limits_for(me.lane), g.horizon);
  double best_a = accels.front();
  double best = kInf;
  for (double a : accels) {
    const double c = ac_cost(sc, agent, ego, a, g).total;
    if (c < best || (c == best && std::make_tuple(std::abs(a), a) <
                                      std::make_tuple(std::abs(best_a), best_a))) {
      best = c;
      best_a = a;
    }
  }
  return best_a;
}

}  // namespace lanegame
