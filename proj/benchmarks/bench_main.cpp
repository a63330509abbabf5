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


#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "lanegame/game.hpp"
#include "lanegame/mpc.hpp"
#include "lanegame/scenario.hpp"
#include "lanegame/simulation.hpp"
#include "lanegame/styles.hpp"

namespace {

using namespace lanegame;

CostTable random_table(int n, int m) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> c(0.0, 10.0);
  CostTable t;
  for (int i = 0; i < n; ++i) {
    for (int s : {-1, 0, 1}) t.rows.push_back({-4.0 + 0.5 * i, s});
  }
  for (int j = 0; j < m; ++j) t.cols.push_back(-4.0 + 0.5 * j);
  t.ego.resize(static_cast<Eigen::Index>(t.rows.size()), m);
  t.ac.resize(static_cast<Eigen::Index>(t.rows.size()), m);
  for (Eigen::Index i = 0; i < t.ego.rows(); ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      t.ego(i, j) = c(rng);
      t.ac(i, j) = c(rng);
    }
  }
  return t;
}

void BM_SolveNash(benchmark::State& state) {
  const CostTable t = random_table(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_nash(t));
}
BENCHMARK(BM_SolveNash)->Arg(5)->Arg(15)->Arg(31);

void BM_SolveStackelberg(benchmark::State& state) {
  const CostTable t = random_table(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_stackelberg(t));
}
BENCHMARK(BM_SolveStackelberg)->Arg(5)->Arg(15)->Arg(31);

void BM_SolvePlan(benchmark::State& state) {
  const ScenarioConfig cfg = load_scenario(resolve_scenario_path("scenario_a"));
  PlanScene scene;
  scene.road = &cfg.road;
  scene.target_lane = 1;
  scene.driver = style_profile("normal").driver;
  scene.vehicle = cfg.vehicle;
  scene.field = cfg.field;
  scene.obstacles.push_back({30.0, -2.0, 0.0, 20.0});
  VehicleState x;
  x.v_x = 25.0;
  x.Y = -2.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_plan(x, x.Y, scene, cfg.mpc));
}
BENCHMARK(BM_SolvePlan)->Unit(benchmark::kMicrosecond);

void BM_SimulateScenario(benchmark::State& state) {
  ScenarioConfig cfg = load_scenario(resolve_scenario_path("scenario_a"));
  cfg.duration = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(cfg, "normal", EquilibriumKind::kNash));
  }
  state.counters["steps"] = benchmark::Counter(cfg.duration / cfg.dt, benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_SimulateScenario)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
