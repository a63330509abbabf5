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

// Command line front end: run, batch, field-dump, validate.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lanegame/field.hpp"
#include "lanegame/report.hpp"
#include "lanegame/scenario.hpp"
#include "lanegame/simulation.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kConfig = 3,
  kSimulation = 4,
  kIo = 5,
};

lanegame::ScenarioConfig load(const std::string& scenario) {
  return lanegame::load_scenario(lanegame::resolve_scenario_path(scenario));
}

int cmd_run(const std::string& scenario, std::string style, std::string strategy,
            const std::string& out, std::string metrics_path) {
  const lanegame::ScenarioConfig cfg = load(scenario);
  if (style.empty()) style = cfg.ego_style;
  const lanegame::EquilibriumKind kind =
      strategy.empty() ? cfg.strategy : lanegame::parse_equilibrium(strategy);
  const lanegame::TraceLog trace = lanegame::run_simulation(cfg, style, kind);
  const lanegame::RunMetrics m = lanegame::summarize(trace);

  std::ofstream tf(out);
  if (!tf) {
    std::cerr << "error: cannot write " << out << "\n";
    return kIo;
  }
  lanegame::write_trace_csv(trace, tf);
  if (metrics_path.empty()) {
    metrics_path = std::filesystem::path(out).replace_extension(".metrics.txt").string();
  }
  std::ofstream mf(metrics_path);
  if (!mf) {
    std::cerr << "error: cannot write " << metrics_path << "\n";
    return kIo;
  }
  lanegame::write_metrics(trace, m, mf);
  lanegame::write_metrics(trace, m, std::cout);
  if (trace.aborted) {
    std::cerr << "error: simulation aborted: " << trace.abort_reason << "\n";
    return kSimulation;
  }
  return kOk;
}

int cmd_batch(const std::string& scenario, const std::string& out, int jobs) {
  const lanegame::ScenarioConfig cfg = load(scenario);
  std::vector<std::pair<std::string, lanegame::EquilibriumKind>> runs;
  for (auto kind : {lanegame::EquilibriumKind::kNash, lanegame::EquilibriumKind::kStackelberg}) {
    for (auto style : lanegame::kStyleNames) runs.emplace_back(std::string(style), kind);
  }
  std::vector<lanegame::BatchEntry> entries(runs.size());
  bool aborted = false;
  const std::size_t width = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t start = 0; start < runs.size(); start += width) {
    std::vector<std::future<lanegame::TraceLog>> pending;
    const std::size_t stop = std::min(runs.size(), start + width);
    for (std::size_t i = start; i < stop; ++i) {
      pending.push_back(std::async(std::launch::async, [&cfg, run = runs[i]] {
        return lanegame::run_simulation(cfg, run.first, run.second);
      }));
    }
    for (std::size_t i = start; i < stop; ++i) {
      const lanegame::TraceLog trace = pending[i - start].get();
      aborted = aborted || trace.aborted;
      entries[i] = {runs[i].first, runs[i].second, lanegame::summarize(trace)};
    }
  }
  if (out.empty()) {
    lanegame::write_batch_csv(cfg.name, entries, std::cout);
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "error: cannot write " << out << "\n";
      return kIo;
    }
    lanegame::write_batch_csv(cfg.name, entries, f);
  }
  return aborted ? kSimulation : kOk;
}

int cmd_field_dump(const std::string& scenario, const std::string& out, double s_min,
                   double s_max, double ds, double dn) {
  const lanegame::ScenarioConfig cfg = load(scenario);
  const lanegame::RoadGeometry& road = cfg.road;
  std::vector<lanegame::Obstacle> obstacles;
  for (const lanegame::VehicleSpec& v : cfg.vehicles) {
    if (v.role == "EC") continue;
    const lanegame::FrenetPoint f = road.project(v.X, v.Y);
    const lanegame::Pose2 p = road.to_global(f.s, road.lane_center(road.lane_at(f.n)));
    obstacles.push_back({p.X, p.Y, p.heading, v.v});
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    return kIo;
  }
  f << "s,n,X,Y,field\n";
  const int ns = static_cast<int>((s_max - s_min) / ds + 1e-9);
  const int nn = static_cast<int>((road.left_extent() - road.right_extent()) / dn + 1e-9);
  for (int i = 0; i <= ns; ++i) {
    const double s = s_min + i * ds;
    for (int j = 0; j <= nn; ++j) {
      const double n = road.right_extent() + j * dn;
      const lanegame::Pose2 p = road.to_global(s, n);
      const double g = lanegame::total_field(p.X, p.Y, obstacles, road, cfg.field);
      f << lanegame::format_number(s) << ',' << lanegame::format_number(n) << ','
        << lanegame::format_number(p.X) << ',' << lanegame::format_number(p.Y) << ','
        << lanegame::format_number(g) << '\n';
    }
  }
  return kOk;
}

int cmd_validate(const std::string& scenario) {
  const lanegame::ScenarioConfig cfg = load(scenario);
  std::cout << "ok: " << (cfg.name.empty() ? scenario : cfg.name) << " ("
            << cfg.vehicles.size() << " vehicles, " << cfg.road.lane_count << " lanes)\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Game-theoretic lane-change simulator"};
  app.require_subcommand(1);

  std::string scenario, style, strategy, out, metrics;
  int jobs = 1;
  double s_min = 0.0, s_max = 120.0, ds = 1.0, dn = 0.1;

  auto* run = app.add_subcommand("run", "Simulate one style and strategy");
  run->add_option("--scenario", scenario, "Bundled scenario name or config path")->required();
  run->add_option("--style", style, "aggressive | normal | conservative or a custom style");
  run->add_option("--strategy", strategy, "nash | stackelberg")
      ->check(CLI::IsMember({"nash", "stackelberg"}));
  run->add_option("--out", out, "Trace CSV path")->required();
  run->add_option("--metrics", metrics, "Metrics file (default: <out>.metrics.txt)");

  auto* batch = app.add_subcommand("batch", "All styles under both strategies");
  batch->add_option("--scenario", scenario, "Bundled scenario name or config path")->required();
  batch->add_option("--out", out, "Comparison table CSV (default: stdout)");
  batch->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::Range(1, 64));

  auto* dump = app.add_subcommand("field-dump", "Sample the potential field at t = 0");
  dump->add_option("--scenario", scenario, "Bundled scenario name or config path")->required();
  dump->add_option("--out", out, "Output CSV path")->required();
  dump->add_option("--s-min", s_min, "First station (m)");
  dump->add_option("--s-max", s_max, "Last station (m)");
  dump->add_option("--ds", ds, "Station step (m)")->check(CLI::PositiveNumber);
  dump->add_option("--dn", dn, "Lateral step (m)")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Check a scenario config");
  validate->add_option("--scenario", scenario, "Bundled scenario name or config path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*run) return cmd_run(scenario, style, strategy, out, metrics);
    if (*batch) return cmd_batch(scenario, out, jobs);
    if (*dump) return cmd_field_dump(scenario, out, s_min, s_max, ds, dn);
    if (*validate) return cmd_validate(scenario);
  } catch (const lanegame::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const lanegame::UnknownStyle& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSimulation;
  }
  return kUsage;
}
