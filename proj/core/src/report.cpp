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

#include "lanegame/report.hpp"

#include <cstdio>

namespace lanegame {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

namespace {

std::string opt(const std::optional<double>& x) { return x ? format_number(*x) : "none"; }

}  // namespace

void write_trace_csv(const TraceLog& trace, std::ostream& out) {
  out << "t,X,Y,phi,v_x,v_y,r,delta_f,delta_f_dot,s,n,lane,committed_sigma,sigma,a_x,"
         "multiplicity,game_fallback,game_side,u,field,j_ds,j_rc,j_pe,j_total,mpc_cost,"
         "mpc_zero_cost,mpc_iterations,mpc_degraded,v_floor_clamped";
  for (const std::string& id : trace.other_ids) {
    out << ',' << id << "_X," << id << "_Y," << id << "_s," << id << "_v," << id << "_a," << id
        << "_lane";
  }
  out << '\n';
  auto f = [](double x) { return format_number(x); };
  for (const TraceRow& r : trace.rows) {
    const VehicleState& e = r.ego;
    out << f(r.t) << ',' << f(e.X) << ',' << f(e.Y) << ',' << f(e.phi) << ',' << f(e.v_x) << ','
        << f(e.v_y) << ',' << f(e.r) << ',' << f(e.delta_f) << ',' << f(e.delta_f_dot) << ','
        << f(r.ego_s) << ',' << f(r.ego_n) << ',' << r.lane << ',' << r.committed_sigma << ','
        << r.decision.sigma << ',' << f(r.decision.a_x) << ',' << r.multiplicity << ','
        << int(r.game_fallback) << ',' << r.game_side << ',' << f(r.u) << ',' << f(r.field)
        << ',' << f(r.cost.j_ds) << ',' << f(r.cost.j_rc) << ',' << f(r.cost.j_pe) << ','
        << f(r.cost.total) << ',' << f(r.mpc_cost) << ',' << f(r.mpc_zero_cost) << ','
        << r.mpc_iterations << ',' << int(r.mpc_degraded) << ',' << int(r.v_floor_clamped);
    for (const AgentSample& o : r.others) {
      out << ',' << f(o.X) << ',' << f(o.Y) << ',' << f(o.s) << ',' << f(o.v) << ',' << f(o.a)
          << ',' << o.lane;
    }
    out << '\n';
  }
}

void write_metrics(const TraceLog& trace, const RunMetrics& m, std::ostream& out) {
  out << "scenario=" << trace.scenario << '\n'
      << "style=" << trace.style << '\n'
      << "strategy=" << to_string(trace.strategy) << '\n'
      << "steps=" << trace.rows.size() << '\n'
      << "aborted=" << (m.aborted ? 1 : 0) << '\n';
  if (trace.aborted) out << "abort_reason=" << trace.abort_reason << '\n';
  out << "t_c=" << opt(m.t_c) << '\n'
      << "sigma=" << m.sigma << '\n'
      << "t_complete=" << opt(m.t_complete) << '\n'
      << "ego_v_at_tc=" << (m.t_c ? format_number(m.ego_velocity_at_tc) : "none") << '\n';
  for (std::size_t i = 0; i < m.ids.size(); ++i) {
    const bool have = i < m.gap_at_tc.size();
    out << "gap_at_tc." << m.ids[i] << '=' << (have ? format_number(m.gap_at_tc[i]) : "none")
        << '\n';
    out << "v_at_tc." << m.ids[i] << '='
        << (have ? format_number(m.velocity_at_tc[i]) : "none") << '\n';
  }
  out << "rms_safety=" << format_number(m.rms_safety) << '\n'
      << "rms_comfort=" << format_number(m.rms_comfort) << '\n'
      << "rms_efficiency=" << format_number(m.rms_efficiency) << '\n'
      << "rms_total=" << format_number(m.rms_total) << '\n'
      << "min_distance=" << format_number(m.min_distance) << '\n'
      << "max_field=" << format_number(m.max_field) << '\n'
      << "game_fallbacks=" << m.game_fallbacks << '\n'
      << "mpc_degraded=" << m.mpc_degraded << '\n'
      << "mpc_zero_dominance_violations=" << m.mpc_zero_dominance_violations << '\n'
      << "mpc_monotone_violations=" << m.mpc_monotone_violations << '\n'
      << "mpc_bound_violations=" << m.mpc_bound_violations << '\n'
      << "v_floor_events=" << m.v_floor_events << '\n';
}

void write_batch_csv(const std::string& scenario, const std::vector<BatchEntry>& entries,
                     std::ostream& out) {
  const std::vector<std::string> ids =
      entries.empty() ? std::vector<std::string>{} : entries.front().metrics.ids;
  out << "scenario,style,strategy,t_c,sigma,ego_v_at_tc";
  for (const std::string& id : ids) out << ",gap_" << id << ",v_" << id;
  out << ",rms_safety,rms_comfort,rms_efficiency,rms_total,min_distance,max_field\n";
  for (const BatchEntry& e : entries) {
    const RunMetrics& m = e.metrics;
    out << scenario << ',' << e.style << ',' << to_string(e.strategy) << ',' << opt(m.t_c) << ','
        << m.sigma << ',' << (m.t_c ? format_number(m.ego_velocity_at_tc) : "none");
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const bool have = i < m.gap_at_tc.size();
      out << ',' << (have ? format_number(m.gap_at_tc[i]) : "none") << ','
          << (have ? format_number(m.velocity_at_tc[i]) : "none");
    }
    out << ',' << format_number(m.rms_safety) << ',' << format_number(m.rms_comfort) << ','
        << format_number(m.rms_efficiency) << ',' << format_number(m.rms_total) << ','
        << format_number(m.min_distance) << ',' << format_number(m.max_field) << '\n';
  }
}

}  // namespace lanegame
