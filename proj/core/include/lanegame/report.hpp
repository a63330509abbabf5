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

#include <ostream>
#include <string>
#include <vector>

#include "lanegame/simulation.hpp"

namespace lanegame {

// Numbers are written with 9 significant digits.
std::string format_number(double x);

void write_trace_csv(const TraceLog& trace, std::ostream& out);

// Flat key=value lines.
void write_metrics(const TraceLog& trace, const RunMetrics& m, std::ostream& out);

struct BatchEntry {
  std::string style;
  EquilibriumKind strategy;
  RunMetrics metrics;
};

// One row per style and strategy, columns in the order of write_metrics.
void write_batch_csv(const std::string& scenario, const std::vector<BatchEntry>& entries,
                     std::ostream& out);

}  // namespace lanegame
