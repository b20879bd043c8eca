// Copyright 2026 The gossipcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Experiment orchestration behind the gossipcalc command line: configuration
// checks, topology resolution, seeded trial fan-out, and JSON/CSV emission.
// File access stays in the tool; a config arrives here with file contents
// already loaded.

#ifndef GOSSIPCALC_EXPERIMENT_H_
#define GOSSIPCALC_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gossipcalc/comp.h"
#include "gossipcalc/conductance.h"
#include "gossipcalc/engine.h"
#include "gossipcalc/error.h"
#include "gossipcalc/graph.h"
#include "gossipcalc/metrics.h"
#include "gossipcalc/spread.h"

namespace gossipcalc {

enum class Command { kCompute, kSpread, kConductance, kSweep };

enum class TopologyKind { kComplete, kGrid, kRing, kPath, kExpander, kFile };

std::optional<TopologyKind> ParseTopologyKind(std::string_view text);
std::string_view TopologyKindName(TopologyKind kind);

struct TopologySpec {
  TopologyKind kind = TopologyKind::kComplete;
  std::size_t n = 0;
  std::size_t grid_d = 2;
  std::size_t grid_c = 0;
  std::size_t degree = 4;
  std::uint64_t graph_seed = 1;
  // Contents of the edge-list file for kFile.
  std::string edge_list_text;
};

struct ExperimentConfig {
  Command command = Command::kCompute;
  TopologySpec topology;
  TimeModel time_model = TimeModel::kAsynchronous;
  SyncSemantics sync_semantics = SyncSemantics::kSerialized;
  double epsilon = 0.2;
  double delta = 0.1;
  std::optional<std::uint64_t> r;
  std::int64_t trials = 100;
  std::uint64_t seed = 1;
  CapacityMode capacity = CapacityMode::kInfinite;
  MinimaPath minima_path = MinimaPath::kSpread;
  FunctionKind f_kind = FunctionKind::kConstantOne;
  std::vector<double> inputs;
  std::map<double, double> f_table;
  // Node counts for kSweep.
  std::vector<std::size_t> sizes;
  // Record a per-event trace of trial 0 (spread only).
  bool trace = false;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  double band = kDefaultBandFactor;
  // 0 = GOSSIPCALC_THREADS or the hardware concurrency.
  std::size_t threads = 0;
};

struct Violation {
  std::string field;
  std::string message;
};

// Empty iff `config` is runnable.
std::vector<Violation> ValidateConfig(const ExperimentConfig& config);

// Human-readable descriptor such as "grid(d=2,c=4)".
std::string DescribeTopology(const TopologySpec& spec);
Graph BuildTopology(const TopologySpec& spec);

// Conductance used for predictions: the closed form on complete graphs,
// enumeration up to `cap`, the heuristic floor on larger grids, nullopt
// otherwise.
std::optional<ConductanceResult> ReferenceConductance(const TopologySpec& spec,
                                                      const TransitionMatrix& matrix,
                                                      std::size_t cap);

struct ExperimentOutput {
  // Primary result document (JSON text, newline-terminated).
  std::string json;
  // Metrics table; empty for `conductance`.
  std::string csv;
  // Event trace when requested.
  std::string trace;
};

// Runs the configured command. Throws Error; the config must already pass
// ValidateConfig.
ExperimentOutput RunExperiment(const ExperimentConfig& config);

// Exit status for a failure: 2 configuration, 3 generation or numerical,
// 4 I/O.
int ExitCodeFor(ErrorCode code);

// GOSSIPCALC_THREADS if set to a positive integer, else the hardware
// concurrency (at least 1).
std::size_t DefaultWorkerCount();

// Runs body(t) for t in [0, count) on up to `workers` threads.
void ParallelFor(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& body);

}  // namespace gossipcalc

#endif  // GOSSIPCALC_EXPERIMENT_H_
