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

#include "gossipcalc/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "gossipcalc/random.h"

namespace gossipcalc {
namespace {

using nlohmann::json;

std::string Str(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

bool InOpenUnit(double v) { return v > 0.0 && v < 1.0; }

// c with c^d == n, if any.
std::optional<std::size_t> ExactRoot(std::size_t n, std::size_t d) {
  if (d == 0) return std::nullopt;
  const auto guess = static_cast<std::size_t>(
      std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d))));
  for (std::size_t c = guess > 0 ? guess - 1 : 0; c <= guess + 1; ++c) {
    if (c < 2) continue;
    std::size_t p = 1;
    bool overflow = false;
    for (std::size_t k = 0; k < d && !overflow; ++k) {
      if (p > std::numeric_limits<std::size_t>::max() / c) overflow = true;
      p *= c;
    }
    if (!overflow && p == n) return c;
  }
  return std::nullopt;
}

void CheckTopology(const TopologySpec& t, std::vector<Violation>& out) {
  switch (t.kind) {
    case TopologyKind::kComplete:
      if (t.n < 2) out.push_back({"n", "complete graph needs n >= 2"});
      break;
    case TopologyKind::kRing:
      if (t.n < 3) out.push_back({"n", "ring needs n >= 3"});
      break;
    case TopologyKind::kPath:
      if (t.n < 2) out.push_back({"n", "path needs n >= 2"});
      break;
    case TopologyKind::kGrid:
      if (t.grid_d < 1) out.push_back({"grid-d", "grid dimension must satisfy d >= 1"});
      if (t.grid_c < 2) out.push_back({"grid-c", "grid side must satisfy c >= 2"});
      break;
    case TopologyKind::kExpander:
      if (t.degree < 3) out.push_back({"degree", "expander degree must be >= 3"});
      if (t.degree >= t.n) out.push_back({"degree", "expander degree must be < n"});
      if ((t.n * t.degree) % 2 != 0) {
        out.push_back({"degree", "n * degree must be even"});
      }
      break;
    case TopologyKind::kFile:
      if (t.edge_list_text.empty()) {
        out.push_back({"edge-list", "file topology needs a non-empty edge list"});
      }
      break;
  }
}

TopologySpec WithSize(TopologySpec spec, std::size_t n) {
  if (spec.kind == TopologyKind::kGrid) {
    spec.grid_c = ExactRoot(n, spec.grid_d).value_or(0);
  } else {
    spec.n = n;
  }
  return spec;
}

json RecordToJson(const TrialRecord& record) {
  json j;
  j["trial"] = record.trial_index;
  j["seed"] = record.seed;
  j["topology"] = record.topology;
  j["n"] = record.node_count;
  j["time_model"] = std::string(TimeModelName(record.time_model));
  j["completion_time"] = record.completion_time;
  j["events"] = record.events;
  if (!record.relative_errors.empty()) {
    j["r"] = record.r;
    j["capacity"] = std::string(CapacityModeName(record.capacity));
    j["max_relative_error"] =
        *std::max_element(record.relative_errors.begin(), record.relative_errors.end());
    j["relative_errors"] = record.relative_errors;
  }
  return j;
}

struct Network {
  Graph graph;
  TransitionMatrix matrix;
  PartnerSampler sampler;
};

Network MakeNetwork(const TopologySpec& spec) {
  Graph graph = BuildTopology(spec);
  TransitionMatrix matrix = MaxDegreeMatrix(graph);
  PartnerSampler sampler(matrix);
  return {std::move(graph), std::move(matrix), std::move(sampler)};
}

std::vector<TrialRecord> RunSpreadTrials(const ExperimentConfig& config,
                                         const TopologySpec& spec,
                                         const Network& net, std::string* trace) {
  const auto trials = static_cast<std::size_t>(config.trials);
  std::vector<TrialRecord> records(trials);
  const std::string topology = DescribeTopology(spec);
  std::ostringstream trace_stream;
  const std::size_t workers =
      config.threads > 0 ? config.threads : DefaultWorkerCount();
  ParallelFor(trials, workers, [&](std::size_t t) {
    const std::uint64_t seed = DeriveSeed(config.seed, t);
    const bool traced = trace != nullptr && t == 0;
    const SpreadTrialResult result =
        RunSpreadTrial(net.sampler, config.time_model, config.sync_semantics,
                       seed, traced ? &trace_stream : nullptr);
    TrialRecord& record = records[t];
    record.trial_index = t;
    record.seed = seed;
    record.topology = topology;
    record.node_count = net.graph.node_count();
    record.time_model = config.time_model;
    record.completion_time = result.completion_time;
    record.events = result.events;
  });
  if (trace != nullptr) *trace = trace_stream.str();
  return records;
}

ExperimentOutput RunCompute(const ExperimentConfig& config) {
  const Network net = MakeNetwork(config.topology);
  const std::size_t n = net.graph.node_count();
  CompInputs inputs;
  inputs.y = ResolveInputs(config.f_kind, n, config.inputs, config.f_table);
  inputs.r = config.r.value_or(ChooseR(config.epsilon, config.delta));
  CompOptions options;
  options.time_model = config.time_model;
  options.sync_semantics = config.sync_semantics;
  options.minima_path = config.minima_path;
  options.capacity = config.capacity;

  const auto trials = static_cast<std::size_t>(config.trials);
  std::vector<TrialRecord> records(trials);
  const std::string topology = DescribeTopology(config.topology);
  const std::size_t workers =
      config.threads > 0 ? config.threads : DefaultWorkerCount();
  ParallelFor(trials, workers, [&](std::size_t t) {
    const std::uint64_t seed = DeriveSeed(config.seed, t);
    const CompOutcome outcome = RunComp(net.sampler, inputs, options, seed);
    TrialRecord& record = records[t];
    record.trial_index = t;
    record.seed = seed;
    record.topology = topology;
    record.node_count = n;
    record.time_model = config.time_model;
    record.completion_time = outcome.completion_time;
    record.events = outcome.events;
    record.relative_errors = outcome.relative_errors;
    record.r = inputs.r;
    record.capacity = config.capacity;
  });

  ExperimentOutput output;
  json array = json::array();
  for (const auto& record : records) array.push_back(RecordToJson(record));
  output.json = array.dump(2) + "\n";

  std::vector<MetricsRow> rows;
  if (trials >= MinimumRecords(config.delta)) {
    MetricsRow row;
    row.topology = topology;
    row.node_count = n;
    row.time_model = config.time_model;
    row.statistic = "computing_time";
    row.quantile = 1.0 - config.delta;
    row.band = config.band;
    try {
      row.value = EmpiricalComputingTime(records, config.epsilon, config.delta);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kAllTrialsFailed) throw;
      row.value = std::numeric_limits<double>::infinity();
    }
    const auto phi = ReferenceConductance(config.topology, net.matrix,
                                          config.enumeration_cap);
    if (phi && config.minima_path == MinimaPath::kSpread) {
      row.prediction =
          static_cast<double>(CapacityTimeMultiplier(config.capacity, inputs.r)) *
          SpreadingTimePrediction(n, config.delta / 2.0, phi->value);
    }
    rows.push_back(row);
  }
  output.csv = FormatMetricsCsv(rows);
  return output;
}

ExperimentOutput RunSpread(const ExperimentConfig& config) {
  const Network net = MakeNetwork(config.topology);
  const std::size_t n = net.graph.node_count();
  ExperimentOutput output;
  const auto records = RunSpreadTrials(config, config.topology, net,
                                       config.trace ? &output.trace : nullptr);
  const double spreading_time = EmpiricalSpreadingTime(records, config.delta);
  const auto phi =
      ReferenceConductance(config.topology, net.matrix, config.enumeration_cap);

  json doc;
  doc["topology"] = DescribeTopology(config.topology);
  doc["n"] = n;
  doc["time_model"] = std::string(TimeModelName(config.time_model));
  doc["sync_semantics"] = std::string(SyncSemanticsName(config.sync_semantics));
  doc["trials"] = config.trials;
  doc["seed"] = config.seed;
  doc["delta"] = config.delta;
  doc["spreading_time"] = spreading_time;
  MetricsRow row{DescribeTopology(config.topology), n, config.time_model,
                 "spreading_time", 1.0 - config.delta, spreading_time, 0.0,
                 config.band};
  if (phi) {
    row.prediction = SpreadingTimePrediction(n, config.delta, phi->value);
    doc["conductance"] = phi->value;
    doc["conductance_method"] = std::string(ConductanceMethodName(phi->method));
    doc["prediction"] = row.prediction;
    doc["within_band"] = WithinBand(spreading_time, row.prediction, config.band);
  }
  json array = json::array();
  for (const auto& record : records) array.push_back(RecordToJson(record));
  doc["records"] = std::move(array);
  output.json = doc.dump(2) + "\n";
  const std::vector<MetricsRow> rows{row};
  output.csv = FormatMetricsCsv(rows);
  return output;
}

ExperimentOutput RunConductance(const ExperimentConfig& config) {
  const Graph graph = BuildTopology(config.topology);
  const TransitionMatrix matrix = MaxDegreeMatrix(graph);
  const std::size_t n = graph.node_count();
  ConductanceResult result;
  if (n <= config.enumeration_cap) {
    result = ConductanceExact(matrix, config.enumeration_cap);
  } else if (config.topology.kind == TopologyKind::kComplete) {
    result.value = ConductanceCompleteClosedForm(n);
    result.method = ConductanceMethod::kClosedForm;
    for (std::size_t i = 0; i < n / 2; ++i) result.argmin_set.push_back(i);
  } else {
    // Surfaces the enumeration's size-limit error.
    result = ConductanceExact(matrix, config.enumeration_cap);
  }
  json doc;
  doc["n"] = n;
  doc["method"] = std::string(ConductanceMethodName(result.method));
  doc["value"] = result.value;
  doc["argmin_set"] = result.argmin_set;
  doc["spectral_gap"] = n >= 2 ? json(SpectralGap(matrix).gap) : json(nullptr);
  ExperimentOutput output;
  output.json = doc.dump(2) + "\n";
  return output;
}

ExperimentOutput RunSweep(const ExperimentConfig& config) {
  std::vector<double> sizes;
  std::vector<double> statistic;
  std::vector<double> averaging;
  json predictions = json::array();
  std::vector<MetricsRow> rows;
  for (const std::size_t size : config.sizes) {
    const TopologySpec spec = WithSize(config.topology, size);
    const Network net = MakeNetwork(spec);
    const std::size_t n = net.graph.node_count();
    const auto records = RunSpreadTrials(config, spec, net, nullptr);
    const double time = EmpiricalSpreadingTime(records, config.delta);
    sizes.push_back(static_cast<double>(n));
    statistic.push_back(time);
    averaging.push_back(1.0 / SpectralGap(net.matrix).gap);
    MetricsRow row{DescribeTopology(spec), n, config.time_model, "spreading_time",
                   1.0 - config.delta, time, 0.0, config.band};
    const auto phi = ReferenceConductance(spec, net.matrix, config.enumeration_cap);
    if (phi) {
      row.prediction = SpreadingTimePrediction(n, config.delta, phi->value);
      predictions.push_back(row.prediction);
    } else {
      predictions.push_back(nullptr);
    }
    rows.push_back(row);
  }
  const ScalingReport report = ScalingFit(sizes, statistic, averaging);
  json doc;
  doc["topology"] = std::string(TopologyKindName(config.topology.kind));
  doc["time_model"] = std::string(TimeModelName(config.time_model));
  doc["sync_semantics"] = std::string(SyncSemanticsName(config.sync_semantics));
  doc["delta"] = config.delta;
  doc["trials"] = config.trials;
  doc["seed"] = config.seed;
  doc["sizes"] = report.sizes;
  doc["statistic"] = report.statistic;
  doc["slope"] = report.slope;
  doc["intercept"] = report.intercept;
  doc["prediction"] = predictions;
  doc["averaging_reference"] = report.reference;
  doc["averaging_reference_slope"] = report.reference_slope;
  ExperimentOutput output;
  output.json = doc.dump(2) + "\n";
  output.csv = FormatMetricsCsv(rows);
  return output;
}

}  // namespace

std::optional<TopologyKind> ParseTopologyKind(std::string_view text) {
  if (text == "complete") return TopologyKind::kComplete;
  if (text == "grid") return TopologyKind::kGrid;
  if (text == "ring") return TopologyKind::kRing;
  if (text == "path") return TopologyKind::kPath;
  if (text == "expander") return TopologyKind::kExpander;
  if (text == "file") return TopologyKind::kFile;
  return std::nullopt;
}

std::string_view TopologyKindName(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kComplete:
      return "complete";
    case TopologyKind::kGrid:
      return "grid";
    case TopologyKind::kRing:
      return "ring";
    case TopologyKind::kPath:
      return "path";
    case TopologyKind::kExpander:
      return "expander";
    case TopologyKind::kFile:
      return "file";
  }
  return "unknown";
}

std::vector<Violation> ValidateConfig(const ExperimentConfig& config) {
  std::vector<Violation> out;
  const bool needs_trials = config.command != Command::kConductance;
  if (needs_trials && config.trials < 1) {
    out.push_back({"trials", "trials must be >= 1"});
  }
  if (!InOpenUnit(config.epsilon)) {
    out.push_back({"epsilon", "epsilon must lie in (0,1)"});
  }
  if (!InOpenUnit(config.delta)) {
    out.push_back({"delta", "delta must lie in (0,1)"});
  }
  if (config.r && *config.r < 1) out.push_back({"r", "r must be >= 1"});
  if (!(config.band > 1.0)) out.push_back({"band", "band factor must be > 1"});

  if (config.command == Command::kSweep) {
    if (config.sizes.size() < 3) {
      out.push_back({"sizes", "sweep needs at least three sizes"});
    }
    for (std::size_t k = 1; k < config.sizes.size(); ++k) {
      if (config.sizes[k] <= config.sizes[k - 1]) {
        out.push_back({"sizes", "sizes must be strictly increasing"});
        break;
      }
    }
    if (config.topology.kind == TopologyKind::kFile) {
      out.push_back({"topology", "file topologies cannot be swept"});
    }
    for (const std::size_t size : config.sizes) {
      if (config.topology.kind == TopologyKind::kGrid &&
          !ExactRoot(size, config.topology.grid_d)) {
        out.push_back({"sizes", "size " + std::to_string(size) +
                                    " is not c^d for any side c >= 2"});
        continue;
      }
      CheckTopology(WithSize(config.topology, size), out);
    }
  } else {
    CheckTopology(config.topology, out);
  }

  if ((config.command == Command::kSpread || config.command == Command::kSweep) &&
      InOpenUnit(config.delta) && config.trials >= 1 &&
      static_cast<std::size_t>(config.trials) < MinimumRecords(config.delta)) {
    out.push_back({"trials", "a (1-delta) quantile needs trials >= ceil(10/delta) = " +
                                 std::to_string(MinimumRecords(config.delta))});
  }

  if (config.command == Command::kCompute) {
    if (config.f_kind != FunctionKind::kConstantOne && config.inputs.empty()) {
      out.push_back({"inputs", "f-kind " + std::string(FunctionKindName(config.f_kind)) +
                                   " needs node inputs"});
    }
    if (config.f_kind == FunctionKind::kIdentity) {
      for (std::size_t i = 0; i < config.inputs.size(); ++i) {
        if (!(config.inputs[i] >= 1.0)) {
          out.push_back({"inputs", "y_" + std::to_string(i) + " = " +
                                       Str(config.inputs[i]) +
                                       " violates f_i(x) >= 1"});
        }
      }
    }
    if (config.f_kind == FunctionKind::kUserTable) {
      for (const auto& [x, y] : config.f_table) {
        if (!(y >= 1.0)) {
          out.push_back({"f-table", "f(" + Str(x) + ") = " + Str(y) +
                                        " violates f_i(x) >= 1"});
        }
      }
      for (const double x : config.inputs) {
        if (!config.f_table.contains(x)) {
          out.push_back({"f-table", "no table entry for input " + Str(x)});
        }
      }
    }
    const std::size_t n = config.topology.kind == TopologyKind::kGrid
                              ? 0
                              : config.topology.n;
    if (config.f_kind != FunctionKind::kConstantOne && n > 0 &&
        config.topology.kind != TopologyKind::kFile && !config.inputs.empty() &&
        config.inputs.size() != n) {
      out.push_back({"inputs", "expected " + std::to_string(n) +
                                   " input values, got " +
                                   std::to_string(config.inputs.size())});
    }
  }
  return out;
}

std::string DescribeTopology(const TopologySpec& spec) {
  switch (spec.kind) {
    case TopologyKind::kGrid:
      return "grid(d=" + std::to_string(spec.grid_d) +
             ",c=" + std::to_string(spec.grid_c) + ")";
    case TopologyKind::kExpander:
      return "expander(n=" + std::to_string(spec.n) +
             ",degree=" + std::to_string(spec.degree) +
             ",seed=" + std::to_string(spec.graph_seed) + ")";
    case TopologyKind::kFile:
      return "file";
    default:
      return std::string(TopologyKindName(spec.kind)) + "(n=" +
             std::to_string(spec.n) + ")";
  }
}

Graph BuildTopology(const TopologySpec& spec) {
  switch (spec.kind) {
    case TopologyKind::kComplete:
      return BuildComplete(spec.n);
    case TopologyKind::kGrid:
      return BuildGrid(spec.grid_d, spec.grid_c);
    case TopologyKind::kRing:
      return BuildRing(spec.n);
    case TopologyKind::kPath:
      return BuildPath(spec.n);
    case TopologyKind::kExpander:
      return BuildRandomRegular(spec.n, spec.degree, spec.graph_seed);
    case TopologyKind::kFile:
      return ParseEdgeList(spec.edge_list_text);
  }
  throw Error(ErrorCode::kInvalidParameter, "unknown topology");
}

std::optional<ConductanceResult> ReferenceConductance(const TopologySpec& spec,
                                                      const TransitionMatrix& matrix,
                                                      std::size_t cap) {
  const std::size_t n = matrix.size();
  if (n < 2) return std::nullopt;
  if (spec.kind == TopologyKind::kComplete) {
    ConductanceResult result;
    result.value = ConductanceCompleteClosedForm(n);
    result.method = ConductanceMethod::kClosedForm;
    for (std::size_t i = 0; i < n / 2; ++i) result.argmin_set.push_back(i);
    return result;
  }
  if (n <= cap) return ConductanceExact(matrix, cap);
  if (spec.kind == TopologyKind::kGrid) {
    ConductanceResult result;
    result.value = GridConductanceLowerBound(spec.grid_d, spec.grid_c);
    result.method = ConductanceMethod::kClosedForm;
    return result;
  }
  return std::nullopt;
}

ExperimentOutput RunExperiment(const ExperimentConfig& config) {
  switch (config.command) {
    case Command::kCompute:
      return RunCompute(config);
    case Command::kSpread:
      return RunSpread(config);
    case Command::kConductance:
      return RunConductance(config);
    case Command::kSweep:
      return RunSweep(config);
  }
  throw Error(ErrorCode::kInvalidParameter, "unknown command");
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameter:
    case ErrorCode::kParseError:
    case ErrorCode::kDisconnected:
    case ErrorCode::kSelfLoop:
    case ErrorCode::kDuplicateEdge:
    case ErrorCode::kDimensionMismatch:
      return 2;
    case ErrorCode::kGenerationFailure:
    case ErrorCode::kSizeLimit:
    case ErrorCode::kNumericalFailure:
    case ErrorCode::kInvalidState:
    case ErrorCode::kInsufficientRecords:
    case ErrorCode::kAllTrialsFailed:
      return 3;
    case ErrorCode::kIoError:
      return 4;
  }
  return 3;
}

std::size_t DefaultWorkerCount() {
  if (const char* env = std::getenv("GOSSIPCALC_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) {
      return static_cast<std::size_t>(value);
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void ParallelFor(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& body) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t t = 0; t < count; ++t) body(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::size_t failed_index = count;
  std::exception_ptr failure;
  auto work = [&] {
    for (std::size_t t = next++; t < count; t = next++) {
      try {
        body(t);
      } catch (...) {
        std::lock_guard lock(mutex);
        // Keep the lowest failing index so the reported error is
        // independent of scheduling.
        if (t < failed_index) {
          failed_index = t;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace gossipcalc
