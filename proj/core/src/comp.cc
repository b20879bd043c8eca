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

#include "gossipcalc/comp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "gossipcalc/error.h"

namespace gossipcalc {
namespace {

// Keeps the contact stream of a trial independent of its variate stream.
constexpr std::uint64_t kContactStreamTag = 0x6a09e667f3bcc909ULL;

std::string FormatValue(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

std::uint64_t ChooseR(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "epsilon must lie in (0,1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "delta must lie in (0,1)");
  }
  const double r = std::ceil(12.0 / (epsilon * epsilon) * std::log(4.0 / delta));
  return static_cast<std::uint64_t>(r);
}

std::string_view FunctionKindName(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::kIdentity:
      return "identity";
    case FunctionKind::kConstantOne:
      return "constant-one";
    case FunctionKind::kUserTable:
      return "user-table";
  }
  return "unknown";
}

std::optional<FunctionKind> ParseFunctionKind(std::string_view text) {
  if (text == "identity") return FunctionKind::kIdentity;
  if (text == "constant-one") return FunctionKind::kConstantOne;
  if (text == "user-table") return FunctionKind::kUserTable;
  return std::nullopt;
}

std::vector<double> ResolveInputs(FunctionKind kind, std::size_t node_count,
                                  std::span<const double> raw,
                                  const std::map<double, double>& table) {
  std::vector<double> y;
  if (kind == FunctionKind::kConstantOne) {
    y.assign(node_count, 1.0);
  } else {
    if (raw.size() != node_count) {
      throw Error(ErrorCode::kInvalidParameter,
                  "expected " + std::to_string(node_count) +
                      " input values, got " + std::to_string(raw.size()));
    }
    y.reserve(node_count);
    for (const double x : raw) {
      if (kind == FunctionKind::kIdentity) {
        y.push_back(x);
        continue;
      }
      const auto it = table.find(x);
      if (it == table.end()) {
        throw Error(ErrorCode::kInvalidParameter,
                    "input value " + FormatValue(x) + " has no table entry");
      }
      y.push_back(it->second);
    }
  }
  ValidateInputs({y, 1});
  return y;
}

double CompInputs::Total() const {
  double total = 0.0;
  for (const double v : y) total += v;
  return total;
}

void ValidateInputs(const CompInputs& inputs) {
  if (inputs.r < 1) {
    throw Error(ErrorCode::kInvalidParameter, "r must be >= 1");
  }
  if (inputs.y.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "no node inputs");
  }
  for (std::size_t i = 0; i < inputs.y.size(); ++i) {
    if (!(inputs.y[i] >= 1.0) || !std::isfinite(inputs.y[i])) {
      throw Error(ErrorCode::kInvalidParameter,
                  "y_" + std::to_string(i) + " = " + FormatValue(inputs.y[i]) +
                      " violates f_i(x) >= 1");
    }
  }
}

VariateTable SampleVariates(const CompInputs& inputs, Rng& rng) {
  ValidateInputs(inputs);
  VariateTable table;
  table.node_count = inputs.y.size();
  table.r = static_cast<std::size_t>(inputs.r);
  table.values.resize(table.node_count * table.r);
  for (std::size_t i = 0; i < table.node_count; ++i) {
    const double rate = inputs.y[i];
    for (std::size_t l = 0; l < table.r; ++l) {
      table.values[i * table.r + l] = rng.Exponential(rate);
    }
  }
  return table;
}

std::vector<double> OracleMin(const VariateTable& variates) {
  if (variates.node_count == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "no vectors to minimize");
  }
  std::vector<double> minima(variates.Row(0).begin(), variates.Row(0).end());
  for (std::size_t i = 1; i < variates.node_count; ++i) {
    const auto row = variates.Row(i);
    for (std::size_t l = 0; l < variates.r; ++l) {
      minima[l] = std::min(minima[l], row[l]);
    }
  }
  return minima;
}

std::vector<double> OracleMin(std::span<const std::vector<double>> vectors) {
  if (vectors.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "no vectors to minimize");
  }
  std::vector<double> minima = vectors.front();
  for (const auto& v : vectors) {
    if (v.size() != minima.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "vector of length " + std::to_string(v.size()) +
                      " where " + std::to_string(minima.size()) + " expected");
    }
    for (std::size_t l = 0; l < v.size(); ++l) minima[l] = std::min(minima[l], v[l]);
  }
  return minima;
}

double Estimate(std::span<const double> minima) {
  if (minima.empty()) {
    throw Error(ErrorCode::kInvalidState, "estimate of an empty vector");
  }
  double sum = 0.0;
  for (const double w : minima) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidState,
                  "minimum estimate " + FormatValue(w) + " is not positive");
    }
    sum += w;
  }
  return static_cast<double>(minima.size()) / sum;
}

std::string_view MinimaPathName(MinimaPath path) {
  return path == MinimaPath::kOracle ? "oracle" : "spread";
}

std::optional<MinimaPath> ParseMinimaPath(std::string_view text) {
  if (text == "oracle") return MinimaPath::kOracle;
  if (text == "spread") return MinimaPath::kSpread;
  return std::nullopt;
}

double CompOutcome::MaxRelativeError() const {
  double worst = 0.0;
  for (const double e : relative_errors) worst = std::max(worst, e);
  return worst;
}

CompOutcome RunComp(const PartnerSampler& sampler, const CompInputs& inputs,
                    const CompOptions& options, std::uint64_t seed) {
  ValidateInputs(inputs);
  const std::size_t n = inputs.y.size();
  if (sampler.node_count() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "inputs for " + std::to_string(n) + " nodes on a " +
                    std::to_string(sampler.node_count()) + "-node network");
  }
  Rng variate_rng(seed);
  VariateTable variates = SampleVariates(inputs, variate_rng);

  CompOutcome outcome;
  outcome.truth = inputs.Total();
  outcome.estimates.resize(n);

  if (options.minima_path == MinimaPath::kOracle) {
    const double estimate = Estimate(OracleMin(variates));
    std::fill(outcome.estimates.begin(), outcome.estimates.end(), estimate);
    outcome.minima_exact = true;
  } else {
    MinVectorState minima(n, variates.r, std::move(variates.values));
    SpreadState mirror(n);
    ContactProcess process(sampler, options.time_model, Mix64(seed ^ kContactStreamTag));
    while (!mirror.Complete()) {
      const Round& round = process.Next();
      const std::span<const Contact> contacts(round.contacts);
      ApplyContacts(mirror, contacts, options.sync_semantics);
      ApplyContacts(minima, contacts, options.sync_semantics);
      outcome.spreading_time = round.time;
    }
    outcome.events = process.tick();
    for (std::size_t i = 0; i < n; ++i) {
      outcome.estimates[i] = Estimate(minima.Vector(i));
    }
    outcome.completion_time =
        outcome.spreading_time *
        static_cast<double>(CapacityTimeMultiplier(options.capacity, inputs.r));
  }

  outcome.relative_errors.reserve(n);
  for (const double estimate : outcome.estimates) {
    outcome.relative_errors.push_back(std::abs(estimate - outcome.truth) / outcome.truth);
  }
  return outcome;
}

CompOutcome RunComp(const TransitionMatrix& matrix, const CompInputs& inputs,
                    const CompOptions& options, std::uint64_t seed) {
  return RunComp(PartnerSampler(matrix), inputs, options, seed);
}

AccuracyReport AccuracyExperiment(std::span<const double> y, double epsilon,
                                  std::uint64_t r, std::int64_t trials,
                                  std::uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "epsilon must lie in (0,1)");
  }
  if (trials < 1) {
    throw Error(ErrorCode::kInvalidParameter, "trials must be >= 1");
  }
  const CompInputs inputs{std::vector<double>(y.begin(), y.end()), r};
  ValidateInputs(inputs);
  const double truth = inputs.Total();
  AccuracyReport report;
  report.trials = trials;
  for (std::int64_t t = 0; t < trials; ++t) {
    // Oracle path: every node holds the same estimate.
    Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(t)));
    const double estimate = Estimate(OracleMin(SampleVariates(inputs, rng)));
    if (std::abs(estimate - truth) > 2.0 * epsilon * truth) ++report.failures;
  }
  report.rate = static_cast<double>(report.failures) / static_cast<double>(trials);
  report.bound = 2.0 * std::exp(-epsilon * epsilon * static_cast<double>(r) / 3.0);
  const double p = std::min(report.bound, 1.0);
  report.slack = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return report;
}

}  // namespace gossipcalc
