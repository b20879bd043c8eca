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
// Estimating y = sum_i y_i (every y_i >= 1) at every node. Each node draws r
// exponential variates of rate y_i; the component-wise minimum over all
// nodes is exponential of rate y, so r divided by the sum of the minima
// estimates y. The minima are found either centrally (the oracle path,
// which isolates estimator error) or by gossip with running-minimum
// vectors.

#ifndef GOSSIPCALC_COMP_H_
#define GOSSIPCALC_COMP_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gossipcalc/engine.h"
#include "gossipcalc/graph.h"
#include "gossipcalc/random.h"
#include "gossipcalc/spread.h"

namespace gossipcalc {

// ceil(12 eps^-2 ln(4/delta)): the repetition count that makes the
// estimator's failure probability at most delta/2. Both arguments must lie
// in (0, 1).
std::uint64_t ChooseR(double epsilon, double delta);

enum class FunctionKind { kIdentity, kConstantOne, kUserTable };

std::string_view FunctionKindName(FunctionKind kind);
std::optional<FunctionKind> ParseFunctionKind(std::string_view text);

// Maps raw node inputs to y_i = f_i(x_i). kConstantOne ignores `raw` (and
// counts the nodes); kIdentity uses x_i directly; kUserTable looks each x_i
// up in `table`. Throws kInvalidParameter on a missing table entry or a
// length mismatch, and when any resulting y_i < 1.
std::vector<double> ResolveInputs(FunctionKind kind, std::size_t node_count,
                                  std::span<const double> raw,
                                  const std::map<double, double>& table = {});

struct CompInputs {
  std::vector<double> y;
  std::uint64_t r = 1;

  double Total() const;
};

// Throws kInvalidParameter unless r >= 1, y is non-empty, and every y_i >= 1.
void ValidateInputs(const CompInputs& inputs);

// Node-major n x r table of W^i_l.
struct VariateTable {
  std::size_t node_count = 0;
  std::size_t r = 0;
  std::vector<double> values;

  std::span<const double> Row(std::size_t node) const {
    return {values.data() + node * r, r};
  }
};

// W^i_l = -ln(u) / y_i for u drawn uniformly from (0, 1], node by node.
VariateTable SampleVariates(const CompInputs& inputs, Rng& rng);

// Component-wise minimum over all nodes' vectors.
std::vector<double> OracleMin(const VariateTable& variates);
// Same, for separately held vectors; throws kDimensionMismatch when the
// lengths differ.
std::vector<double> OracleMin(std::span<const std::vector<double>> vectors);

// r / sum_l w_l. Throws kInvalidState on an empty vector or a non-positive
// (or non-finite) component.
double Estimate(std::span<const double> minima);

enum class MinimaPath { kOracle, kSpread };

std::string_view MinimaPathName(MinimaPath path);
std::optional<MinimaPath> ParseMinimaPath(std::string_view text);

struct CompOptions {
  TimeModel time_model = TimeModel::kAsynchronous;
  SyncSemantics sync_semantics = SyncSemantics::kSerialized;
  MinimaPath minima_path = MinimaPath::kSpread;
  CapacityMode capacity = CapacityMode::kInfinite;
};

struct CompOutcome {
  std::vector<double> estimates;
  double truth = 0.0;
  bool minima_exact = false;
  std::vector<double> relative_errors;
  // Time at which the minima converged everywhere, including the capacity
  // multiplier; 0 on the oracle path.
  double completion_time = 0.0;
  // Unscaled completion time of the mirrored spreading run.
  double spreading_time = 0.0;
  std::uint64_t events = 0;

  double MaxRelativeError() const;
};

// One COMP trial. Variates come from the stream seeded by `seed`; the gossip
// contacts from an independent stream derived from it.
CompOutcome RunComp(const PartnerSampler& sampler, const CompInputs& inputs,
                    const CompOptions& options, std::uint64_t seed);
CompOutcome RunComp(const TransitionMatrix& matrix, const CompInputs& inputs,
                    const CompOptions& options, std::uint64_t seed);

struct AccuracyReport {
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  double rate = 0.0;
  // 2 exp(-eps^2 r / 3); may exceed 1.
  double bound = 0.0;
  double slack = 0.0;

  bool WithinBound() const { return rate <= bound + slack; }
};

// Oracle-path trials counting those in which some node's estimate falls
// outside [(1 - 2 eps) y, (1 + 2 eps) y]. Trial t uses DeriveSeed(seed, t).
AccuracyReport AccuracyExperiment(std::span<const double> y, double epsilon,
                                  std::uint64_t r, std::int64_t trials,
                                  std::uint64_t seed);

}  // namespace gossipcalc

#endif  // GOSSIPCALC_COMP_H_
