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

#include "gossipcalc/engine.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "gossipcalc/error.h"

namespace gossipcalc {

std::string_view TimeModelName(TimeModel model) {
  return model == TimeModel::kSynchronous ? "sync" : "async";
}

std::string_view SyncSemanticsName(SyncSemantics semantics) {
  return semantics == SyncSemantics::kSerialized ? "serialized" : "snapshot";
}

std::optional<TimeModel> ParseTimeModel(std::string_view text) {
  if (text == "sync") return TimeModel::kSynchronous;
  if (text == "async") return TimeModel::kAsynchronous;
  return std::nullopt;
}

std::optional<SyncSemantics> ParseSyncSemantics(std::string_view text) {
  if (text == "serialized") return SyncSemantics::kSerialized;
  if (text == "snapshot") return SyncSemantics::kSnapshot;
  return std::nullopt;
}

SimClock::SimClock(TimeModel model, std::size_t node_count, std::uint64_t seed)
    : model_(model), node_count_(node_count), rng_(seed) {
  if (node_count == 0) {
    throw Error(ErrorCode::kInvalidParameter, "clock needs at least one node");
  }
  if (model_ == TimeModel::kSynchronous) {
    event_.initiators.resize(node_count_);
  } else {
    event_.initiators.resize(1);
  }
}

const ActivationEvent& SimClock::NextEvent() {
  ++tick_;
  if (model_ == TimeModel::kAsynchronous) {
    event_.time += rng_.Exponential(static_cast<double>(node_count_));
    event_.initiators[0] = rng_.UniformIndex(node_count_);
    return event_;
  }
  event_.time = static_cast<double>(tick_);
  auto& order = event_.initiators;
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Fisher-Yates.
  for (std::size_t i = node_count_; i > 1; --i) {
    std::swap(order[i - 1], order[rng_.UniformIndex(i)]);
  }
  return event_;
}

ConcentrationReport ClockConcentrationCheck(std::size_t node_count,
                                            std::uint64_t ticks, double epsilon,
                                            std::int64_t trials,
                                            std::uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(ErrorCode::kInvalidParameter, "epsilon must lie in (0, 1/2)");
  }
  if (ticks < 1 || trials < 1) {
    throw Error(ErrorCode::kInvalidParameter,
                "concentration check needs k >= 1 and trials >= 1");
  }
  const double n = static_cast<double>(node_count);
  const double expected = static_cast<double>(ticks) / n;
  ConcentrationReport report;
  report.trials = trials;
  for (std::int64_t t = 0; t < trials; ++t) {
    SimClock clock(TimeModel::kAsynchronous, node_count,
                   DeriveSeed(seed, static_cast<std::uint64_t>(t)));
    for (std::uint64_t k = 0; k < ticks; ++k) clock.NextEvent();
    if (std::abs(clock.time() - expected) >= epsilon * expected) {
      ++report.violations;
    }
  }
  const double k = static_cast<double>(ticks);
  report.rate = static_cast<double>(report.violations) / static_cast<double>(trials);
  report.bound = 2.0 * std::exp(-epsilon * epsilon * k / 3.0);
  const double p = std::min(report.bound, 1.0);
  report.slack = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return report;
}

}  // namespace gossipcalc
