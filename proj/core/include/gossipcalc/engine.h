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
// Time models. A SimClock turns a seeded stream into activation events: in
// the asynchronous model a single global rate-n Poisson clock wakes one
// uniformly chosen node per tick; in the synchronous model every node wakes
// once per unit-length slot.

#ifndef GOSSIPCALC_ENGINE_H_
#define GOSSIPCALC_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gossipcalc/random.h"

namespace gossipcalc {

enum class TimeModel { kSynchronous, kAsynchronous };

// How the exchanges of one synchronous slot compose. kSerialized applies
// them one after another in the slot's activation order, each reading its
// partner's current state; kSnapshot lets every exchange read the states as
// they were at the start of the slot.
enum class SyncSemantics { kSerialized, kSnapshot };

std::string_view TimeModelName(TimeModel model);
std::string_view SyncSemanticsName(SyncSemantics semantics);
std::optional<TimeModel> ParseTimeModel(std::string_view text);
std::optional<SyncSemantics> ParseSyncSemantics(std::string_view text);

struct ActivationEvent {
  double time = 0.0;
  // One node (asynchronous) or a permutation of all nodes (synchronous).
  std::vector<std::size_t> initiators;
};

class SimClock {
 public:
  SimClock(TimeModel model, std::size_t node_count, std::uint64_t seed);

  // Advances the clock and returns the next activation. The reference stays
  // valid until the following call.
  const ActivationEvent& NextEvent();

  TimeModel model() const { return model_; }
  std::size_t node_count() const { return node_count_; }
  // Number of events produced so far (clock ticks or slots).
  std::uint64_t tick() const { return tick_; }
  double time() const { return event_.time; }

  // The clock's stream, shared with partner selection so that a whole
  // trial is a function of one seed.
  Rng& rng() { return rng_; }

 private:
  TimeModel model_;
  std::size_t node_count_;
  Rng rng_;
  std::uint64_t tick_ = 0;
  ActivationEvent event_;
};

struct ConcentrationReport {
  std::int64_t trials = 0;
  std::int64_t violations = 0;
  double rate = 0.0;
  // 2 exp(-eps^2 k / 3).
  double bound = 0.0;
  // Three binomial standard deviations at p = min(bound, 1).
  double slack = 0.0;

  bool WithinBound() const { return rate <= bound + slack; }
};

// Runs `trials` asynchronous clocks for k ticks each and counts how often
// |C_k - k/n| >= eps k / n. Trial t uses DeriveSeed(seed, t).
ConcentrationReport ClockConcentrationCheck(std::size_t node_count,
                                            std::uint64_t ticks, double epsilon,
                                            std::int64_t trials,
                                            std::uint64_t seed);

}  // namespace gossipcalc

#endif  // GOSSIPCALC_ENGINE_H_
