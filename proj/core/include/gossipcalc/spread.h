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
// Push-pull information spreading. A node that wakes up picks a partner from
// its row of P and both end up with the union of their message sets. The
// capacity-r variant carries one running-minimum vector per node instead of
// the message sets and replaces union by component-wise minimum.
//
// The merge rules (MergeUnion, MergeMin) see only the two nodes' local
// payloads. Node indices appear in the harness types below, which play the
// role of the network: they route a contact to the right pair of states.

#ifndef GOSSIPCALC_SPREAD_H_
#define GOSSIPCALC_SPREAD_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gossipcalc/engine.h"
#include "gossipcalc/graph.h"
#include "gossipcalc/random.h"

namespace gossipcalc {

// Opaque neighbor-sampling capability derived from one TransitionMatrix.
// Sample(i) returns j with probability P_ij (possibly i itself).
class PartnerSampler {
 public:
  explicit PartnerSampler(const TransitionMatrix& matrix);

  std::size_t node_count() const { return offsets_.size() - 1; }
  std::size_t Sample(std::size_t node, Rng& rng) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> columns_;
  std::vector<double> cumulative_;
};

struct Contact {
  std::size_t initiator;
  std::size_t partner;
};

// Push-pull merge of two message sets encoded as equal-length bit blocks.
void MergeUnion(std::span<std::uint64_t> a, std::span<std::uint64_t> b);

// Component-wise minimum written back to both vectors.
void MergeMin(std::span<double> a, std::span<double> b);

// Message sets M_i(t), one bit per message origin. Node i starts with {m_i}.
class SpreadState {
 public:
  explicit SpreadState(std::size_t node_count);

  std::size_t node_count() const { return sizes_.size(); }
  std::size_t words_per_node() const { return words_; }

  // Push-pull exchange between the states of i and u; a no-op when u == i.
  void Exchange(std::size_t initiator, std::size_t partner);

  // All contacts of one slot read the states as of the slot's start.
  void ExchangeSnapshot(std::span<const Contact> contacts);

  bool Contains(std::size_t node, std::size_t origin) const;
  std::size_t MessageCount(std::size_t node) const { return sizes_[node]; }
  std::size_t TotalMessageCount() const;
  std::vector<std::size_t> Messages(std::size_t node) const;
  std::span<const std::uint64_t> Bits(std::size_t node) const {
    return {bits_.data() + node * words_, words_};
  }

  // True iff every node holds every message.
  bool Complete() const { return full_nodes_ == sizes_.size(); }

 private:
  std::span<std::uint64_t> MutableBits(std::size_t node) {
    return {bits_.data() + node * words_, words_};
  }
  void Recount(std::size_t node);

  std::size_t words_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::size_t> sizes_;
  std::size_t full_nodes_ = 0;
  std::vector<std::uint64_t> snapshot_;
};

inline bool SpreadingComplete(const SpreadState& state) { return state.Complete(); }

// Running-minimum vectors w^i(t), each of dimension r.
class MinVectorState {
 public:
  // `initial` holds n*r values, node-major: w^i(0) = initial[i*r, (i+1)*r).
  MinVectorState(std::size_t node_count, std::size_t r, std::vector<double> initial);

  std::size_t node_count() const { return node_count_; }
  std::size_t dimension() const { return r_; }

  void Exchange(std::size_t initiator, std::size_t partner);
  void ExchangeSnapshot(std::span<const Contact> contacts);

  std::span<const double> Vector(std::size_t node) const {
    return {values_.data() + node * r_, r_};
  }

 private:
  std::span<double> MutableVector(std::size_t node) {
    return {values_.data() + node * r_, r_};
  }

  std::size_t node_count_;
  std::size_t r_;
  std::vector<double> values_;
  std::vector<double> snapshot_;
};

// Samples a partner for `initiator` and performs the exchange. Returns the
// partner.
std::size_t SpreadExchange(SpreadState& state, std::size_t initiator,
                           const PartnerSampler& sampler, Rng& rng);
std::size_t MinExchange(MinVectorState& state, std::size_t initiator,
                        const PartnerSampler& sampler, Rng& rng);

template <typename State>
void ApplyContacts(State& state, std::span<const Contact> contacts,
                   SyncSemantics semantics) {
  if (semantics == SyncSemantics::kSnapshot && contacts.size() > 1) {
    state.ExchangeSnapshot(contacts);
    return;
  }
  for (const auto& [initiator, partner] : contacts) {
    state.Exchange(initiator, partner);
  }
}

struct Round {
  double time = 0.0;
  std::vector<Contact> contacts;
};

// Couples a SimClock with partner selection: each call to Next() yields the
// time of the next activation and, for every initiator in activation order,
// the partner it contacts. Both draws come from the clock's single stream,
// so two processes built with the same seed produce identical rounds.
class ContactProcess {
 public:
  ContactProcess(const PartnerSampler& sampler, TimeModel model, std::uint64_t seed);

  const Round& Next();
  std::uint64_t tick() const { return clock_.tick(); }
  double time() const { return clock_.time(); }

 private:
  const PartnerSampler* sampler_;
  SimClock clock_;
  Round round_;
};

struct SpreadTrialResult {
  // Absolute time of the first event after which every node holds every
  // message; 0 for a single node.
  double completion_time = 0.0;
  std::uint64_t events = 0;
};

// Runs SPREAD until completion. When `trace` is set, writes one line per
// contact: "k t i u |M_i|" with |M_i| taken after the event.
SpreadTrialResult RunSpreadTrial(const PartnerSampler& sampler, TimeModel model,
                                 SyncSemantics semantics, std::uint64_t seed,
                                 std::ostream* trace = nullptr);

enum class CapacityMode { kInfinite, kUnit };

std::string_view CapacityModeName(CapacityMode mode);
std::optional<CapacityMode> ParseCapacityMode(std::string_view text);

// Time-axis factor for the min computation: 1 with links that carry r
// numbers per exchange, r when each exchange is spread over r unit slots.
std::uint64_t CapacityTimeMultiplier(CapacityMode mode, std::uint64_t r);

}  // namespace gossipcalc

#endif  // GOSSIPCALC_SPREAD_H_
