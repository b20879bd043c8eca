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

#include "gossipcalc/spread.h"

#include <algorithm>
#include <bit>
#include <ostream>
#include <string>
#include <utility>

#include "gossipcalc/error.h"

namespace gossipcalc {

PartnerSampler::PartnerSampler(const TransitionMatrix& matrix) {
  const std::size_t n = matrix.size();
  offsets_.reserve(n + 1);
  offsets_.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    double running = 0.0;
    for (const auto& [j, value] : matrix.row(i)) {
      running += value;
      columns_.push_back(j);
      cumulative_.push_back(running);
    }
    // Pin the last boundary so that every u in [0, 1) lands on an entry.
    cumulative_.back() = 1.0;
    offsets_.push_back(columns_.size());
  }
}

std::size_t PartnerSampler::Sample(std::size_t node, Rng& rng) const {
  const double u = rng.UniformClosedOpen();
  const auto first = cumulative_.begin() + static_cast<std::ptrdiff_t>(offsets_[node]);
  const auto last = cumulative_.begin() + static_cast<std::ptrdiff_t>(offsets_[node + 1]);
  auto it = std::upper_bound(first, last, u);
  if (it == last) --it;
  return columns_[static_cast<std::size_t>(it - cumulative_.begin())];
}

void MergeUnion(std::span<std::uint64_t> a, std::span<std::uint64_t> b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    a[w] |= b[w];
    b[w] = a[w];
  }
}

void MergeMin(std::span<double> a, std::span<double> b) {
  for (std::size_t l = 0; l < a.size(); ++l) {
    const double m = std::min(a[l], b[l]);
    a[l] = m;
    b[l] = m;
  }
}

SpreadState::SpreadState(std::size_t node_count)
    : words_((node_count + 63) / 64),
      bits_(node_count * words_, 0),
      sizes_(node_count, 1) {
  if (node_count == 0) {
    throw Error(ErrorCode::kInvalidParameter, "spread state needs nodes");
  }
  for (std::size_t i = 0; i < node_count; ++i) {
    bits_[i * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
  }
  full_nodes_ = node_count == 1 ? 1 : 0;
}

void SpreadState::Recount(std::size_t node) {
  const std::size_t n = sizes_.size();
  const bool was_full = sizes_[node] == n;
  std::size_t count = 0;
  for (const std::uint64_t w : Bits(node)) count += static_cast<std::size_t>(std::popcount(w));
  sizes_[node] = count;
  const bool is_full = count == n;
  if (is_full && !was_full) ++full_nodes_;
}

void SpreadState::Exchange(std::size_t initiator, std::size_t partner) {
  if (initiator == partner) return;
  MergeUnion(MutableBits(initiator), MutableBits(partner));
  Recount(initiator);
  const bool partner_was_full = sizes_[partner] == sizes_.size();
  sizes_[partner] = sizes_[initiator];
  if (!partner_was_full && sizes_[partner] == sizes_.size()) ++full_nodes_;
}

void SpreadState::ExchangeSnapshot(std::span<const Contact> contacts) {
  snapshot_ = bits_;
  for (const auto& [i, u] : contacts) {
    if (i == u) continue;
    for (std::size_t w = 0; w < words_; ++w) {
      bits_[i * words_ + w] |= snapshot_[u * words_ + w];
      bits_[u * words_ + w] |= snapshot_[i * words_ + w];
    }
  }
  for (const auto& [i, u] : contacts) {
    Recount(i);
    Recount(u);
  }
}

bool SpreadState::Contains(std::size_t node, std::size_t origin) const {
  return (bits_[node * words_ + origin / 64] >> (origin % 64)) & 1U;
}

std::size_t SpreadState::TotalMessageCount() const {
  std::size_t total = 0;
  for (const std::size_t s : sizes_) total += s;
  return total;
}

std::vector<std::size_t> SpreadState::Messages(std::size_t node) const {
  std::vector<std::size_t> out;
  out.reserve(sizes_[node]);
  const auto bits = Bits(node);
  for (std::size_t w = 0; w < words_; ++w) {
    for (std::uint64_t word = bits[w]; word != 0; word &= word - 1) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
    }
  }
  return out;
}

MinVectorState::MinVectorState(std::size_t node_count, std::size_t r,
                               std::vector<double> initial)
    : node_count_(node_count), r_(r), values_(std::move(initial)) {
  if (r_ == 0 || values_.size() != node_count_ * r_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "min-vector state expects n*r = " +
                    std::to_string(node_count_ * r_) + " values, got " +
                    std::to_string(values_.size()));
  }
}

void MinVectorState::Exchange(std::size_t initiator, std::size_t partner) {
  if (initiator == partner) return;
  MergeMin(MutableVector(initiator), MutableVector(partner));
}

void MinVectorState::ExchangeSnapshot(std::span<const Contact> contacts) {
  snapshot_ = values_;
  for (const auto& [i, u] : contacts) {
    if (i == u) continue;
    for (std::size_t l = 0; l < r_; ++l) {
      values_[i * r_ + l] = std::min(values_[i * r_ + l], snapshot_[u * r_ + l]);
      values_[u * r_ + l] = std::min(values_[u * r_ + l], snapshot_[i * r_ + l]);
    }
  }
}

std::size_t SpreadExchange(SpreadState& state, std::size_t initiator,
                           const PartnerSampler& sampler, Rng& rng) {
  const std::size_t partner = sampler.Sample(initiator, rng);
  state.Exchange(initiator, partner);
  return partner;
}

std::size_t MinExchange(MinVectorState& state, std::size_t initiator,
                        const PartnerSampler& sampler, Rng& rng) {
  const std::size_t partner = sampler.Sample(initiator, rng);
  state.Exchange(initiator, partner);
  return partner;
}

ContactProcess::ContactProcess(const PartnerSampler& sampler, TimeModel model,
                               std::uint64_t seed)
    : sampler_(&sampler), clock_(model, sampler.node_count(), seed) {}

const Round& ContactProcess::Next() {
  const ActivationEvent& event = clock_.NextEvent();
  round_.time = event.time;
  round_.contacts.clear();
  for (const std::size_t i : event.initiators) {
    round_.contacts.push_back({i, sampler_->Sample(i, clock_.rng())});
  }
  return round_;
}

SpreadTrialResult RunSpreadTrial(const PartnerSampler& sampler, TimeModel model,
                                 SyncSemantics semantics, std::uint64_t seed,
                                 std::ostream* trace) {
  SpreadState state(sampler.node_count());
  ContactProcess process(sampler, model, seed);
  SpreadTrialResult result;
  while (!state.Complete()) {
    const Round& round = process.Next();
    if (trace == nullptr) {
      ApplyContacts(state, std::span<const Contact>(round.contacts), semantics);
    } else {
      auto emit = [&](const Contact& c) {
        *trace << process.tick() << ' ' << round.time << ' ' << c.initiator
               << ' ' << c.partner << ' ' << state.MessageCount(c.initiator)
               << '\n';
      };
      if (semantics == SyncSemantics::kSnapshot && round.contacts.size() > 1) {
        state.ExchangeSnapshot(round.contacts);
        for (const auto& c : round.contacts) emit(c);
      } else {
        for (const auto& c : round.contacts) {
          state.Exchange(c.initiator, c.partner);
          emit(c);
        }
      }
    }
    result.completion_time = round.time;
  }
  result.events = process.tick();
  return result;
}

std::string_view CapacityModeName(CapacityMode mode) {
  return mode == CapacityMode::kInfinite ? "infinite" : "unit";
}

std::optional<CapacityMode> ParseCapacityMode(std::string_view text) {
  if (text == "infinite") return CapacityMode::kInfinite;
  if (text == "unit") return CapacityMode::kUnit;
  return std::nullopt;
}

std::uint64_t CapacityTimeMultiplier(CapacityMode mode, std::uint64_t r) {
  if (r < 1) {
    throw Error(ErrorCode::kInvalidParameter, "r must be >= 1");
  }
  return mode == CapacityMode::kInfinite ? 1 : r;
}

}  // namespace gossipcalc
