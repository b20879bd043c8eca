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

#include <benchmark/benchmark.h>

#include <vector>

#include "gossipcalc/comp.h"
#include "gossipcalc/conductance.h"
#include "gossipcalc/graph.h"
#include "gossipcalc/random.h"
#include "gossipcalc/spread.h"

namespace gossipcalc {
namespace {

void BM_SpreadCompleteAsync(benchmark::State& state) {
  const PartnerSampler sampler(MaxDegreeMatrix(BuildComplete(state.range(0))));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunSpreadTrial(sampler, TimeModel::kAsynchronous,
                                            SyncSemantics::kSerialized,
                                            DeriveSeed(1, trial++)));
  }
}
BENCHMARK(BM_SpreadCompleteAsync)->Arg(64)->Arg(256)->Arg(1024);

void BM_SpreadGridSync(benchmark::State& state) {
  const PartnerSampler sampler(MaxDegreeMatrix(BuildGrid(2, state.range(0))));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunSpreadTrial(sampler, TimeModel::kSynchronous,
                                            SyncSemantics::kSerialized,
                                            DeriveSeed(2, trial++)));
  }
}
BENCHMARK(BM_SpreadGridSync)->Arg(8)->Arg(16)->Arg(32);

void BM_ConductanceEnumeration(benchmark::State& state) {
  const TransitionMatrix matrix = MaxDegreeMatrix(BuildRing(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ConductanceExact(matrix));
}
BENCHMARK(BM_ConductanceEnumeration)->DenseRange(12, 20, 4);

void BM_SpectralGapGrid(benchmark::State& state) {
  const TransitionMatrix matrix = MaxDegreeMatrix(BuildGrid(2, state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(SpectralGap(matrix));
}
BENCHMARK(BM_SpectralGapGrid)->Arg(8)->Arg(16);

void BM_CompComplete(benchmark::State& state) {
  const std::size_t n = 128;
  const PartnerSampler sampler(MaxDegreeMatrix(BuildComplete(n)));
  const CompInputs inputs{std::vector<double>(n, 1.0),
                          static_cast<std::uint64_t>(state.range(0))};
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunComp(sampler, inputs, {}, DeriveSeed(3, trial++)));
  }
}
BENCHMARK(BM_CompComplete)->Arg(100)->Arg(1107);

}  // namespace
}  // namespace gossipcalc

BENCHMARK_MAIN();
