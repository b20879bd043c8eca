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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "gossipcalc/error.h"
#include "gossipcalc/graph.h"

namespace gossipcalc {
namespace {

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIoError;
}

TEST(ChooseRTest, Examples) {
  EXPECT_EQ(ChooseR(0.2, 0.1), 1107u);
  EXPECT_EQ(ChooseR(0.1, 0.01), 7190u);
  // eps -> 1 leaves ceil(12 ln(4/delta)) = ceil(44.27).
  EXPECT_EQ(ChooseR(1.0 - 1e-9, 0.1), 45u);
  EXPECT_EQ(CodeOf([] { ChooseR(0.0, 0.1); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { ChooseR(1.0, 0.1); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { ChooseR(0.2, 1.0); }), ErrorCode::kInvalidParameter);
}

TEST(VariateTest, InverseCdf) {
  EXPECT_DOUBLE_EQ(ExponentialFromUniform(std::exp(-1.0), 1.0), 1.0);
  EXPECT_EQ(ExponentialFromUniform(1.0, 3.0), 0.0);
}

TEST(VariateTest, DoublingRatesHalvesEveryVariate) {
  CompInputs base{{1.0, 2.5, 7.0}, 50};
  CompInputs doubled{{2.0, 5.0, 14.0}, 50};
  Rng a(11), b(11);
  const auto wa = SampleVariates(base, a);
  const auto wb = SampleVariates(doubled, b);
  ASSERT_EQ(wa.values.size(), wb.values.size());
  for (std::size_t k = 0; k < wa.values.size(); ++k) {
    EXPECT_EQ(wb.values[k], wa.values[k] / 2.0);
    EXPECT_GT(wa.values[k], 0.0);
    EXPECT_TRUE(std::isfinite(wa.values[k]));
  }
}

TEST(VariateTest, MeanOfRateFiveVariates) {
  constexpr std::uint64_t kCount = 1'000'000;
  CompInputs inputs{{5.0}, kCount};
  Rng rng(5);
  const auto w = SampleVariates(inputs, rng);
  const double mean = std::accumulate(w.values.begin(), w.values.end(), 0.0) / kCount;
  EXPECT_NEAR(mean, 0.2, 5 * 0.2 / std::sqrt(double{kCount}));
}

TEST(OracleMinTest, Examples) {
  const std::vector<std::vector<double>> one{{0.5, 0.25}};
  EXPECT_EQ(OracleMin(one), one[0]);
  const std::vector<std::vector<double>> two{{3.0, 1.0}, {2.0, 4.0}};
  EXPECT_EQ(OracleMin(two), (std::vector<double>{2.0, 1.0}));
  const std::vector<std::vector<double>> ragged{{3.0, 1.0}, {2.0}};
  EXPECT_EQ(CodeOf([&] { OracleMin(ragged); }), ErrorCode::kDimensionMismatch);
}

TEST(OracleMinTest, MinimumOfExponentialsHasSummedRate) {
  constexpr std::uint64_t kReps = 100'000;
  CompInputs inputs{{1.0, 2.0, 3.0}, kReps};
  Rng rng(6);
  const auto minima = OracleMin(SampleVariates(inputs, rng));
  double mean = 0.0;
  for (const double w : minima) mean += w;
  mean /= kReps;
  EXPECT_NEAR(mean, 1.0 / 6.0, 5 * (1.0 / 6.0) / std::sqrt(double{kReps}));
}

TEST(EstimateTest, Examples) {
  EXPECT_EQ(Estimate(std::vector<double>{0.5, 0.5}), 2.0);
  EXPECT_EQ(Estimate(std::vector<double>{0.25}), 4.0);
  const std::vector<double> w{0.3, 0.7, 1.1, 0.05};
  std::vector<double> scaled;
  for (const double v : w) scaled.push_back(3.0 * v);
  EXPECT_NEAR(Estimate(scaled), Estimate(w) / 3.0, 1e-15);
  EXPECT_EQ(CodeOf([] { Estimate(std::vector<double>{0.5, 0.0}); }), ErrorCode::kInvalidState);
  EXPECT_EQ(CodeOf([] { Estimate(std::vector<double>{-1.0}); }), ErrorCode::kInvalidState);
  EXPECT_EQ(CodeOf([] { Estimate(std::vector<double>{}); }), ErrorCode::kInvalidState);
}

TEST(InputsTest, ResolveAndValidate) {
  EXPECT_EQ(ResolveInputs(FunctionKind::kConstantOne, 3, {}), (std::vector<double>{1, 1, 1}));
  const std::vector<double> raw{2.0, 3.0};
  EXPECT_EQ(ResolveInputs(FunctionKind::kIdentity, 2, raw), raw);
  const std::map<double, double> table{{2.0, 10.0}, {3.0, 1.5}};
  EXPECT_EQ(ResolveInputs(FunctionKind::kUserTable, 2, raw, table),
            (std::vector<double>{10.0, 1.5}));
  const std::vector<double> low{0.5, 3.0};
  EXPECT_EQ(CodeOf([&] { ResolveInputs(FunctionKind::kIdentity, 2, low); }),
            ErrorCode::kInvalidParameter);
  const std::vector<double> missing{4.0, 3.0};
  EXPECT_EQ(CodeOf([&] { ResolveInputs(FunctionKind::kUserTable, 2, missing, table); }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([&] { ResolveInputs(FunctionKind::kIdentity, 3, raw); }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { ValidateInputs({{1.0}, 0}); }), ErrorCode::kInvalidParameter);
}

TEST(RunCompTest, SingleNodeConcentrates) {
  const PartnerSampler sampler(MaxDegreeMatrix(Graph(1, {})));
  const auto outcome = RunComp(sampler, {{7.0}, 1'000'000}, {}, 3);
  ASSERT_EQ(outcome.estimates.size(), 1u);
  EXPECT_NEAR(outcome.estimates[0], 7.0, 0.07);
  EXPECT_EQ(outcome.completion_time, 0.0);
}

TEST(RunCompTest, OraclePathEstimatesAreIdentical) {
  const PartnerSampler sampler(MaxDegreeMatrix(BuildRing(32)));
  CompOptions options;
  options.minima_path = MinimaPath::kOracle;
  std::vector<double> y(32);
  for (std::size_t i = 0; i < 32; ++i) y[i] = 1.0 + static_cast<double>(i % 5);
  const auto outcome = RunComp(sampler, {y, 200}, options, 8);
  EXPECT_TRUE(outcome.minima_exact);
  for (const double e : outcome.estimates) EXPECT_EQ(e, outcome.estimates[0]);
  for (const double e : outcome.relative_errors) EXPECT_EQ(e, outcome.relative_errors[0]);
  EXPECT_EQ(outcome.truth, std::accumulate(y.begin(), y.end(), 0.0));
}

TEST(RunCompTest, CountingOnCompleteGraph) {
  const PartnerSampler sampler(MaxDegreeMatrix(BuildComplete(64)));
  const std::uint64_t r = ChooseR(0.2, 0.1);
  ASSERT_EQ(r, 1107u);
  const CompInputs inputs{std::vector<double>(64, 1.0), r};
  int good = 0;
  constexpr int kTrials = 200;
  for (int t = 0; t < kTrials; ++t) {
    const auto outcome = RunComp(sampler, inputs, {}, DeriveSeed(2024, t));
    EXPECT_GT(outcome.completion_time, 0.0);
    good += outcome.MaxRelativeError() <= 0.4;
  }
  EXPECT_GE(good, 0.9 * kTrials);
}

TEST(RunCompTest, SpreadPathMatchesOracleAtCompletion) {
  std::vector<double> y{1.0, 4.0, 2.5, 9.0, 1.0, 3.0, 6.0, 2.0, 1.5};
  for (const auto model : {TimeModel::kAsynchronous, TimeModel::kSynchronous}) {
    for (const auto semantics : {SyncSemantics::kSerialized, SyncSemantics::kSnapshot}) {
      const PartnerSampler sampler(MaxDegreeMatrix(BuildGrid(2, 3)));
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CompOptions spread{model, semantics, MinimaPath::kSpread, CapacityMode::kInfinite};
        CompOptions oracle = spread;
        oracle.minima_path = MinimaPath::kOracle;
        const auto a = RunComp(sampler, {y, 64}, spread, seed);
        const auto b = RunComp(sampler, {y, 64}, oracle, seed);
        for (const double e : a.estimates) ASSERT_EQ(e, b.estimates[0]);
      }
    }
  }
}

TEST(RunCompTest, UnitCapacityScalesTimeByR) {
  const PartnerSampler sampler(MaxDegreeMatrix(BuildRing(10)));
  CompOptions infinite;
  CompOptions unit;
  unit.capacity = CapacityMode::kUnit;
  const CompInputs inputs{std::vector<double>(10, 1.0), 25};
  const auto a = RunComp(sampler, inputs, infinite, 4);
  const auto b = RunComp(sampler, inputs, unit, 4);
  EXPECT_EQ(a.spreading_time, b.spreading_time);
  EXPECT_EQ(a.completion_time, a.spreading_time);
  EXPECT_EQ(b.completion_time, 25.0 * b.spreading_time);
}

TEST(RunCompTest, EstimatesScaleWithInputs) {
  Rng draw(12);
  std::vector<double> y(20);
  for (double& v : y) v = 1.0 + 9.0 * draw.UniformClosedOpen();
  std::vector<double> scaled;
  for (const double v : y) scaled.push_back(3.0 * v);
  const PartnerSampler sampler(MaxDegreeMatrix(BuildRing(20)));
  for (const auto path : {MinimaPath::kOracle, MinimaPath::kSpread}) {
    CompOptions options;
    options.minima_path = path;
    const auto a = RunComp(sampler, {y, 300}, options, 5);
    const auto b = RunComp(sampler, {scaled, 300}, options, 5);
    for (std::size_t i = 0; i < y.size(); ++i) {
      EXPECT_LT(std::abs(b.estimates[i] / a.estimates[i] - 3.0) / 3.0, 1e-12);
    }
  }
}

TEST(RunCompTest, InverseEstimateIsUnbiasedMeanOfExponentials) {
  const PartnerSampler sampler(MaxDegreeMatrix(BuildComplete(5)));
  const CompInputs inputs{{1.0, 2.0, 3.0, 1.0, 3.0}, 40};
  CompOptions options;
  options.minima_path = MinimaPath::kOracle;
  constexpr int kTrials = 5000;
  double mean = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    mean += 1.0 / RunComp(sampler, inputs, options, DeriveSeed(6, t)).estimates[0];
  }
  mean /= kTrials;
  const double y = 10.0;
  EXPECT_NEAR(mean, 1.0 / y, 5 * (1.0 / y) / std::sqrt(40.0 * kTrials));
}

TEST(RunCompTest, SizeMismatch) {
  const PartnerSampler sampler(MaxDegreeMatrix(BuildRing(5)));
  EXPECT_EQ(CodeOf([&] { RunComp(sampler, {{1.0, 1.0}, 4}, {}, 1); }),
            ErrorCode::kDimensionMismatch);
}

TEST(AccuracyTest, Examples) {
  const std::vector<double> fifty(50, 1.0);
  const auto report = AccuracyExperiment(fifty, 0.3, 200, 1000, 31);
  EXPECT_NEAR(report.bound, 2.0 * std::exp(-6.0), 1e-15);
  EXPECT_TRUE(report.WithinBound());

  const auto vacuous = AccuracyExperiment(fifty, 0.05, 50, 300, 32);
  EXPECT_GT(vacuous.bound, 1.0);
  EXPECT_TRUE(vacuous.WithinBound());
  EXPECT_GT(vacuous.rate, 0.0);

  // More repetitions drive the failure rate down.
  const auto few = AccuracyExperiment(fifty, 0.1, 10, 1000, 33);
  const auto many = AccuracyExperiment(fifty, 0.1, 1000, 1000, 33);
  EXPECT_GT(few.rate, many.rate);
  EXPECT_EQ(many.failures, 0);
}

}  // namespace
}  // namespace gossipcalc
