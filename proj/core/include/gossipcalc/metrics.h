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

#ifndef GOSSIPCALC_METRICS_H_
#define GOSSIPCALC_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gossipcalc/engine.h"
#include "gossipcalc/spread.h"

namespace gossipcalc {

// Outcome of one simulated trial. Times are absolute: slots in the
// synchronous model, accumulated Poisson time in the asynchronous one.
struct TrialRecord {
  std::uint64_t trial_index = 0;
  std::uint64_t seed = 0;
  std::string topology;
  std::size_t node_count = 0;
  TimeModel time_model = TimeModel::kAsynchronous;
  double completion_time = 0.0;
  std::uint64_t events = 0;
  // Empty when COMP did not run (pure spreading trials).
  std::vector<double> relative_errors;
  std::uint64_t r = 0;
  CapacityMode capacity = CapacityMode::kInfinite;
};

// Smallest sample value v such that at most a delta fraction of the sample
// exceeds v: the element of rank ceil(N (1 - delta)) in ascending order.
// +inf entries are allowed and sort last.
double NearestRankQuantile(std::span<const double> values, double delta);

// Records needed before the (1 - delta) quantile is trusted: ceil(10/delta).
std::size_t MinimumRecords(double delta);

// (1 - delta) quantile of the completion times. Throws kInsufficientRecords
// below MinimumRecords(delta).
double EmpiricalSpreadingTime(std::span<const TrialRecord> records, double delta);

// (1 - delta) quantile of the time at which every node's estimate is within
// (1 +/- eps) y. Estimates do not change after the minima converge, so a
// trial contributes its completion time when its final errors are all
// <= eps and +inf otherwise. Throws kInsufficientRecords as above, and
// kAllTrialsFailed when the quantile is infinite.
double EmpiricalComputingTime(std::span<const TrialRecord> records,
                              double epsilon, double delta);

// (ln n + ln(1/delta)) / conductance.
double SpreadingTimePrediction(std::size_t n, double delta, double conductance);

inline constexpr double kDefaultBandFactor = 4.0;

// prediction / factor <= value <= prediction * factor.
bool WithinBand(double value, double prediction, double factor = kDefaultBandFactor);

struct ScalingReport {
  std::vector<double> sizes;
  std::vector<double> statistic;
  // Least-squares fit of log(statistic) = intercept + slope * log(n).
  double slope = 0.0;
  double intercept = 0.0;
  // Optional reference curve at the same sizes, fitted the same way.
  std::vector<double> reference;
  double reference_slope = 0.0;
};

// Least-squares slope of log(y) against log(x).
double LogLogSlope(std::span<const double> x, std::span<const double> y,
                   double* intercept = nullptr);

// Requires >= 3 strictly increasing sizes and positive statistics that are
// not all equal; throws kInvalidParameter otherwise.
ScalingReport ScalingFit(std::vector<double> sizes, std::vector<double> statistic,
                         std::vector<double> reference = {});

struct MetricsRow {
  std::string topology;
  std::size_t node_count = 0;
  TimeModel time_model = TimeModel::kAsynchronous;
  std::string statistic;
  // Quantile level, 1 - delta.
  double quantile = 0.0;
  double value = 0.0;
  double prediction = 0.0;
  double band = kDefaultBandFactor;
};

// Header plus one line per row:
// topology,n,model,statistic,quantile,value,prediction,band
std::string FormatMetricsCsv(std::span<const MetricsRow> rows);

}  // namespace gossipcalc

#endif  // GOSSIPCALC_METRICS_H_
