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

#include "gossipcalc/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gossipcalc/error.h"

namespace gossipcalc {
namespace {

// Guards ceil() against products such as 500 * 0.95 landing a hair above
// an integer.
constexpr double kRankSlack = 1e-9;

void CheckDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "delta must lie in (0,1)");
  }
}

void CheckRecordCount(std::size_t count, double delta) {
  const std::size_t needed = MinimumRecords(delta);
  if (count < needed) {
    throw Error(ErrorCode::kInsufficientRecords,
                "a (1 - " + std::to_string(delta) + ") quantile needs at least " +
                    std::to_string(needed) + " records, got " +
                    std::to_string(count));
  }
}

}  // namespace

double NearestRankQuantile(std::span<const double> values, double delta) {
  CheckDelta(delta);
  if (values.empty()) {
    throw Error(ErrorCode::kInsufficientRecords, "quantile of an empty sample");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(n * (1.0 - delta) - kRankSlack));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

std::size_t MinimumRecords(double delta) {
  CheckDelta(delta);
  return static_cast<std::size_t>(std::ceil(10.0 / delta - kRankSlack));
}

double EmpiricalSpreadingTime(std::span<const TrialRecord> records, double delta) {
  CheckRecordCount(records.size(), delta);
  std::vector<double> times;
  times.reserve(records.size());
  for (const auto& record : records) times.push_back(record.completion_time);
  return NearestRankQuantile(times, delta);
}

double EmpiricalComputingTime(std::span<const TrialRecord> records,
                              double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "epsilon must lie in (0,1)");
  }
  CheckRecordCount(records.size(), delta);
  std::vector<double> times;
  times.reserve(records.size());
  for (const auto& record : records) {
    if (record.relative_errors.empty()) {
      throw Error(ErrorCode::kInvalidParameter,
                  "record " + std::to_string(record.trial_index) +
                      " carries no estimates");
    }
    const bool ok = std::all_of(record.relative_errors.begin(),
                                record.relative_errors.end(),
                                [epsilon](double e) { return e <= epsilon; });
    times.push_back(ok ? record.completion_time
                       : std::numeric_limits<double>::infinity());
  }
  const double value = NearestRankQuantile(times, delta);
  if (std::isinf(value)) {
    throw Error(ErrorCode::kAllTrialsFailed,
                "more than a delta fraction of trials never reached the "
                "(1 +/- epsilon) band");
  }
  return value;
}

double SpreadingTimePrediction(std::size_t n, double delta, double conductance) {
  CheckDelta(delta);
  if (!(conductance > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "conductance must be positive");
  }
  return (std::log(static_cast<double>(n)) + std::log(1.0 / delta)) / conductance;
}

bool WithinBand(double value, double prediction, double factor) {
  return value >= prediction / factor && value <= prediction * factor;
}

double LogLogSlope(std::span<const double> x, std::span<const double> y,
                   double* intercept) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kInvalidParameter,
                "log-log fit needs two equally long series of length >= 2");
  }
  const double m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) {
      throw Error(ErrorCode::kInvalidParameter, "log-log fit needs positive data");
    }
    sx += std::log(x[k]);
    sy += std::log(y[k]);
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = std::log(x[k]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[k]) - my);
  }
  if (!(sxx > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "log-log fit needs distinct sizes");
  }
  const double slope = sxy / sxx;
  if (intercept != nullptr) *intercept = my - slope * mx;
  return slope;
}

ScalingReport ScalingFit(std::vector<double> sizes, std::vector<double> statistic,
                         std::vector<double> reference) {
  if (sizes.size() < 3 || statistic.size() != sizes.size()) {
    throw Error(ErrorCode::kInvalidParameter,
                "scaling fit needs at least three sizes with one statistic each");
  }
  for (std::size_t k = 1; k < sizes.size(); ++k) {
    if (!(sizes[k] > sizes[k - 1])) {
      throw Error(ErrorCode::kInvalidParameter, "sizes must be strictly increasing");
    }
  }
  if (std::all_of(statistic.begin(), statistic.end(),
                  [&](double v) { return v == statistic.front(); })) {
    throw Error(ErrorCode::kInvalidParameter, "statistic is constant across sizes");
  }
  ScalingReport report;
  report.slope = LogLogSlope(sizes, statistic, &report.intercept);
  if (!reference.empty()) {
    if (reference.size() != sizes.size()) {
      throw Error(ErrorCode::kInvalidParameter, "reference length mismatch");
    }
    report.reference_slope = LogLogSlope(sizes, reference);
  }
  report.sizes = std::move(sizes);
  report.statistic = std::move(statistic);
  report.reference = std::move(reference);
  return report;
}

std::string FormatMetricsCsv(std::span<const MetricsRow> rows) {
  std::ostringstream out;
  out.precision(17);
  out << "topology,n,model,statistic,quantile,value,prediction,band\n";
  for (const auto& row : rows) {
    out << row.topology << ',' << row.node_count << ','
        << TimeModelName(row.time_model) << ',' << row.statistic << ','
        << row.quantile << ',' << row.value << ',' << row.prediction << ','
        << row.band << '\n';
  }
  return out.str();
}

}  // namespace gossipcalc
