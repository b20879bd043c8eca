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

#include "gossipcalc/conductance.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "gossipcalc/error.h"
#include "gossipcalc/random.h"

namespace gossipcalc {
namespace {

// Both the enumeration and CutRatio sum in the same order (members
// ascending, row entries ascending) so that re-evaluating the argmin set
// reproduces the reported value bit for bit.
template <typename IsMember>
double CutMass(const TransitionMatrix& matrix, std::span<const std::size_t> members,
               IsMember is_member) {
  double mass = 0.0;
  for (const std::size_t i : members) {
    for (const auto& [j, value] : matrix.row(i)) {
      if (!is_member(j)) mass += value;
    }
  }
  return mass;
}

constexpr double kTieTolerance = 1e-12;

}  // namespace

std::string_view ConductanceMethodName(ConductanceMethod method) {
  switch (method) {
    case ConductanceMethod::kEnumeration:
      return "enumeration";
    case ConductanceMethod::kClosedForm:
      return "closed-form";
  }
  return "unknown";
}

double CutRatio(const TransitionMatrix& matrix,
                std::span<const std::size_t> subset) {
  if (subset.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "cut ratio of an empty set");
  }
  std::vector<std::size_t> members(subset.begin(), subset.end());
  std::sort(members.begin(), members.end());
  std::vector<bool> in_set(matrix.size(), false);
  for (const std::size_t i : members) in_set.at(i) = true;
  const double mass =
      CutMass(matrix, members, [&](std::size_t j) { return in_set[j]; });
  return mass / static_cast<double>(members.size());
}

ConductanceResult ConductanceExact(const TransitionMatrix& matrix,
                                   std::size_t cap) {
  const std::size_t n = matrix.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidParameter,
                "conductance needs at least two nodes");
  }
  if (n > cap || n >= 63) {
    throw Error(ErrorCode::kSizeLimit,
                "exact conductance enumerates 2^n subsets; n = " +
                    std::to_string(n) + " exceeds the cap of " +
                    std::to_string(cap) +
                    " (use the closed forms or lower bounds instead)");
  }
  const std::size_t half = n / 2;
  const std::uint64_t limit = std::uint64_t{1} << n;
  double best = 2.0;
  std::uint64_t best_mask = 0;
  std::vector<std::size_t> members;
  members.reserve(n);
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size > half) continue;
    members.clear();
    for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) {
      members.push_back(static_cast<std::size_t>(std::countr_zero(bits)));
    }
    const double mass = CutMass(matrix, members, [mask](std::size_t j) {
      return ((mask >> j) & 1U) != 0;
    });
    const double ratio = mass / static_cast<double>(size);
    if (ratio < best - kTieTolerance) {
      best = ratio;
      best_mask = mask;
    }
  }

  ConductanceResult result;
  result.value = best;
  result.method = ConductanceMethod::kEnumeration;
  for (std::size_t i = 0; i < n; ++i) {
    if ((best_mask >> i) & 1U) result.argmin_set.push_back(i);
  }
  return result;
}

double ConductanceCompleteClosedForm(std::size_t n) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidParameter,
                "complete graph conductance needs n >= 2");
  }
  return static_cast<double>((n + 1) / 2) / static_cast<double>(n - 1);
}

double GridConductanceLowerBound(std::size_t dimensions, std::size_t side) {
  if (dimensions < 1 || side < 2) {
    throw Error(ErrorCode::kInvalidParameter,
                "grid bound needs d >= 1 and c >= 2");
  }
  return 1.0 / (2.0 * static_cast<double>(dimensions) *
                static_cast<double>(side));
}

SpectralGapResult SpectralGap(const TransitionMatrix& matrix, double tolerance,
                              std::int64_t iteration_cap) {
  const std::size_t n = matrix.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidParameter,
                "spectral gap needs at least two nodes");
  }
  if (!matrix.IsSymmetric(1e-12)) {
    throw Error(ErrorCode::kInvalidParameter,
                "spectral gap requires a symmetric matrix");
  }

  auto deflate = [n](std::vector<double>& v) {
    double mean = 0.0;
    for (const double x : v) mean += x;
    mean /= static_cast<double>(n);
    for (double& x : v) x -= mean;
  };
  auto norm = [](const std::vector<double>& v) {
    double sum = 0.0;
    for (const double x : v) sum += x * x;
    return std::sqrt(sum);
  };
  // y = (v + P v) / 2
  auto apply = [&matrix, n](const std::vector<double>& v, std::vector<double>& y) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (const auto& [j, value] : matrix.row(i)) acc += value * v[j];
      y[i] = 0.5 * (v[i] + acc);
    }
  };

  // Fixed seed: a start vector with a component along the second
  // eigenvector almost surely, and reproducible results.
  Rng rng(0x5eed'9a9);
  std::vector<double> v(n);
  for (double& x : v) x = rng.UniformClosedOpen() - 0.5;
  deflate(v);
  double length = norm(v);
  for (double& x : v) x /= length;

  std::vector<double> y(n);
  for (std::int64_t iteration = 1; iteration <= iteration_cap; ++iteration) {
    apply(v, y);
    deflate(y);
    double mu = 0.0;
    for (std::size_t i = 0; i < n; ++i) mu += v[i] * y[i];
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - mu * v[i];
      residual += r * r;
    }
    residual = std::sqrt(residual);
    if (residual <= tolerance) {
      SpectralGapResult result;
      result.second_eigenvalue = 2.0 * mu - 1.0;
      result.gap = 1.0 - std::max(result.second_eigenvalue, 0.0);
      result.iterations = iteration;
      return result;
    }
    length = norm(y);
    if (!(length > 0.0) || !std::isfinite(length)) {
      throw Error(ErrorCode::kNumericalFailure,
                  "power iteration collapsed to the zero vector");
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = y[i] / length;
  }
  throw Error(ErrorCode::kNumericalFailure,
              "power iteration did not converge within " +
                  std::to_string(iteration_cap) + " iterations");
}

}  // namespace gossipcalc
