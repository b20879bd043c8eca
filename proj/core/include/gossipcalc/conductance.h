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

#ifndef GOSSIPCALC_CONDUCTANCE_H_
#define GOSSIPCALC_CONDUCTANCE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gossipcalc/graph.h"

namespace gossipcalc {

enum class ConductanceMethod { kEnumeration, kClosedForm };

std::string_view ConductanceMethodName(ConductanceMethod method);

struct ConductanceResult {
  double value = 0.0;
  // One minimizing subset, as ascending node indices.
  std::vector<std::size_t> argmin_set;
  ConductanceMethod method = ConductanceMethod::kEnumeration;
};

inline constexpr std::size_t kDefaultEnumerationCap = 20;

// Sum of P_ij over i in `subset`, j outside it, divided by |subset|.
double CutRatio(const TransitionMatrix& matrix,
                std::span<const std::size_t> subset);

// Exact conductance: minimum CutRatio over all S with 0 < |S| <= n/2.
// Subsets are visited in increasing bitmask order and a later subset only
// replaces the incumbent when its ratio is smaller by more than 1e-12, so the
// reported set is the smallest bitmask among (numerical) ties. Throws
// kSizeLimit when n exceeds `cap` and kInvalidParameter when n < 2.
ConductanceResult ConductanceExact(const TransitionMatrix& matrix,
                                   std::size_t cap = kDefaultEnumerationCap);

// ceil(n/2) / (n-1): exact value for the complete graph's max-degree matrix.
double ConductanceCompleteClosedForm(std::size_t n);

// Heuristic floor 1/(2 d c) for the d-dimensional grid of side c. The true
// conductance is of this order; the constant is not sharp.
double GridConductanceLowerBound(std::size_t dimensions, std::size_t side);

inline constexpr double kSpectralTolerance = 1e-9;
inline constexpr std::int64_t kSpectralIterationCap = 1'000'000;

struct SpectralGapResult {
  // Second-largest eigenvalue (algebraic) of P.
  double second_eigenvalue = 0.0;
  // 1 - max(second_eigenvalue, 0).
  double gap = 0.0;
  std::int64_t iterations = 0;
};

// Power iteration on (I + P)/2 restricted to the complement of the uniform
// vector. The shift makes the spectrum non-negative so the dominant
// eigenvalue found is the second-largest one of P rather than the one of
// largest magnitude. Stops when the residual norm of the unit iterate falls
// below `tolerance`; throws kNumericalFailure after `iteration_cap` steps.
// Requires a symmetric matrix with n >= 2.
SpectralGapResult SpectralGap(const TransitionMatrix& matrix,
                              double tolerance = kSpectralTolerance,
                              std::int64_t iteration_cap = kSpectralIterationCap);

}  // namespace gossipcalc

#endif  // GOSSIPCALC_CONDUCTANCE_H_
