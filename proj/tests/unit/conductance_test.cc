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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gossipcalc/error.h"
#include "gossipcalc/graph.h"

namespace gossipcalc {
namespace {

// Oracle: recursive subset enumeration on the dense matrix, independent of
// the bitmask walk in ConductanceExact.
double BruteForceConductance(const TransitionMatrix& p) {
  const std::size_t n = p.size();
  const auto dense = p.ToDense();
  double best = 2.0;
  std::vector<bool> in(n, false);
  auto visit = [&](auto&& self, std::size_t next, std::size_t size) -> void {
    if (size > 0) {
      double cut = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!in[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!in[j]) cut += dense[i * n + j];
        }
      }
      best = std::min(best, cut / static_cast<double>(size));
    }
    if (size == n / 2) return;
    for (std::size_t k = next; k < n; ++k) {
      in[k] = true;
      self(self, k + 1, size + 1);
      in[k] = false;
    }
  };
  visit(visit, 0, 0);
  return best;
}

// Oracle: second-largest eigenvalue from a dense symmetric eigensolver.
double DenseSecondEigenvalue(const TransitionMatrix& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  const auto dense = p.ToDense();
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = dense[i * n + j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  return solver.eigenvalues()(n - 2);  // ascending order
}

std::vector<Graph> SmallFamilies() {
  std::vector<Graph> out;
  for (std::size_t n = 2; n <= 12; ++n) {
    out.push_back(BuildComplete(n));
    out.push_back(BuildPath(n));
    if (n >= 3) out.push_back(BuildRing(n));
  }
  out.push_back(BuildRing(16));
  out.push_back(BuildPath(16));
  out.push_back(BuildGrid(2, 3));
  out.push_back(BuildGrid(2, 4));
  out.push_back(BuildGrid(4, 2));
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    out.push_back(BuildRandomRegular(12, 3, seed));
    out.push_back(BuildRandomRegular(16, 4, seed));
  }
  return out;
}

TEST(ConductanceTest, Examples) {
  const auto k4 = ConductanceExact(MaxDegreeMatrix(BuildComplete(4)));
  EXPECT_NEAR(k4.value, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(k4.argmin_set.size(), 2u);
  EXPECT_EQ(k4.method, ConductanceMethod::kEnumeration);

  const auto ring = ConductanceExact(MaxDegreeMatrix(BuildRing(4)));
  EXPECT_EQ(ring.value, 0.5);
  // Smallest bitmask among the optimal adjacent pairs is {0, 1}.
  EXPECT_EQ(ring.argmin_set, (std::vector<std::size_t>{0, 1}));
}

TEST(ConductanceTest, MatchesIndependentEnumeration) {
  for (const Graph& g : SmallFamilies()) {
    const TransitionMatrix p = MaxDegreeMatrix(g);
    const auto result = ConductanceExact(p);
    EXPECT_NEAR(result.value, BruteForceConductance(p), 1e-12);
    EXPECT_GT(result.value, 0.0);
    EXPECT_LE(result.value, 1.0);
    ASSERT_FALSE(result.argmin_set.empty());
    EXPECT_LE(result.argmin_set.size(), g.node_count() / 2);
    EXPECT_EQ(CutRatio(p, result.argmin_set), result.value);
  }
}

TEST(ConductanceTest, CompleteGraphClosedForm) {
  EXPECT_NEAR(ConductanceCompleteClosedForm(4), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(ConductanceCompleteClosedForm(11), 0.6, 1e-15);
  for (std::size_t n = 2; n <= 12; ++n) {
    EXPECT_NEAR(ConductanceExact(MaxDegreeMatrix(BuildComplete(n))).value,
                ConductanceCompleteClosedForm(n), 1e-12)
        << n;
  }
  EXPECT_NEAR(ConductanceCompleteClosedForm(1'000'001), 0.500001, 1e-15);
  EXPECT_THROW(ConductanceCompleteClosedForm(1), Error);
}

TEST(ConductanceTest, GridFloor) {
  EXPECT_DOUBLE_EQ(GridConductanceLowerBound(2, 4), 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(GridConductanceLowerBound(1, 8), 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(GridConductanceLowerBound(2, 3), 1.0 / 12.0);
  for (const auto [d, c] : {std::pair{2, 4}, std::pair{1, 8}, std::pair{2, 3}}) {
    const double exact = ConductanceExact(MaxDegreeMatrix(BuildGrid(d, c))).value;
    EXPECT_LE(GridConductanceLowerBound(d, c), exact);
  }
}

TEST(ConductanceTest, SizeCap) {
  const TransitionMatrix p = MaxDegreeMatrix(BuildRing(21));
  try {
    ConductanceExact(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeLimit);
  }
  EXPECT_NO_THROW(ConductanceExact(p, 21));
}

TEST(ConductanceTest, AddingEdgeWithFixedMaxDegreeNeverLowersConductance) {
  // Path -> ring keeps the maximum degree at 2.
  for (std::size_t n = 3; n <= 14; ++n) {
    EXPECT_LE(ConductanceExact(MaxDegreeMatrix(BuildPath(n))).value,
              ConductanceExact(MaxDegreeMatrix(BuildRing(n))).value + 1e-12);
  }
  // Joining two corners of a 4x4 grid keeps the maximum degree at 4.
  const Graph grid = BuildGrid(2, 4);
  auto edges = grid.edges();
  edges.emplace_back(0, 15);
  const Graph extra(16, edges);
  ASSERT_EQ(extra.max_degree(), grid.max_degree());
  EXPECT_LE(ConductanceExact(MaxDegreeMatrix(grid)).value,
            ConductanceExact(MaxDegreeMatrix(extra)).value + 1e-12);
}

TEST(SpectralGapTest, Examples) {
  const auto k4 = SpectralGap(MaxDegreeMatrix(BuildComplete(4)));
  EXPECT_NEAR(k4.second_eigenvalue, -1.0 / 3.0, 1e-9);
  EXPECT_EQ(k4.gap, 1.0);

  const auto ring4 = SpectralGap(MaxDegreeMatrix(BuildRing(4)));
  EXPECT_NEAR(ring4.second_eigenvalue, 0.0, 1e-9);
  EXPECT_NEAR(ring4.gap, 1.0, 1e-9);

  const auto ring16 = SpectralGap(MaxDegreeMatrix(BuildRing(16)));
  EXPECT_NEAR(ring16.second_eigenvalue, std::cos(std::numbers::pi / 8.0), 1e-9);
  EXPECT_NEAR(ring16.gap, 0.07612046748871326, 1e-9);
}

TEST(SpectralGapTest, MatchesDenseEigensolver) {
  std::vector<Graph> graphs = SmallFamilies();
  graphs.push_back(BuildGrid(2, 8));
  graphs.push_back(BuildRandomRegular(40, 3, 9));
  for (const Graph& g : graphs) {
    const TransitionMatrix p = MaxDegreeMatrix(g);
    EXPECT_NEAR(SpectralGap(p).second_eigenvalue, DenseSecondEigenvalue(p), 1e-8)
        << g.node_count();
  }
}

TEST(SpectralGapTest, CheegerBracket) {
  for (const Graph& g : SmallFamilies()) {
    const TransitionMatrix p = MaxDegreeMatrix(g);
    const double phi = ConductanceExact(p).value;
    const double gap = SpectralGap(p).gap;
    EXPECT_GE(gap, phi * phi / 2.0 - 1e-12);
    EXPECT_LE(gap, 2.0 * phi + 1e-12);
  }
}

TEST(SpectralGapTest, IterationCapRaisesNumericalFailure) {
  const TransitionMatrix p = MaxDegreeMatrix(BuildPath(40));
  try {
    SpectralGap(p, 1e-12, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNumericalFailure);
  }
}

}  // namespace
}  // namespace gossipcalc
