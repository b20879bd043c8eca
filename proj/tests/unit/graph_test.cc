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

#include "gossipcalc/graph.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "gossipcalc/conductance.h"
#include "gossipcalc/error.h"

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

// Every TransitionMatrix invariant, checked from the dense form.
void ExpectDoublyStochasticOn(const Graph& g, const TransitionMatrix& p) {
  const std::size_t n = g.node_count();
  const auto dense = p.ToDense();
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = dense[i * n + j];
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      EXPECT_EQ(v, dense[j * n + i]) << i << "," << j;
      if (i != j && !g.HasEdge(i, j)) EXPECT_EQ(v, 0.0);
      row += v;
      col += dense[j * n + i];
    }
    EXPECT_NEAR(row, 1.0, 1e-12);
    EXPECT_NEAR(col, 1.0, 1e-12);
  }
}

TEST(GraphTest, CompleteGraphs) {
  const Graph k2 = BuildComplete(2);
  ASSERT_EQ(k2.edge_count(), 1u);
  EXPECT_EQ(k2.edges()[0], (Graph::Edge{0, 1}));
  EXPECT_EQ(BuildComplete(4).edge_count(), 6u);
  const Graph k10 = BuildComplete(10);
  EXPECT_EQ(k10.edge_count(), 45u);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(k10.degree(i), 9u);
  EXPECT_EQ(CodeOf([] { BuildComplete(1); }), ErrorCode::kInvalidParameter);
}

TEST(GraphTest, GridCountsMatchCoordinateEnumeration) {
  EXPECT_EQ(BuildGrid(1, 4).edge_count(), 3u);
  const Graph g = BuildGrid(2, 3);
  EXPECT_EQ(g.node_count(), 9u);
  EXPECT_EQ(g.edge_count(), 12u);  // 2 * c * (c - 1)

  const Graph g4 = BuildGrid(2, 4);
  std::map<std::size_t, int> census;
  for (std::size_t i = 0; i < 16; ++i) ++census[g4.degree(i)];
  EXPECT_EQ(census[2], 4);   // corners
  EXPECT_EQ(census[3], 8);   // sides
  EXPECT_EQ(census[4], 4);   // interior
  EXPECT_EQ(g4.degree(0), 2u);
  EXPECT_EQ(g4.degree(5), 4u);
  EXPECT_EQ(g4.max_degree(), 4u);

  // Brute force: a, b adjacent iff their coordinates differ by one in
  // exactly one position.
  for (const auto [d, c] : {std::pair{3, 3}, std::pair{2, 5}, std::pair{4, 2}}) {
    const Graph grid = BuildGrid(d, c);
    std::size_t n = grid.node_count();
    std::size_t expected = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        int unit = 0, other = 0;
        std::size_t x = a, y = b;
        for (int k = 0; k < d; ++k) {
          const auto diff = std::abs(static_cast<long>(x % c) - static_cast<long>(y % c));
          if (diff == 1) ++unit;
          else if (diff != 0) ++other;
          x /= c;
          y /= c;
        }
        const bool adjacent = unit == 1 && other == 0;
        EXPECT_EQ(grid.HasEdge(a, b), adjacent);
        expected += adjacent;
      }
    }
    EXPECT_EQ(grid.edge_count(), expected);
    EXPECT_LE(grid.max_degree(), static_cast<std::size_t>(2 * d));
  }
}

TEST(GraphTest, GridRejectsBadParametersAndOverflow) {
  EXPECT_EQ(CodeOf([] { BuildGrid(0, 3); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { BuildGrid(2, 1); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { BuildGrid(64, 2); }), ErrorCode::kSizeLimit);
  EXPECT_EQ(CodeOf([] { BuildGrid(3, 1u << 22); }), ErrorCode::kSizeLimit);
}

TEST(GraphTest, OneDimensionalGridIsPath) {
  for (std::size_t c = 2; c <= 12; ++c) EXPECT_EQ(BuildGrid(1, c), BuildPath(c));
}

TEST(GraphTest, RingsAndPaths) {
  EXPECT_EQ(BuildRing(3).edge_count(), 3u);
  const Graph ring = BuildRing(8);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(ring.degree(i), 2u);
  const Graph path = BuildPath(5);
  EXPECT_EQ(path.edge_count(), 4u);
  EXPECT_EQ(path.degree(0), 1u);
  EXPECT_EQ(path.degree(4), 1u);
  EXPECT_EQ(CodeOf([] { BuildRing(2); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { BuildPath(1); }), ErrorCode::kInvalidParameter);
}

TEST(GraphTest, RandomRegular) {
  const Graph g = BuildRandomRegular(8, 3, 7);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(g.degree(i), 3u);

  EXPECT_EQ(BuildRandomRegular(100, 4, 42), BuildRandomRegular(100, 4, 42));
  EXPECT_FALSE(BuildRandomRegular(100, 4, 42) == BuildRandomRegular(100, 4, 43));

  const Graph e = BuildRandomRegular(64, 6, 3);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(e.degree(i), 6u);
  // Connected, so every cut carries probability mass. Check the smallest
  // single-node and half-split ratios, which bound the conductance above,
  // and that the matrix is valid.
  const TransitionMatrix p = MaxDegreeMatrix(e);
  std::vector<std::size_t> half(32);
  for (std::size_t i = 0; i < 32; ++i) half[i] = i;
  EXPECT_GT(CutRatio(p, half), 0.0);

  EXPECT_EQ(CodeOf([] { BuildRandomRegular(7, 3, 1); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { BuildRandomRegular(8, 2, 1); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { BuildRandomRegular(4, 4, 1); }), ErrorCode::kInvalidParameter);
}

TEST(GraphTest, RandomRegularConductanceIsPositive) {
  // Small enough to enumerate.
  const Graph e = BuildRandomRegular(16, 6, 11);
  EXPECT_GT(ConductanceExact(MaxDegreeMatrix(e)).value, 0.0);
}

TEST(GraphTest, ParseEdgeList) {
  const Graph two = ParseEdgeList("n 2\n0 1");
  EXPECT_EQ(two.node_count(), 2u);
  EXPECT_EQ(two.edge_count(), 1u);
  EXPECT_EQ(ParseEdgeList("n 3\n0 1\n1 2"), BuildPath(3));
  EXPECT_EQ(ParseEdgeList("# comment\n\nn 3\n  # another\n1 2\n0 1\n"), BuildPath(3));

  EXPECT_EQ(CodeOf([] { ParseEdgeList("n 3\n0 1"); }), ErrorCode::kDisconnected);
  EXPECT_EQ(CodeOf([] { ParseEdgeList("n 3\n0 1\n1 1\n1 2"); }), ErrorCode::kSelfLoop);
  EXPECT_EQ(CodeOf([] { ParseEdgeList("n 3\n0 1\n1 0\n1 2"); }),
            ErrorCode::kDuplicateEdge);
  EXPECT_EQ(CodeOf([] { ParseEdgeList("0 1\n"); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ParseEdgeList("n 3\n0 x\n"); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ParseEdgeList("n 3\n0 1 2\n"); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ParseEdgeList("n 2\n0 5\n"); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ParseEdgeList(""); }), ErrorCode::kParseError);
}

TEST(GraphTest, EdgeListFormatRoundTrips) {
  for (const Graph& g : {BuildGrid(2, 4), BuildRandomRegular(20, 3, 5), BuildRing(9)}) {
    EXPECT_EQ(ParseEdgeList(FormatEdgeList(g)), g);
  }
  EXPECT_EQ(FormatEdgeList(BuildPath(3)), "n 3\n0 1\n1 2\n");
}

TEST(GraphTest, MaxDegreeMatrixExamples) {
  const TransitionMatrix k4 = MaxDegreeMatrix(BuildComplete(4));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_DOUBLE_EQ(k4.at(i, j), i == j ? 0.0 : 1.0 / 3.0);
    }
  }
  const TransitionMatrix ring = MaxDegreeMatrix(BuildRing(4));
  EXPECT_EQ(ring.at(0, 1), 0.5);
  EXPECT_EQ(ring.at(0, 3), 0.5);
  EXPECT_EQ(ring.at(0, 0), 0.0);
  EXPECT_EQ(ring.at(0, 2), 0.0);
  const TransitionMatrix path = MaxDegreeMatrix(BuildPath(3));
  EXPECT_EQ(path.at(1, 1), 0.0);
  EXPECT_EQ(path.at(0, 0), 0.5);
  EXPECT_EQ(path.at(2, 2), 0.5);
}

TEST(GraphTest, MaxDegreeMatrixInvariantsOnEveryFamily) {
  std::vector<Graph> graphs;
  for (std::size_t n = 2; n <= 9; ++n) {
    graphs.push_back(BuildComplete(n));
    graphs.push_back(BuildPath(n));
    if (n >= 3) graphs.push_back(BuildRing(n));
  }
  graphs.push_back(BuildGrid(2, 5));
  graphs.push_back(BuildGrid(3, 3));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    graphs.push_back(BuildRandomRegular(30, 3 + seed % 3, seed));
  }
  for (const auto& g : graphs) {
    ExpectDoublyStochasticOn(g, MaxDegreeMatrix(g));
    EXPECT_TRUE(MaxDegreeMatrix(g).IsSymmetric());
  }
}

TEST(GraphTest, TransitionMatrixRejectsInvalidRows) {
  const Graph path = BuildPath(3);
  // Row sums fine but off-graph support.
  std::vector<std::vector<MatrixEntry>> off_support{
      {{2, 1.0}}, {{1, 1.0}}, {{0, 1.0}}};
  EXPECT_EQ(CodeOf([&] { TransitionMatrix(path, off_support); }),
            ErrorCode::kInvalidParameter);
  // Stochastic but not doubly stochastic.
  std::vector<std::vector<MatrixEntry>> rows{
      {{1, 1.0}}, {{0, 1.0}}, {{1, 1.0}}};
  EXPECT_EQ(CodeOf([&] { TransitionMatrix(path, rows); }),
            ErrorCode::kInvalidParameter);
  std::vector<std::vector<MatrixEntry>> negative{
      {{0, 1.5}, {1, -0.5}}, {{1, 1.0}}, {{2, 1.0}}};
  EXPECT_EQ(CodeOf([&] { TransitionMatrix(path, negative); }),
            ErrorCode::kInvalidParameter);
}

TEST(GraphTest, ConstructorValidation) {
  EXPECT_EQ(CodeOf([] { Graph(0, {}); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { Graph(2, {{0, 2}}); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { Graph(3, {{0, 1}}); }), ErrorCode::kDisconnected);
  const Graph single(1, {});
  EXPECT_EQ(single.node_count(), 1u);
  EXPECT_EQ(MaxDegreeMatrix(single).at(0, 0), 1.0);
}

}  // namespace
}  // namespace gossipcalc
