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
// Graph topologies and the max-degree transition matrix used to pick gossip
// partners. Node indices exist only for the simulator's bookkeeping; the
// protocol code in spread.h never interprets them.

#ifndef GOSSIPCALC_GRAPH_H_
#define GOSSIPCALC_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gossipcalc {

// Undirected, connected, simple graph on nodes 0..n-1.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  // Validates and canonicalizes `edges` (each pair stored as (min, max), the
  // list sorted). Throws Error with kSelfLoop, kDuplicateEdge, kDisconnected,
  // or kInvalidParameter for an out-of-range index or n == 0.
  Graph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  // Sorted neighbor list of `node`.
  std::span<const std::size_t> neighbors(std::size_t node) const {
    return adjacency_[node];
  }
  std::size_t degree(std::size_t node) const { return adjacency_[node].size(); }
  std::size_t max_degree() const { return max_degree_; }

  bool HasEdge(std::size_t u, std::size_t v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.edges_ == b.edges_ && a.adjacency_.size() == b.adjacency_.size();
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t max_degree_ = 0;
};

// Connectivity check on an arbitrary edge list (no validation of simplicity).
bool IsConnected(std::size_t node_count, std::span<const Graph::Edge> edges);

Graph BuildComplete(std::size_t n);

// d-dimensional grid with side c: node a in {0..c-1}^d has index
// sum_k a_k * c^k, and a, b are adjacent iff they differ by one in exactly
// one coordinate.
Graph BuildGrid(std::size_t dimensions, std::size_t side);

Graph BuildRing(std::size_t n);
Graph BuildPath(std::size_t n);

inline constexpr int kDefaultRegularRetryBudget = 1000;

// Connected deg-regular simple graph from the configuration (pairing) model.
// Stubs are paired one at a time by uniform choice among the remaining ones;
// a pair that would create a self-loop or a multi-edge is rejected and
// redrawn, and a dead end or a disconnected result restarts the attempt.
// Throws kGenerationFailure once `retry_budget` attempts have failed.
Graph BuildRandomRegular(std::size_t n, std::size_t degree, std::uint64_t seed,
                         int retry_budget = kDefaultRegularRetryBudget);

// Line-oriented edge list:
//
//   # optional comment lines
//   n <count>
//   <u> <v>
//   ...
//
// Throws kParseError on malformed input, plus the Graph constructor's errors.
Graph ParseEdgeList(std::string_view text);
std::string FormatEdgeList(const Graph& graph);

struct MatrixEntry {
  std::size_t column;
  double value;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

// Doubly stochastic contact-probability matrix stored by sparse rows. Only
// strictly positive entries are kept.
class TransitionMatrix {
 public:
  static constexpr double kSumTolerance = 1e-12;

  // Throws kInvalidParameter unless every row and column sums to one within
  // kSumTolerance, all entries lie in [0, 1], and off-diagonal mass sits on
  // edges of `graph` only.
  TransitionMatrix(const Graph& graph, std::vector<std::vector<MatrixEntry>> rows);

  std::size_t size() const { return rows_.size(); }
  std::span<const MatrixEntry> row(std::size_t i) const { return rows_[i]; }
  double at(std::size_t i, std::size_t j) const;

  bool IsSymmetric(double tolerance = 0.0) const;

  // Row-major dense copy; intended for small n.
  std::vector<double> ToDense() const;

 private:
  std::vector<std::vector<MatrixEntry>> rows_;
};

// P_ij = 1/Delta for each neighbor j of i and P_ii = 1 - d_i/Delta.
TransitionMatrix MaxDegreeMatrix(const Graph& graph);

}  // namespace gossipcalc

#endif  // GOSSIPCALC_GRAPH_H_
