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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "gossipcalc/error.h"
#include "gossipcalc/random.h"

namespace gossipcalc {
namespace {

void RequireAtLeast(std::size_t value, std::size_t minimum,
                    std::string_view what) {
  if (value < minimum) {
    throw Error(ErrorCode::kInvalidParameter,
                std::string(what) + " must be >= " + std::to_string(minimum) +
                    ", got " + std::to_string(value));
  }
}

// Union-find with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

bool IsConnected(std::size_t node_count, std::span<const Graph::Edge> edges) {
  if (node_count <= 1) return true;
  DisjointSets sets(node_count);
  std::size_t components = node_count;
  for (const auto& [u, v] : edges) {
    if (sets.Union(u, v)) --components;
  }
  return components == 1;
}

Graph::Graph(std::size_t node_count, std::vector<Edge> edges)
    : edges_(std::move(edges)), adjacency_(node_count) {
  if (node_count == 0) {
    throw Error(ErrorCode::kInvalidParameter, "graph must have at least one node");
  }
  for (auto& [u, v] : edges_) {
    if (u >= node_count || v >= node_count) {
      throw Error(ErrorCode::kInvalidParameter,
                  "edge (" + std::to_string(u) + ", " + std::to_string(v) +
                      ") references a node >= n = " + std::to_string(node_count));
    }
    if (u == v) {
      throw Error(ErrorCode::kSelfLoop,
                  "self-loop at node " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw Error(ErrorCode::kDuplicateEdge,
                "duplicate edge (" + std::to_string(dup->first) + ", " +
                    std::to_string(dup->second) + ")");
  }
  if (!IsConnected(node_count, edges_)) {
    throw Error(ErrorCode::kDisconnected, "graph is not connected");
  }
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    max_degree_ = std::max(max_degree_, list.size());
  }
}

bool Graph::HasEdge(std::size_t u, std::size_t v) const {
  if (u >= node_count() || v >= node_count()) return false;
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

Graph BuildComplete(std::size_t n) {
  RequireAtLeast(n, 2, "complete graph size n");
  std::vector<Graph::Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

Graph BuildGrid(std::size_t dimensions, std::size_t side) {
  RequireAtLeast(dimensions, 1, "grid dimension d");
  RequireAtLeast(side, 2, "grid side c");
  // Node indices are stored in std::size_t and edge lists hold d*n entries.
  constexpr std::size_t kLimit = std::numeric_limits<std::uint32_t>::max();
  std::size_t n = 1;
  for (std::size_t k = 0; k < dimensions; ++k) {
    if (n > kLimit / side) {
      throw Error(ErrorCode::kSizeLimit,
                  "grid size c^d = " + std::to_string(side) + "^" +
                      std::to_string(dimensions) + " is not representable");
    }
    n *= side;
  }
  std::vector<Graph::Edge> edges;
  edges.reserve(dimensions * (n / side) * (side - 1));
  for (std::size_t node = 0; node < n; ++node) {
    std::size_t stride = 1;
    for (std::size_t k = 0; k < dimensions; ++k) {
      const std::size_t coordinate = (node / stride) % side;
      if (coordinate + 1 < side) edges.emplace_back(node, node + stride);
      stride *= side;
    }
  }
  return Graph(n, std::move(edges));
}

Graph BuildRing(std::size_t n) {
  RequireAtLeast(n, 3, "ring size n");
  std::vector<Graph::Edge> edges;
  edges.reserve(n);
  for (std::size_t u = 0; u < n; ++u) edges.emplace_back(u, (u + 1) % n);
  return Graph(n, std::move(edges));
}

Graph BuildPath(std::size_t n) {
  RequireAtLeast(n, 2, "path size n");
  std::vector<Graph::Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  return Graph(n, std::move(edges));
}

Graph BuildRandomRegular(std::size_t n, std::size_t degree, std::uint64_t seed,
                         int retry_budget) {
  RequireAtLeast(degree, 3, "regular degree");
  if (degree >= n) {
    throw Error(ErrorCode::kInvalidParameter,
                "regular degree must be < n (degree " + std::to_string(degree) +
                    ", n " + std::to_string(n) + ")");
  }
  if ((n * degree) % 2 != 0) {
    throw Error(ErrorCode::kInvalidParameter,
                "n * degree must be even (n " + std::to_string(n) +
                    ", degree " + std::to_string(degree) + ")");
  }
  if (retry_budget < 1) {
    throw Error(ErrorCode::kInvalidParameter, "retry budget must be positive");
  }

  Rng rng(seed);
  const std::size_t stub_count = n * degree;
  std::vector<std::size_t> stubs(stub_count);
  std::vector<Graph::Edge> edges;
  std::set<Graph::Edge> present;
  // Redraws of a single pair before an attempt is declared stuck.
  const std::size_t max_redraws = 64 * stub_count;

  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    for (std::size_t s = 0; s < stub_count; ++s) stubs[s] = s / degree;
    std::size_t remaining = stub_count;
    edges.clear();
    present.clear();
    bool stuck = false;
    while (remaining > 0 && !stuck) {
      std::size_t redraws = 0;
      while (true) {
        const std::size_t a = rng.UniformIndex(remaining);
        std::size_t b = rng.UniformIndex(remaining - 1);
        if (b >= a) ++b;
        std::size_t u = stubs[a];
        std::size_t v = stubs[b];
        if (u > v) std::swap(u, v);
        if (u != v && !present.contains({u, v})) {
          present.insert({u, v});
          edges.emplace_back(u, v);
          // Remove stubs a and b by swapping them to the tail.
          const std::size_t hi = std::max(a, b);
          const std::size_t lo = std::min(a, b);
          std::swap(stubs[hi], stubs[remaining - 1]);
          std::swap(stubs[lo], stubs[remaining - 2]);
          remaining -= 2;
          break;
        }
        if (++redraws > max_redraws) {
          stuck = true;
          break;
        }
      }
    }
    if (stuck || !IsConnected(n, edges)) continue;
    return Graph(n, std::move(edges));
  }
  throw Error(ErrorCode::kGenerationFailure,
              "no connected " + std::to_string(degree) + "-regular graph on " +
                  std::to_string(n) + " nodes after " +
                  std::to_string(retry_budget) + " attempts");
}

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> Tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    auto end = line.find_first_of(" \t", start);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(start, end - start));
    pos = end;
  }
  return out;
}

std::size_t ParseIndex(std::string_view token, std::size_t line_number) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line_number) + ": expected a "
                "non-negative integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Graph ParseEdgeList(std::string_view text) {
  std::optional<std::size_t> node_count;
  std::vector<Graph::Edge> edges;
  std::size_t line_number = 0;
  while (!text.empty()) {
    const auto newline = text.find('\n');
    const auto raw = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{}
                                             : text.substr(newline + 1);
    ++line_number;
    const auto line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tokens = Tokens(line);
    if (!node_count) {
      if (tokens.size() != 2 || tokens[0] != "n") {
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_number) +
                        ": expected header 'n <count>'");
      }
      node_count = ParseIndex(tokens[1], line_number);
      continue;
    }
    if (tokens.size() != 2) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_number) +
                      ": expected '<u> <v>'");
    }
    const std::size_t u = ParseIndex(tokens[0], line_number);
    const std::size_t v = ParseIndex(tokens[1], line_number);
    if (u >= *node_count || v >= *node_count) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_number) +
                      ": node index out of range for n = " +
                      std::to_string(*node_count));
    }
    edges.emplace_back(u, v);
  }
  if (!node_count) {
    throw Error(ErrorCode::kParseError, "missing header 'n <count>'");
  }
  if (*node_count == 0) {
    throw Error(ErrorCode::kParseError, "node count must be positive");
  }
  return Graph(*node_count, std::move(edges));
}

std::string FormatEdgeList(const Graph& graph) {
  std::ostringstream out;
  out << "n " << graph.node_count() << '\n';
  for (const auto& [u, v] : graph.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

TransitionMatrix::TransitionMatrix(const Graph& graph,
                                   std::vector<std::vector<MatrixEntry>> rows)
    : rows_(std::move(rows)) {
  const std::size_t n = graph.node_count();
  if (rows_.size() != n) {
    throw Error(ErrorCode::kInvalidParameter,
                "transition matrix has " + std::to_string(rows_.size()) +
                    " rows for a graph on " + std::to_string(n) + " nodes");
  }
  std::vector<double> column_sums(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = rows_[i];
    std::erase_if(row, [](const MatrixEntry& e) { return e.value == 0.0; });
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.column < b.column; });
    double row_sum = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      const auto& [j, value] = row[k];
      if (k > 0 && row[k - 1].column == j) {
        throw Error(ErrorCode::kInvalidParameter,
                    "repeated entry (" + std::to_string(i) + ", " +
                        std::to_string(j) + ")");
      }
      if (j >= n || !(value >= 0.0 && value <= 1.0)) {
        throw Error(ErrorCode::kInvalidParameter,
                    "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") out of range");
      }
      if (j != i && !graph.HasEdge(i, j)) {
        throw Error(ErrorCode::kInvalidParameter,
                    "P(" + std::to_string(i) + ", " + std::to_string(j) +
                        ") > 0 but the nodes are not adjacent");
      }
      row_sum += value;
      column_sums[j] += value;
    }
    if (std::abs(row_sum - 1.0) > kSumTolerance) {
      throw Error(ErrorCode::kInvalidParameter,
                  "row " + std::to_string(i) + " sums to " +
                      std::to_string(row_sum));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(column_sums[j] - 1.0) > kSumTolerance) {
      throw Error(ErrorCode::kInvalidParameter,
                  "column " + std::to_string(j) + " sums to " +
                      std::to_string(column_sums[j]));
    }
  }
}

double TransitionMatrix::at(std::size_t i, std::size_t j) const {
  const auto& row = rows_[i];
  const auto it = std::lower_bound(
      row.begin(), row.end(), j,
      [](const MatrixEntry& e, std::size_t col) { return e.column < col; });
  return it != row.end() && it->column == j ? it->value : 0.0;
}

bool TransitionMatrix::IsSymmetric(double tolerance) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (const auto& [j, value] : rows_[i]) {
      if (std::abs(value - at(j, i)) > tolerance) return false;
    }
  }
  return true;
}

std::vector<double> TransitionMatrix::ToDense() const {
  const std::size_t n = rows_.size();
  std::vector<double> dense(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, value] : rows_[i]) dense[i * n + j] = value;
  }
  return dense;
}

TransitionMatrix MaxDegreeMatrix(const Graph& graph) {
  const std::size_t n = graph.node_count();
  const std::size_t max_degree = graph.max_degree();
  std::vector<std::vector<MatrixEntry>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = rows[i];
    if (max_degree == 0) {
      row.push_back({i, 1.0});
      continue;
    }
    const double off = 1.0 / static_cast<double>(max_degree);
    const double self = static_cast<double>(max_degree - graph.degree(i)) /
                        static_cast<double>(max_degree);
    row.reserve(graph.degree(i) + 1);
    if (self > 0.0) row.push_back({i, self});
    for (const std::size_t j : graph.neighbors(i)) row.push_back({j, off});
  }
  return TransitionMatrix(graph, std::move(rows));
}

}  // namespace gossipcalc
