// Copyright 2026 The Arbomis Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arbomis {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Undirected edge with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by read_edge_list; `line()` is 1-based.
class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Undirected simple graph in compressed adjacency form. Neighbor lists are
/// sorted, symmetric, and free of self-loops and duplicates. Immutable once
/// built.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Duplicates (in either orientation) are merged;
  /// self-loops and out-of-range endpoints throw GraphError.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const { return max_degree_; }
  bool has_edge(NodeId a, NodeId b) const;

  /// Index of `b` inside neighbors(a), or kNoNode when not adjacent.
  NodeId port_of(NodeId a, NodeId b) const;

  /// Offset of neighbors(v) inside the flat adjacency array. Adjacency slot
  /// `slot_offset(v) + port` identifies the directed edge (v, port).
  std::size_t slot_offset(NodeId v) const { return offsets_[v]; }

  /// All edges with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::size_t max_degree_ = 0;
};

/// Induced subgraph together with the local-to-global node map. Local ids
/// follow the order of `to_global`, which is sorted ascending.
struct Subgraph {
  Graph graph;
  std::vector<NodeId> to_global;
};

/// `nodes` need not be sorted; duplicates are ignored.
Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Connected components, each sorted ascending, ordered by smallest member.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

// Generators -----------------------------------------------------------------

/// Output of generate_forest_union: the merged graph plus the spanning trees
/// it was sampled from (edges may repeat across trees).
struct ForestUnion {
  Graph graph;
  std::vector<std::vector<Edge>> trees;
};

/// Union of `alpha` independent uniform random labelled spanning trees on `n`
/// nodes. Arboricity is at most `alpha`. Deterministic in `seed`.
ForestUnion generate_forest_union_with_trees(std::size_t n, std::size_t alpha,
                                             std::uint64_t seed);
Graph generate_forest_union(std::size_t n, std::size_t alpha, std::uint64_t seed);

/// Uniform random labelled tree on n nodes, decoded from a random Pruefer sequence.
std::vector<Edge> random_spanning_tree(std::size_t n, std::uint64_t seed);

Graph make_empty(std::size_t n);
Graph make_path(std::size_t n);
/// Node 0 is the center.
Graph make_star(std::size_t n);
Graph make_clique(std::size_t n);

// Edge-list text format --------------------------------------------------------

Graph read_edge_list(std::string_view text);
std::string write_edge_list(const Graph& g);

}  // namespace arbomis
