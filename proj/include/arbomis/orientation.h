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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arbomis/graph.h"

namespace arbomis {

/// Edge orientation: every edge points from a node to one of its parents.
struct Orientation {
  std::vector<std::vector<NodeId>> parents;  // sorted per node
  std::size_t out_bound = 0;

  /// Children lists obtained by inverting `parents`.
  std::vector<std::vector<NodeId>> children() const;

  /// Empty when the orientation is consistent with `g`: every oriented edge
  /// exists, every edge is oriented exactly once and out-degrees respect
  /// out_bound. Otherwise a description of the first problem.
  std::optional<std::string> check(const Graph& g) const;
};

/// Degeneracy (smallest-last) elimination order; ties go to the smallest id.
std::vector<NodeId> degeneracy_order(const Graph& g);

/// Orients each edge from the endpoint removed first to the one removed
/// later in degeneracy_order. out_bound is the achieved maximum out-degree.
Orientation degeneracy_orientation(const Graph& g);

/// Partition of the edges into rooted forests.
class ForestDecomposition {
 public:
  ForestDecomposition() = default;

  std::size_t node_count() const { return node_count_; }
  std::size_t forest_count() const { return parent_.size(); }

  /// Parent of v in forest f, or kNoNode for a root.
  NodeId parent(std::size_t f, NodeId v) const { return parent_[f][v]; }
  std::span<const NodeId> parents_in(std::size_t f) const { return parent_[f]; }

  /// Forest holding edge {a, b}, if the decomposition covers it.
  std::optional<std::size_t> forest_of(NodeId a, NodeId b) const;
  std::span<const std::pair<Edge, std::size_t>> assignments() const { return forest_of_edge_; }

  /// Builds from per-forest parent arrays. Throws GraphError when some edge of
  /// `g` is missing, some parent link is not an edge of `g`, an edge is used
  /// twice, or a forest contains a cycle.
  static ForestDecomposition from_parents(const Graph& g,
                                          std::vector<std::vector<NodeId>> parent);

 private:
  std::size_t node_count_ = 0;
  std::vector<std::vector<NodeId>> parent_;
  std::vector<std::pair<Edge, std::size_t>> forest_of_edge_;  // sorted by edge
};

/// The i-th parent (in ascending id order) of every node goes to forest i;
/// forest_count equals orientation.out_bound. Rejects orientations that are
/// inconsistent with `g` or that contain a directed cycle.
ForestDecomposition forest_decomposition(const Graph& g, const Orientation& orientation);

/// Decomposition seeded from explicit edge-disjoint-or-overlapping forests
/// (e.g. the trees of a forest union). Each edge goes to the first forest
/// listing it; every forest is rooted at its smallest node per component.
ForestDecomposition decomposition_from_forests(const Graph& g,
                                               std::span<const std::vector<Edge>> forests);

}  // namespace arbomis
