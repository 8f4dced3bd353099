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
#include <span>
#include <vector>

#include "arbomis/graph.h"
#include "arbomis/orientation.h"

namespace arbomis {

/// Number of bit-reduction rounds that take `n` distinct ids down to at most
/// six colors.
std::size_t cole_vishkin_reduction_rounds(std::size_t n);

/// Iterated base-2 logarithm: applications of log2 until the value is <= 1.
std::size_t log_star2(double x);

struct ForestMisResult {
  std::vector<NodeId> mis;  // ascending, ids of the input graph
  std::size_t rounds = 0;
  /// Rounds spent on coloring one forest: bit reduction plus 3-coloring.
  std::size_t coloring_rounds = 0;
  std::size_t reduction_rounds = 0;
  /// Additional sweep passes needed after every forest was processed once.
  std::size_t extra_passes = 0;
  std::size_t max_message_bits = 0;
  /// colors[f][i]: final color of nodes[i] in forest f, or kNoColor when the
  /// node was already decided when forest f was colored.
  std::vector<std::vector<std::uint32_t>> colors;
  static constexpr std::uint32_t kNoColor = 0xffffffffu;
};

/// MIS of G[nodes] computed forest by forest. For each forest the undecided
/// nodes run Cole-Vishkin bit reduction followed by shift-down to three
/// colors; then the three color classes are swept. A candidate of the current
/// class joins when no neighbor in G[nodes] has joined and no candidate
/// neighbor has a larger id. Nodes left undecided by id conflicts keep
/// sweeping with the colors already computed until every node is decided.
///
/// `d` uses the ids of `g` and must cover every edge of G[nodes]; otherwise
/// GraphError is thrown. bandwidth_bits = 0 selects the default for
/// |nodes|.
ForestMisResult cole_vishkin_forest_mis(const Graph& g, std::span<const NodeId> nodes,
                                        const ForestDecomposition& d,
                                        std::size_t bandwidth_bits = 0);

/// Same on all nodes of g.
ForestMisResult cole_vishkin_forest_mis(const Graph& g, const ForestDecomposition& d,
                                        std::size_t bandwidth_bits = 0);

}  // namespace arbomis
