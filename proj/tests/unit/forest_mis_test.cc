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

#include "arbomis/forest_mis.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "arbomis/orientation.h"
#include "arbomis/verify.h"

namespace arbomis {
namespace {

ForestMisResult run_on(const Graph& g) {
  return cole_vishkin_forest_mis(g, forest_decomposition(g, degeneracy_orientation(g)));
}

TEST(ForestMisTest, LogStar) {
  EXPECT_EQ(log_star2(1), 0u);
  EXPECT_EQ(log_star2(2), 1u);
  EXPECT_EQ(log_star2(4), 2u);
  EXPECT_EQ(log_star2(16), 3u);
  EXPECT_EQ(log_star2(65536), 4u);
  EXPECT_EQ(log_star2(65537), 5u);
}

TEST(ForestMisTest, ReductionRoundsAreLogStar) {
  EXPECT_EQ(cole_vishkin_reduction_rounds(50), 3u);
  EXPECT_EQ(cole_vishkin_reduction_rounds(std::size_t{1} << 16), 4u);
  for (std::size_t n = 2; n <= (std::size_t{1} << 16); n = n * 3 / 2 + 1) {
    EXPECT_LE(cole_vishkin_reduction_rounds(n), log_star2(static_cast<double>(n))) << n;
  }
}

TEST(ForestMisTest, PathOfFifty) {
  Graph g = make_path(50);
  ForestMisResult r = run_on(g);
  EXPECT_TRUE(verify_mis(g, r.mis).empty());
  EXPECT_EQ(r.reduction_rounds, 3u);
  EXPECT_LE(r.coloring_rounds, log_star2(50) + 6);
}

TEST(ForestMisTest, StarAndTriangle) {
  Graph star = make_star(20);
  ForestMisResult s = run_on(star);
  EXPECT_TRUE(verify_mis(star, s.mis).empty());

  Graph tri = make_clique(3);
  ForestMisResult t = run_on(tri);
  EXPECT_TRUE(verify_mis(tri, t.mis).empty());
  EXPECT_EQ(t.mis.size(), 1u);
}

TEST(ForestMisTest, EdgelessTakesEveryNode) {
  Graph g = make_empty(7);
  ForestMisResult r = run_on(g);
  EXPECT_EQ(r.mis.size(), 7u);
  EXPECT_EQ(r.rounds, 0u);
}

TEST(ForestMisTest, ThreeColoringIsProperOnTrees) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 300 + 97 * seed;
    Graph g = Graph::from_edges(n, random_spanning_tree(n, seed));
    ForestDecomposition d = forest_decomposition(g, degeneracy_orientation(g));
    ASSERT_EQ(d.forest_count(), 1u);
    ForestMisResult r = cole_vishkin_forest_mis(g, d);
    EXPECT_TRUE(verify_mis(g, r.mis).empty());
    ASSERT_EQ(r.colors.size(), 1u);
    for (NodeId v = 0; v < n; ++v) {
      EXPECT_LT(r.colors[0][v], 3u);
      NodeId p = d.parent(0, v);
      if (p != kNoNode) EXPECT_NE(r.colors[0][v], r.colors[0][p]) << v;
    }
    EXPECT_EQ(r.extra_passes, 0u);
  }
}

TEST(ForestMisTest, MultiForestGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ForestUnion fu = generate_forest_union_with_trees(800, 3, seed);
    ForestDecomposition d = decomposition_from_forests(fu.graph, fu.trees);
    ForestMisResult r = cole_vishkin_forest_mis(fu.graph, d);
    EXPECT_TRUE(verify_mis(fu.graph, r.mis).empty());
    EXPECT_LE(r.max_message_bits, SimConfig::default_bandwidth_bits(800));
  }
}

TEST(ForestMisTest, SubsetOfNodes) {
  Graph g = generate_forest_union(500, 2, 3);
  std::vector<NodeId> nodes;
  for (NodeId v = 0; v < 500; v += 2) nodes.push_back(v);
  ForestDecomposition d = forest_decomposition(g, degeneracy_orientation(g));
  ForestMisResult r = cole_vishkin_forest_mis(g, nodes, d);
  Subgraph sub = induced_subgraph(g, nodes);
  std::vector<NodeId> local;
  for (NodeId v : r.mis) {
    auto it = std::lower_bound(sub.to_global.begin(), sub.to_global.end(), v);
    ASSERT_TRUE(it != sub.to_global.end() && *it == v);
    local.push_back(static_cast<NodeId>(it - sub.to_global.begin()));
  }
  EXPECT_TRUE(verify_mis(sub.graph, local).empty());
}

TEST(ForestMisTest, UncoveredEdgeThrows) {
  Graph g = make_path(4);
  ForestDecomposition d = forest_decomposition(g, degeneracy_orientation(g));
  Graph bigger = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  EXPECT_THROW(cole_vishkin_forest_mis(bigger, d), GraphError);
}

}  // namespace
}  // namespace arbomis
