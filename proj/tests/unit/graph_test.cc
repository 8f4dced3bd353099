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

#include "arbomis/graph.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "arbomis/orientation.h"
#include "arbomis/union_find.h"

namespace arbomis {
namespace {

TEST(GraphTest, FromEdgesMergesDuplicates) {
  std::vector<Edge> edges = {{0, 1}, {1, 0}, {1, 2}, {0, 1}};
  Graph g = Graph::from_edges(3, edges);
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.max_degree(), 2u);
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(GraphTest, FromEdgesRejectsSelfLoopAndRange) {
  std::vector<Edge> loop = {{1, 1}};
  EXPECT_THROW(Graph::from_edges(3, loop), GraphError);
  std::vector<Edge> far = {{0, 3}};
  EXPECT_THROW(Graph::from_edges(3, far), GraphError);
}

TEST(GraphTest, AdjacencyIsSortedAndSymmetric) {
  Graph g = generate_forest_union(300, 3, 11);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto nb = g.neighbors(v);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
    for (std::size_t p = 0; p < nb.size(); ++p) {
      EXPECT_NE(nb[p], v);
      EXPECT_TRUE(g.has_edge(nb[p], v));
      EXPECT_EQ(g.port_of(v, nb[p]), p);
    }
  }
}

TEST(GraphTest, ForestUnionSingleNode) {
  Graph g = generate_forest_union(1, 3, 99);
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(GraphTest, ForestUnionAlphaOneIsSpanningTree) {
  for (std::size_t n : {2u, 5u, 17u, 256u, 1000u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Graph g = generate_forest_union(n, 1, seed);
      EXPECT_EQ(g.edge_count(), n - 1);
      EXPECT_EQ(connected_components(g).size(), 1u);
    }
  }
}

TEST(GraphTest, ForestUnionIsDeterministic) {
  EXPECT_EQ(generate_forest_union(500, 3, 42), generate_forest_union(500, 3, 42));
  EXPECT_NE(generate_forest_union(500, 3, 42), generate_forest_union(500, 3, 43));
}

TEST(GraphTest, ForestUnionRejectsZero) {
  EXPECT_THROW(generate_forest_union(0, 2, 1), GraphError);
  EXPECT_THROW(generate_forest_union(5, 0, 1), GraphError);
}

TEST(GraphTest, ForestUnionThreeTreesDecomposeIntoThreeForests) {
  ForestUnion fu = generate_forest_union_with_trees(100, 3, 7);
  EXPECT_LE(fu.graph.edge_count(), 297u);
  ASSERT_EQ(fu.trees.size(), 3u);
  // Oracle: each generating tree is a spanning tree (acyclic, n - 1 edges).
  for (const auto& tree : fu.trees) {
    EXPECT_EQ(tree.size(), 99u);
    UnionFind uf(100);
    for (const Edge& e : tree) EXPECT_TRUE(uf.unite(e.u, e.v));
  }
  ForestDecomposition d = decomposition_from_forests(fu.graph, fu.trees);
  EXPECT_LE(d.forest_count(), 3u);
  EXPECT_EQ(d.assignments().size(), fu.graph.edge_count());
}

TEST(GraphTest, SimpleFamilies) {
  Graph star = make_star(6);
  EXPECT_EQ(star.degree(0), 5u);
  EXPECT_EQ(star.edge_count(), 5u);
  Graph path = make_path(4);
  EXPECT_EQ(path.edge_count(), 3u);
  EXPECT_EQ(path.max_degree(), 2u);
  Graph k5 = make_clique(5);
  EXPECT_EQ(k5.edge_count(), 10u);
  EXPECT_EQ(make_empty(7).edge_count(), 0u);
}

TEST(GraphTest, InducedSubgraphAndComponents) {
  Graph g = make_path(6);
  std::vector<NodeId> keep = {5, 0, 1, 3, 4};
  Subgraph sub = induced_subgraph(g, keep);
  EXPECT_EQ(sub.to_global, (std::vector<NodeId>{0, 1, 3, 4, 5}));
  EXPECT_EQ(sub.graph.edge_count(), 3u);
  auto comps = connected_components(sub.graph);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].size(), 2u);
  EXPECT_EQ(comps[1].size(), 3u);
}

TEST(EdgeListTest, ReadsPath) {
  Graph g = read_edge_list("3 2\n0 1\n1 2\n");
  EXPECT_EQ(g, make_path(3));
}

TEST(EdgeListTest, SkipsCommentsAndBlankLines) {
  Graph g = read_edge_list("# header comment\n3 2\n\n0 1\n# middle\n2 1\n");
  EXPECT_EQ(g, make_path(3));
}

TEST(EdgeListTest, RoundTripNormalizes) {
  Graph g = read_edge_list("4 3\n2 3\n1 0\n0 2\n");
  const std::string text = write_edge_list(g);
  EXPECT_EQ(text, "4 3\n0 1\n0 2\n2 3\n");
  EXPECT_EQ(read_edge_list(text), g);
  Graph big = generate_forest_union(200, 2, 5);
  EXPECT_EQ(read_edge_list(write_edge_list(big)), big);
}

TEST(EdgeListTest, SelfLoopNamesLine) {
  try {
    read_edge_list("2 1\n1 1\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_STREQ(e.what(), "self-loop at line 2");
  }
}

TEST(EdgeListTest, RejectsBadInput) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      read_edge_list(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("3 2\n0 1\nfoo\n"), 3u);
  EXPECT_EQ(line_of("3 1\n0 3\n"), 2u);
  EXPECT_EQ(line_of("3 2\n0 1\n1 0\n"), 3u);
  EXPECT_EQ(line_of("3 1\n0 1\n1 2\n"), 3u);
  EXPECT_EQ(line_of("0 0\n"), 1u);
  EXPECT_NE(line_of("3 2\n0 1\n"), 0u);
  EXPECT_NE(line_of(""), 0u);
}

}  // namespace
}  // namespace arbomis
