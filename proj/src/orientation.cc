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

#include "arbomis/orientation.h"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "arbomis/union_find.h"

namespace arbomis {

std::vector<std::vector<NodeId>> Orientation::children() const {
  std::vector<std::vector<NodeId>> out(parents.size());
  for (NodeId v = 0; v < parents.size(); ++v) {
    for (NodeId p : parents[v]) out[p].push_back(v);
  }
  return out;
}

std::optional<std::string> Orientation::check(const Graph& g) const {
  if (parents.size() != g.node_count()) {
    return fmt::format("orientation covers {} nodes, graph has {}", parents.size(),
                       g.node_count());
  }
  std::size_t oriented = 0;
  for (NodeId v = 0; v < parents.size(); ++v) {
    if (parents[v].size() > out_bound) {
      return fmt::format("node {} has {} parents, bound is {}", v, parents[v].size(), out_bound);
    }
    for (NodeId p : parents[v]) {
      if (p >= g.node_count() || !g.has_edge(v, p)) {
        return fmt::format("oriented pair ({}, {}) is not an edge", v, p);
      }
      if (std::find(parents[p].begin(), parents[p].end(), v) != parents[p].end()) {
        return fmt::format("edge ({}, {}) oriented both ways", v, p);
      }
    }
    std::vector<NodeId> sorted = parents[v];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      return fmt::format("node {} lists a parent twice", v);
    }
    oriented += parents[v].size();
  }
  if (oriented != g.edge_count()) {
    return fmt::format("{} of {} edges oriented", oriented, g.edge_count());
  }
  return std::nullopt;
}

std::vector<NodeId> degeneracy_order(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> degree(n);
  std::set<std::pair<std::size_t, NodeId>> queue;
  for (NodeId v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    queue.emplace(degree[v], v);
  }
  std::vector<bool> removed(n, false);
  std::vector<NodeId> order;
  order.reserve(n);
  while (!queue.empty()) {
    NodeId v = queue.begin()->second;
    queue.erase(queue.begin());
    removed[v] = true;
    order.push_back(v);
    for (NodeId w : g.neighbors(v)) {
      if (removed[w]) continue;
      queue.erase({degree[w], w});
      --degree[w];
      queue.emplace(degree[w], w);
    }
  }
  return order;
}

Orientation degeneracy_orientation(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> order = degeneracy_order(g);
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;

  Orientation o;
  o.parents.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId w : g.neighbors(v)) {
      if (rank[v] < rank[w]) o.parents[v].push_back(w);
    }
    o.out_bound = std::max(o.out_bound, o.parents[v].size());
  }
  return o;
}

std::optional<std::size_t> ForestDecomposition::forest_of(NodeId a, NodeId b) const {
  Edge e = make_edge(a, b);
  auto it = std::lower_bound(
      forest_of_edge_.begin(), forest_of_edge_.end(), e,
      [](const std::pair<Edge, std::size_t>& x, const Edge& y) { return x.first < y; });
  if (it == forest_of_edge_.end() || it->first != e) return std::nullopt;
  return it->second;
}

ForestDecomposition ForestDecomposition::from_parents(const Graph& g,
                                                      std::vector<std::vector<NodeId>> parent) {
  const std::size_t n = g.node_count();
  ForestDecomposition d;
  d.node_count_ = n;
  for (std::size_t f = 0; f < parent.size(); ++f) {
    if (parent[f].size() != n) {
      throw GraphError(fmt::format("forest {} has {} entries, expected {}", f, parent[f].size(), n));
    }
    UnionFind uf(n);
    for (NodeId v = 0; v < n; ++v) {
      NodeId p = parent[f][v];
      if (p == kNoNode) continue;
      if (p >= n || !g.has_edge(v, p)) {
        throw GraphError(fmt::format("forest {}: ({}, {}) is not an edge", f, v, p));
      }
      if (!uf.unite(v, p)) {
        throw GraphError(fmt::format("forest {}: edge ({}, {}) closes a cycle", f, v, p));
      }
      d.forest_of_edge_.emplace_back(make_edge(v, p), f);
    }
  }
  std::sort(d.forest_of_edge_.begin(), d.forest_of_edge_.end());
  for (std::size_t i = 1; i < d.forest_of_edge_.size(); ++i) {
    if (d.forest_of_edge_[i].first == d.forest_of_edge_[i - 1].first) {
      const Edge& e = d.forest_of_edge_[i].first;
      throw GraphError(fmt::format("edge ({}, {}) assigned twice", e.u, e.v));
    }
  }
  if (d.forest_of_edge_.size() != g.edge_count()) {
    for (const Edge& e : g.edges()) {
      if (!d.forest_of(e.u, e.v)) {
        throw GraphError(fmt::format("edge ({}, {}) is not covered", e.u, e.v));
      }
    }
  }
  d.parent_ = std::move(parent);
  return d;
}

ForestDecomposition forest_decomposition(const Graph& g, const Orientation& orientation) {
  if (auto problem = orientation.check(g)) {
    throw GraphError("inconsistent orientation: " + *problem);
  }
  const std::size_t n = g.node_count();

  // Kahn's algorithm: the orientation must be acyclic for rank-based forests
  // to be acyclic.
  std::vector<std::size_t> pending(n);
  for (NodeId v = 0; v < n; ++v) pending[v] = orientation.parents[v].size();
  auto children = orientation.children();
  std::vector<NodeId> ready;
  for (NodeId v = 0; v < n; ++v) {
    if (pending[v] == 0) ready.push_back(v);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    NodeId v = ready.back();
    ready.pop_back();
    ++visited;
    for (NodeId c : children[v]) {
      if (--pending[c] == 0) ready.push_back(c);
    }
  }
  if (visited != n) throw GraphError("inconsistent orientation: directed cycle");

  std::vector<std::vector<NodeId>> parent(orientation.out_bound, std::vector<NodeId>(n, kNoNode));
  for (NodeId v = 0; v < n; ++v) {
    std::vector<NodeId> sorted = orientation.parents[v];
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) parent[i][v] = sorted[i];
  }
  return ForestDecomposition::from_parents(g, std::move(parent));
}

ForestDecomposition decomposition_from_forests(const Graph& g,
                                               std::span<const std::vector<Edge>> forests) {
  const std::size_t n = g.node_count();
  std::set<Edge> taken;
  std::vector<std::vector<NodeId>> parent;
  for (const auto& forest : forests) {
    std::vector<std::vector<NodeId>> adj(n);
    for (const Edge& raw : forest) {
      Edge e = make_edge(raw.u, raw.v);
      if (e.v >= n || !g.has_edge(e.u, e.v)) {
        throw GraphError(fmt::format("forest edge ({}, {}) is not in the graph", e.u, e.v));
      }
      if (!taken.insert(e).second) continue;
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    std::vector<NodeId> par(n, kNoNode);
    std::vector<bool> seen(n, false);
    std::vector<NodeId> stack;
    for (NodeId root = 0; root < n; ++root) {
      if (seen[root]) continue;
      seen[root] = true;
      stack.push_back(root);
      while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : adj[v]) {
          if (w == par[v]) continue;
          if (seen[w]) throw GraphError("seed forest contains a cycle");
          seen[w] = true;
          par[w] = v;
          stack.push_back(w);
        }
      }
    }
    parent.push_back(std::move(par));
  }
  return ForestDecomposition::from_parents(g, std::move(parent));
}

}  // namespace arbomis
