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

#include <algorithm>
#include <charconv>
#include <random>
#include <set>

#include <fmt/format.h>

namespace arbomis {

ParseError::ParseError(std::size_t line, const std::string& what)
    : GraphError(fmt::format("{} at line {}", what, line)), line_(line) {}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  if (node_count >= kNoNode) throw GraphError("node count too large");
  std::vector<Edge> sorted;
  sorted.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u == e.v) throw GraphError(fmt::format("self-loop on node {}", e.u));
    if (e.u >= node_count || e.v >= node_count) {
      throw GraphError(fmt::format("edge ({}, {}) out of range for {} nodes", e.u, e.v,
                                   node_count));
    }
    sorted.push_back(make_edge(e.u, e.v));
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  Graph g;
  g.offsets_.assign(node_count + 1, 0);
  for (const Edge& e : sorted) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    g.max_degree_ = std::max(g.max_degree_, g.offsets_[v + 1]);
    g.offsets_[v + 1] += g.offsets_[v];
  }
  g.targets_.resize(2 * sorted.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Lexicographic edge order fills every list in ascending neighbor order:
  // for node x, neighbors w < x arrive as (w, x) before any (x, w') with w' > x.
  for (const Edge& e : sorted) {
    g.targets_[fill[e.u]++] = e.v;
    g.targets_[fill[e.v]++] = e.u;
  }
  return g;
}

bool Graph::has_edge(NodeId a, NodeId b) const { return port_of(a, b) != kNoNode; }

NodeId Graph::port_of(NodeId a, NodeId b) const {
  auto nb = neighbors(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), b);
  if (it == nb.end() || *it != b) return kNoNode;
  return static_cast<NodeId>(it - nb.begin());
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  Subgraph sub;
  sub.to_global.assign(nodes.begin(), nodes.end());
  std::sort(sub.to_global.begin(), sub.to_global.end());
  sub.to_global.erase(std::unique(sub.to_global.begin(), sub.to_global.end()),
                      sub.to_global.end());
  std::vector<NodeId> local(g.node_count(), kNoNode);
  for (NodeId i = 0; i < sub.to_global.size(); ++i) local[sub.to_global[i]] = i;
  std::vector<Edge> edges;
  for (NodeId i = 0; i < sub.to_global.size(); ++i) {
    for (NodeId w : g.neighbors(sub.to_global[i])) {
      if (local[w] != kNoNode && i < local[w]) edges.push_back({i, local[w]});
    }
  }
  sub.graph = Graph::from_edges(sub.to_global.size(), edges);
  return sub;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  std::vector<std::vector<NodeId>> out;
  std::vector<bool> seen(g.node_count(), false);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    std::vector<NodeId> comp;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

namespace {

std::vector<Edge> decode_pruefer(std::size_t n, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  if (n < 2) return edges;
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  std::vector<NodeId> code(n - 2);
  for (auto& c : code) c = pick(rng);

  std::vector<std::size_t> degree(n, 1);
  for (NodeId c : code) ++degree[c];
  std::size_t ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  std::size_t leaf = ptr;
  edges.reserve(n - 1);
  for (NodeId v : code) {
    edges.push_back(make_edge(static_cast<NodeId>(leaf), v));
    if (--degree[v] == 1 && v < ptr) {
      leaf = v;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.push_back(make_edge(static_cast<NodeId>(leaf), static_cast<NodeId>(n - 1)));
  return edges;
}

}  // namespace

std::vector<Edge> random_spanning_tree(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return decode_pruefer(n, rng);
}

ForestUnion generate_forest_union_with_trees(std::size_t n, std::size_t alpha,
                                             std::uint64_t seed) {
  if (n == 0) throw GraphError("forest union needs at least one node");
  if (alpha == 0) throw GraphError("forest union needs alpha >= 1");
  ForestUnion out;
  std::mt19937_64 rng(seed);
  std::vector<Edge> all;
  for (std::size_t t = 0; t < alpha; ++t) {
    out.trees.push_back(decode_pruefer(n, rng));
    all.insert(all.end(), out.trees.back().begin(), out.trees.back().end());
  }
  out.graph = Graph::from_edges(n, all);
  return out;
}

Graph generate_forest_union(std::size_t n, std::size_t alpha, std::uint64_t seed) {
  return generate_forest_union_with_trees(n, alpha, seed).graph;
}

Graph make_empty(std::size_t n) { return Graph::from_edges(n, {}); }

Graph make_path(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({v - 1, v});
  return Graph::from_edges(n, edges);
}

Graph make_star(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({0, v});
  return Graph::from_edges(n, edges);
}

Graph make_clique(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph::from_edges(n, edges);
}

namespace {

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

// Parses exactly two unsigned decimals separated by whitespace.
bool parse_pair(std::string_view line, std::uint64_t& a, std::uint64_t& b) {
  const char* p = line.data();
  const char* end = line.data() + line.size();
  auto skip_ws = [&] {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
  };
  skip_ws();
  auto r1 = std::from_chars(p, end, a);
  if (r1.ec != std::errc() || r1.ptr == p) return false;
  p = r1.ptr;
  if (p == end || (*p != ' ' && *p != '\t')) return false;
  skip_ws();
  auto r2 = std::from_chars(p, end, b);
  if (r2.ec != std::errc() || r2.ptr == p) return false;
  p = r2.ptr;
  skip_ws();
  return p == end;
}

}  // namespace

Graph read_edge_list(std::string_view text) {
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (is_blank(line) || line.front() == '#') continue;

    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!parse_pair(line, a, b)) throw ParseError(line_no, "malformed line");
    if (!have_header) {
      if (a == 0) throw ParseError(line_no, "node count must be positive");
      if (a >= kNoNode) throw ParseError(line_no, "node count too large");
      n = a;
      m = b;
      have_header = true;
      continue;
    }
    if (edges.size() == m) throw ParseError(line_no, "more edges than declared");
    if (a >= n || b >= n) throw ParseError(line_no, "node id out of range");
    if (a == b) throw ParseError(line_no, "self-loop");
    Edge e = make_edge(static_cast<NodeId>(a), static_cast<NodeId>(b));
    if (!seen.insert(e).second) throw ParseError(line_no, "duplicate edge");
    edges.push_back(e);
  }
  if (!have_header) throw ParseError(std::max<std::size_t>(line_no, 1), "missing header");
  if (edges.size() != m) {
    throw ParseError(line_no, fmt::format("expected {} edges, found {}", m, edges.size()));
  }
  return Graph::from_edges(n, edges);
}

std::string write_edge_list(const Graph& g) {
  std::string out = fmt::format("{} {}\n", g.node_count(), g.edge_count());
  for (const Edge& e : g.edges()) out += fmt::format("{} {}\n", e.u, e.v);
  return out;
}

}  // namespace arbomis
