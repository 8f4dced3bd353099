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

#include "arbomis/verify.h"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "json.hpp"

namespace arbomis {
namespace {

std::vector<char> membership(const Graph& g, std::span<const NodeId> s) {
  std::vector<char> in(g.node_count(), 0);
  for (NodeId v : s) {
    if (v >= g.node_count()) throw GraphError(fmt::format("node {} is not in the graph", v));
    in[v] = 1;
  }
  return in;
}

std::vector<char> active_mask(const AlgorithmState& state) {
  std::vector<char> active(state.status.size(), 0);
  for (std::size_t v = 0; v < active.size(); ++v) {
    active[v] = state.status[v] == NodeStatus::kActive;
  }
  return active;
}

// Number of active neighbors of v whose own active degree exceeds the cut.
std::size_t high_neighbors(const Graph& g, const std::vector<char>& active, NodeId v,
                           double cut) {
  std::size_t count = 0;
  for (NodeId w : g.neighbors(v)) {
    if (!active[w]) continue;
    std::size_t deg = 0;
    for (NodeId x : g.neighbors(w)) deg += active[x] ? 1 : 0;
    if (static_cast<double>(deg) > cut) ++count;
  }
  return count;
}

}  // namespace

const char* to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::kIndependence:
      return "independence";
    case Violation::Kind::kMaximality:
      return "maximality";
    case Violation::Kind::kInvariant:
      return "invariant";
    case Violation::Kind::kOrientation:
      return "orientation";
  }
  return "?";
}

std::string Violation::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind);
  j["witness"] = witness;
  j["detail"] = detail;
  return j.dump();
}

std::vector<Violation> verify_mis(const Graph& g, std::span<const NodeId> s) {
  const std::vector<char> in = membership(g, s);
  std::vector<Violation> out;
  for (const Edge& e : g.edges()) {
    if (in[e.u] && in[e.v]) {
      out.push_back({Violation::Kind::kIndependence, {e.u, e.v},
                     fmt::format("edge ({}, {}) has both endpoints in the set", e.u, e.v)});
    }
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (in[v]) continue;
    bool covered = false;
    for (NodeId w : g.neighbors(v)) covered = covered || in[w];
    if (!covered) {
      out.push_back({Violation::Kind::kMaximality, {v},
                     fmt::format("node {} could be added to the set", v)});
    }
  }
  return out;
}

std::vector<Violation> check_invariant(const Graph& g, const AlgorithmState& state,
                                       std::size_t k, const ScaleParams& params) {
  const std::vector<char> active = active_mask(state);
  const double cut = params.high_degree_cut(k);
  const double limit = params.bad_count_cut(k);
  std::vector<Violation> out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!active[v]) continue;
    const std::size_t count = high_neighbors(g, active, v, cut);
    if (static_cast<double>(count) > limit) {
      out.push_back({Violation::Kind::kInvariant, {v},
                     fmt::format("node {} has {} active neighbors of degree above {} at scale "
                                 "{}, limit {}",
                                 v, count, cut, k, limit)});
    }
  }
  return out;
}

std::vector<Violation> verify_orientation(const Graph& g, const Orientation& o) {
  std::vector<Violation> out;
  if (o.parents.size() != g.node_count()) {
    out.push_back({Violation::Kind::kOrientation, {},
                   fmt::format("orientation covers {} nodes, graph has {}", o.parents.size(),
                               g.node_count())});
    return out;
  }
  std::vector<std::size_t> times(2 * g.edge_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (o.parents[v].size() > o.out_bound) {
      out.push_back({Violation::Kind::kOrientation, {v},
                     fmt::format("node {} has {} parents, bound is {}", v, o.parents[v].size(),
                                 o.out_bound)});
    }
    for (NodeId p : o.parents[v]) {
      if (p >= g.node_count() || !g.has_edge(v, p)) {
        out.push_back({Violation::Kind::kOrientation, {v, p},
                       fmt::format("oriented pair ({}, {}) is not an edge", v, p)});
        continue;
      }
      ++times[g.slot_offset(v) + g.port_of(v, p)];
    }
  }
  for (const Edge& e : g.edges()) {
    const std::size_t count =
        times[g.slot_offset(e.u) + g.port_of(e.u, e.v)] + times[g.slot_offset(e.v) + g.port_of(e.v, e.u)];
    if (count != 1) {
      out.push_back({Violation::Kind::kOrientation, {e.u, e.v},
                     fmt::format("edge ({}, {}) oriented {} times", e.u, e.v, count)});
    }
  }
  return out;
}

bool still_violates(const Graph& g, std::span<const NodeId> s, const Violation& v) {
  const std::vector<char> in = membership(g, s);
  switch (v.kind) {
    case Violation::Kind::kIndependence:
      return v.witness.size() == 2 && g.has_edge(v.witness[0], v.witness[1]) &&
             in[v.witness[0]] && in[v.witness[1]];
    case Violation::Kind::kMaximality: {
      if (v.witness.size() != 1 || in[v.witness[0]]) return false;
      for (NodeId w : g.neighbors(v.witness[0])) {
        if (in[w]) return false;
      }
      return true;
    }
    default:
      return false;
  }
}

bool still_violates(const Graph& g, const AlgorithmState& state, std::size_t k,
                    const ScaleParams& params, const Violation& v) {
  if (v.kind != Violation::Kind::kInvariant || v.witness.size() != 1) return false;
  const std::vector<char> active = active_mask(state);
  const NodeId w = v.witness[0];
  if (!active[w]) return false;
  return static_cast<double>(high_neighbors(g, active, w, params.high_degree_cut(k))) >
         params.bad_count_cut(k);
}

double component_size_bound(std::size_t n, std::size_t delta, double c) {
  if (delta < 2) throw std::invalid_argument("component bound needs max degree at least 2");
  const double d = static_cast<double>(delta);
  return std::pow(d, 6) * c * std::log(static_cast<double>(n)) / std::log(d);
}

ComponentSizeReport component_size_report(const Graph& g, std::span<const NodeId> bad,
                                          double c) {
  ComponentSizeReport r;
  r.bound = component_size_bound(g.node_count(), g.max_degree(), c);
  const std::vector<char> in = membership(g, bad);
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack;
  for (NodeId s : bad) {
    if (seen[s]) continue;
    std::size_t size = 0;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      ++size;
      for (NodeId w : g.neighbors(v)) {
        if (in[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    r.max_size = std::max(r.max_size, size);
  }
  r.within_bound = static_cast<double>(r.max_size) <= r.bound;
  return r;
}

}  // namespace arbomis
