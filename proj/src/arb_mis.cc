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

#include "arbomis/arb_mis.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include <fmt/format.h>

#include "arbomis/orientation.h"
#include "arbomis/verify.h"

namespace arbomis {
namespace {

std::size_t ceil_log2(std::size_t x) {
  return x <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(x - 1));
}

// Members of `nodes` with no neighbor marked in `taken`.
std::vector<NodeId> not_dominated(const Graph& g, std::span<const NodeId> nodes,
                                  const std::vector<char>& taken) {
  std::vector<NodeId> out;
  for (NodeId v : nodes) {
    bool hit = false;
    for (NodeId w : g.neighbors(v)) hit = hit || taken[w];
    if (!hit) out.push_back(v);
  }
  return out;
}

}  // namespace

ForestMisResult subgraph_mis(const Graph& g, std::span<const NodeId> nodes,
                             std::size_t bandwidth_bits) {
  if (nodes.empty()) return {};
  Subgraph sub = induced_subgraph(g, nodes);
  ForestDecomposition d = forest_decomposition(sub.graph, degeneracy_orientation(sub.graph));
  ForestMisResult r = cole_vishkin_forest_mis(sub.graph, d, bandwidth_bits);
  std::size_t largest = 0;
  for (const auto& c : connected_components(sub.graph)) largest = std::max(largest, c.size());
  r.rounds += ceil_log2(largest);
  for (NodeId& v : r.mis) v = sub.to_global[v];
  return r;
}

MISOutcome arb_mis(const Graph& g, const ArbMisConfig& cfg) {
  const std::size_t n = g.node_count();
  MISOutcome out;
  out.params = compute_scale_params(cfg.alpha, std::max<std::size_t>(1, g.max_degree()),
                                    cfg.p_const, cfg.const_scale);
  SimConfig sim = SimConfig::for_graph(g, cfg.seed);
  if (cfg.bandwidth_bits != 0) sim.bandwidth_bits = cfg.bandwidth_bits;
  sim.enforce_bandwidth = cfg.enforce_bandwidth;

  out.shatter = bounded_arb_independent_set(g, out.params, sim, cfg.trace);
  const AlgorithmState& state = out.shatter.state;
  out.phases.shatter = out.shatter.rounds;
  out.max_message_bits = out.shatter.max_message_bits;

  std::vector<char> taken(n, 0);
  for (NodeId v : state.independent_set()) taken[v] = 1;
  // Unenforced runs leave the forest phases at their own default budget.
  const std::size_t forest_bw = cfg.enforce_bandwidth ? sim.bandwidth_bits : 0;

  const HiLoPartition parts = partition_hi_lo(g, state, out.params);
  ForestMisResult lo = subgraph_mis(g, parts.lo, forest_bw);
  for (NodeId v : lo.mis) taken[v] = 1;
  out.phases.lo = lo.rounds;

  ForestMisResult hi = subgraph_mis(g, not_dominated(g, parts.hi, taken), forest_bw);
  for (NodeId v : hi.mis) taken[v] = 1;
  out.phases.hi = hi.rounds;
  out.max_message_bits = std::max({out.max_message_bits, lo.max_message_bits, hi.max_message_bits});

  out.bad_nodes = state.bad();
  for (const Component& c : bad_components(g, state)) {
    out.max_bad_component = std::max(out.max_bad_component, c.size);
  }
  // Components of B that survive the filter are solved independently, in
  // parallel rounds.
  const std::vector<NodeId> rest = not_dominated(g, out.bad_nodes, taken);
  const Subgraph rest_graph = induced_subgraph(g, rest);
  std::vector<NodeId> joined;
  for (const auto& comp : connected_components(rest_graph.graph)) {
    ForestMisResult r = subgraph_mis(rest_graph.graph, comp, forest_bw);
    out.phases.bad = std::max(out.phases.bad, r.rounds);
    out.max_message_bits = std::max(out.max_message_bits, r.max_message_bits);
    for (NodeId v : r.mis) joined.push_back(rest_graph.to_global[v]);
  }
  for (NodeId v : joined) taken[v] = 1;

  for (NodeId v = 0; v < n; ++v) {
    if (taken[v]) out.mis.push_back(v);
  }
  out.rounds = out.phases.total();

  const auto problems = verify_mis(g, out.mis);
  if (!problems.empty()) {
    throw std::logic_error(fmt::format("arb_mis produced an invalid MIS: {}",
                                       problems.front().detail));
  }
  return out;
}

MISOutcome arb_mis(const Graph& g, std::size_t alpha, double p_const, double const_scale,
                   std::uint64_t seed) {
  ArbMisConfig cfg;
  cfg.alpha = alpha;
  cfg.p_const = p_const;
  cfg.const_scale = const_scale;
  cfg.seed = seed;
  return arb_mis(g, cfg);
}

}  // namespace arbomis
