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
#include <ostream>
#include <span>
#include <vector>

#include "arbomis/forest_mis.h"
#include "arbomis/graph.h"
#include "arbomis/scale_params.h"
#include "arbomis/shattering.h"

namespace arbomis {

struct ArbMisConfig {
  std::size_t alpha = 1;
  double p_const = 1.0;
  double const_scale = 1.0;
  std::uint64_t seed = 0;
  /// 0 selects SimConfig::default_bandwidth_bits(n).
  std::size_t bandwidth_bits = 0;
  bool enforce_bandwidth = true;
  /// Receives the message-level trace of the scale loop when set.
  std::ostream* trace = nullptr;
};

struct PhaseRounds {
  std::size_t shatter = 0;
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t bad = 0;
  std::size_t total() const { return shatter + lo + hi + bad; }
};

struct MISOutcome {
  std::vector<NodeId> mis;  // ascending
  std::size_t rounds = 0;
  PhaseRounds phases;
  std::vector<NodeId> bad_nodes;
  std::size_t max_bad_component = 0;
  std::size_t max_message_bits = 0;
  ScaleParams params;
  ShatterRun shatter;
};

/// MIS of G[nodes] via degeneracy orientation, forest decomposition and
/// cole_vishkin_forest_mis. The distributed decomposition is charged
/// ceil(log2(largest component of G[nodes])) rounds on top of the simulated
/// ones.
ForestMisResult subgraph_mis(const Graph& g, std::span<const NodeId> nodes,
                             std::size_t bandwidth_bits);

/// Scale loop, then MIS of G[V_lo], of G[V_hi minus Gamma(I_lo)] and of each
/// component of G[B minus Gamma(everything so far)]. The union is checked
/// with verify_mis; a failure throws std::logic_error.
MISOutcome arb_mis(const Graph& g, const ArbMisConfig& cfg);
MISOutcome arb_mis(const Graph& g, std::size_t alpha, double p_const, double const_scale,
                   std::uint64_t seed);

}  // namespace arbomis
