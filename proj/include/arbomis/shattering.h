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
#include <vector>

#include "arbomis/graph.h"
#include "arbomis/scale_params.h"
#include "arbomis/simulator.h"

namespace arbomis {

enum class NodeStatus : std::uint8_t { kActive, kInI, kNeighborOfI, kBad };

const char* to_string(NodeStatus s);

/// Partition of the nodes into I, Gamma(I), B and the active set V_IB, with
/// deg_IB[v] = number of active neighbors of v.
struct AlgorithmState {
  std::vector<NodeStatus> status;
  std::vector<std::uint32_t> deg_ib;

  /// Builds a state and recomputes deg_ib from the active set.
  static AlgorithmState from_status(const Graph& g, std::vector<NodeStatus> status);

  std::vector<NodeId> with_status(NodeStatus s) const;
  std::vector<NodeId> independent_set() const { return with_status(NodeStatus::kInI); }
  std::vector<NodeId> bad() const { return with_status(NodeStatus::kBad); }
  std::vector<NodeId> active() const { return with_status(NodeStatus::kActive); }
};

/// Outcome of the scale loop. Every node that leaves the active set records
/// the observation point at which it left; snapshots are rebuilt from these.
///
/// Observation points are numbered per scale k (1-based) as
///   (k - 1) * (lambda + 1) + i   after iteration i of scale k,
///   k * (lambda + 1)             after the bad-marking step of scale k.
/// The point before bad marking of scale k is the point after iteration
/// lambda of that scale.
struct ShatterRun {
  static constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

  ScaleParams params;
  AlgorithmState state;
  std::size_t rounds = 0;
  std::size_t total_messages = 0;
  std::size_t max_message_bits = 0;
  std::vector<std::uint64_t> exit_point;
  /// Joins by nodes that held priority 0 while having an active neighbor.
  std::size_t noncompetitive_joins = 0;

  std::uint64_t after_iteration(std::size_t k, std::size_t i) const {
    return (k - 1) * (params.lambda + 1) + i;
  }
  std::uint64_t before_marking(std::size_t k) const { return after_iteration(k, params.lambda); }
  std::uint64_t after_marking(std::size_t k) const { return k * (params.lambda + 1); }

  /// State as it was at observation point `point`.
  AlgorithmState snapshot(const Graph& g, std::uint64_t point) const;
  /// Nodes marked bad at the end of scale k, ascending.
  std::vector<NodeId> marked_bad(std::size_t k) const;
};

/// The scale loop as a node program: theta scales of lambda three-round
/// iterations (ping, priority, join) followed by a two-round degree exchange,
/// with the bad marking applied at the start of the next step. The run uses
/// exactly params.shatter_rounds() rounds when some node stays active to the
/// end, fewer otherwise.
ShatterRun bounded_arb_independent_set(const Graph& g, const ScaleParams& params,
                                       const SimConfig& cfg, std::ostream* trace = nullptr);
ShatterRun bounded_arb_independent_set(const Graph& g, const ScaleParams& params,
                                       std::uint64_t seed);

struct HiLoPartition {
  std::vector<NodeId> lo;
  std::vector<NodeId> hi;
};

/// Splits the active set by deg_IB against params.lo_threshold().
HiLoPartition partition_hi_lo(const Graph& g, const AlgorithmState& state,
                              const ScaleParams& params);

struct Component {
  std::vector<NodeId> nodes;
  std::size_t size = 0;
};

/// Connected components of G[B], largest first (ties by smallest member).
std::vector<Component> bad_components(const Graph& g, const AlgorithmState& state);

}  // namespace arbomis
