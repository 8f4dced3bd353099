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
#include <vector>

#include "arbomis/graph.h"
#include "arbomis/simulator.h"

namespace arbomis {

/// Result of a baseline MIS run.
struct BaselineRun {
  std::vector<NodeId> mis;
  std::size_t rounds = 0;
  /// Iterations until the last node decided.
  std::size_t iterations = 0;
  std::size_t total_messages = 0;
  std::size_t max_message_bits = 0;
  bool halted_all = false;
};

/// Per-node state shared by both baselines.
struct BaselineNode {
  enum class Status : std::uint8_t { kUndecided, kInMis, kEliminated } status = Status::kUndecided;
  std::vector<std::uint32_t> ports;  // ports of neighbors believed undecided
  std::uint64_t priority = 0;
  std::uint32_t deg = 0;
  bool marked = false;
  std::uint32_t decided_iteration = 0;
};

/// Random-priority MIS: every iteration each undecided node draws a fresh
/// priority, joins when it beats all undecided neighbors and announces the
/// join. Two rounds per iteration.
class MetivierProgram {
 public:
  using State = BaselineNode;
  static constexpr unsigned kTagBits = 1;

  Started<State> init(NodeContext& ctx) const;
  bool step(State& s, NodeContext& ctx, std::uint64_t t, std::span<const Incoming> inbox,
            Outbox& out) const;
  std::string_view state_tag(const State& s) const;
};

/// Luby's marking MIS: mark with probability 1 / (2 deg) (always when deg is
/// 0); a marked node joins when its (deg, id) is larger than that of every
/// marked neighbor. Three rounds per iteration.
class LubyProgram {
 public:
  using State = BaselineNode;
  static constexpr unsigned kTagBits = 2;

  Started<State> init(NodeContext& ctx) const;
  bool step(State& s, NodeContext& ctx, std::uint64_t t, std::span<const Incoming> inbox,
            Outbox& out) const;
  std::string_view state_tag(const State& s) const;
};

MetivierProgram metivier_program();
LubyProgram luby_program();

BaselineRun run_metivier(const Graph& g, const SimConfig& cfg, std::ostream* trace = nullptr);
BaselineRun run_luby(const Graph& g, const SimConfig& cfg, std::ostream* trace = nullptr);

}  // namespace arbomis
