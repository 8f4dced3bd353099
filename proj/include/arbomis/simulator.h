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

// Synchronous message-passing engine.
//
// A run is a sequence of steps t = 0, 1, 2, ... Between two consecutive steps
// one communication round takes place: every message emitted in step t is
// delivered to the receiving port in step t + 1, and in no other step. A node
// that halts keeps its final state and takes no further steps; messages
// emitted in its last step are still delivered. `rounds_executed` counts
// communication rounds, so a run whose nodes all halt in step t used t rounds.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arbomis/graph.h"
#include "arbomis/rng.h"

namespace arbomis {

/// Bits needed to encode any value in [0, max_value]; at least 1.
constexpr unsigned field_width(std::uint64_t max_value) {
  return std::max(1u, static_cast<unsigned>(std::bit_width(max_value)));
}

/// Bits needed for a tag drawn from an alphabet of `kinds` message kinds.
constexpr unsigned tag_width(unsigned kinds) {
  return kinds <= 1 ? 0u : static_cast<unsigned>(std::bit_width(kinds - 1u));
}

/// A CONGEST message: a tag followed by up to kMaxFields fixed-width unsigned
/// fields. The canonical serialization packs tag and fields MSB-first with no
/// padding; its length in bits is size_bits().
class Message {
 public:
  static constexpr std::size_t kMaxFields = 2;

  Message() = default;
  Message(unsigned tag, unsigned tag_bits);

  /// Appends a field. Throws std::invalid_argument if the value does not fit.
  Message& with(std::uint64_t value, unsigned width);

  unsigned tag() const { return tag_; }
  std::size_t field_count() const { return count_; }
  std::uint64_t field(std::size_t i) const { return fields_[i]; }
  std::size_t size_bits() const;
  std::vector<std::uint8_t> serialize() const;

  friend bool operator==(const Message&, const Message&) = default;

 private:
  std::uint8_t tag_ = 0;
  std::uint8_t tag_bits_ = 0;
  std::uint8_t count_ = 0;
  std::array<std::uint8_t, kMaxFields> widths_{};
  std::array<std::uint64_t, kMaxFields> fields_{};
};

struct Incoming {
  std::uint32_t port = 0;
  Message msg;
};

/// Per-port outgoing messages of one node for one step.
class Outbox {
 public:
  explicit Outbox(std::span<std::optional<Message>> slots) : slots_(slots) {}

  std::size_t port_count() const { return slots_.size(); }
  void send(std::uint32_t port, const Message& m);
  void broadcast(const Message& m);
  void send_all(std::span<const std::uint32_t> ports, const Message& m);

 private:
  std::span<std::optional<Message>> slots_;
};

/// What a node knows about itself and the network. Neighbor identities are
/// not exposed; programs address neighbors by port.
struct NodeContext {
  NodeId id = 0;
  std::size_t degree = 0;
  std::size_t node_count = 0;
  std::size_t bandwidth_bits = 0;
  SplitMix64* rng = nullptr;
};

template <class State>
struct Started {
  State state;
  bool halted = false;
};

template <class P>
concept NodeProgram = requires(const P& p, typename P::State& s, const typename P::State& cs,
                               NodeContext& ctx, std::uint64_t step,
                               std::span<const Incoming> inbox, Outbox& out) {
  { p.init(ctx) } -> std::same_as<Started<typename P::State>>;
  { p.step(s, ctx, step, inbox, out) } -> std::same_as<bool>;
  { p.state_tag(cs) } -> std::convertible_to<std::string_view>;
};

struct SimConfig {
  std::uint64_t seed = 0;
  std::size_t max_rounds = std::size_t{1} << 24;
  std::size_t bandwidth_bits = 1;
  bool enforce_bandwidth = true;

  /// c * ceil(log2 n) bits, at least 1.
  static std::size_t default_bandwidth_bits(std::size_t node_count, std::size_t c = 4);
  static SimConfig for_graph(const Graph& g, std::uint64_t seed);
};

class BandwidthViolation : public std::runtime_error {
 public:
  BandwidthViolation(NodeId node, std::uint64_t step, std::size_t bits, std::size_t limit);
  NodeId node() const { return node_; }
  std::uint64_t step() const { return step_; }
  std::size_t bits() const { return bits_; }

 private:
  NodeId node_;
  std::uint64_t step_;
  std::size_t bits_;
};

template <class State>
struct SimResult {
  std::vector<State> states;
  std::size_t rounds_executed = 0;
  std::size_t total_messages = 0;
  std::size_t max_message_bits = 0;
  bool halted_all = false;
};

namespace detail {
void validate(const SimConfig& cfg);
/// For every adjacency slot (u, port) the slot of the reverse direction.
std::vector<std::size_t> reverse_slots(const Graph& g);
}  // namespace detail

/// Runs `program` on every node of `g` until all nodes halt or max_rounds
/// communication rounds have elapsed. Per-node randomness comes from
/// stream_seed(cfg.seed, id), so the outcome is a function of (g, program,
/// cfg) alone. When `trace` is set, one CSV line "round,node,state-tag,sent"
/// is written per node per step.
template <NodeProgram P>
SimResult<typename P::State> run(const Graph& g, const P& program, const SimConfig& cfg,
                                 std::ostream* trace = nullptr) {
  detail::validate(cfg);
  using State = typename P::State;
  const std::size_t n = g.node_count();
  const std::vector<std::size_t> reverse = detail::reverse_slots(g);

  std::vector<SplitMix64> rngs;
  rngs.reserve(n);
  for (NodeId v = 0; v < n; ++v) rngs.emplace_back(stream_seed(cfg.seed, v));
  auto context = [&](NodeId v) {
    return NodeContext{v, g.degree(v), n, cfg.bandwidth_bits, &rngs[v]};
  };

  SimResult<State> result;
  result.states.reserve(n);
  std::vector<NodeId> live;
  for (NodeId v = 0; v < n; ++v) {
    NodeContext ctx = context(v);
    Started<State> s = program.init(ctx);
    result.states.push_back(std::move(s.state));
    if (!s.halted) live.push_back(v);
  }

  std::vector<std::optional<Message>> inbox_slots(reverse.size());
  std::vector<std::optional<Message>> outbox_slots(reverse.size());
  std::vector<std::size_t> delivered;
  std::vector<std::size_t> sent;
  std::vector<Incoming> inbox;
  std::vector<NodeId> still_live;
  if (trace != nullptr) *trace << "round,node,state-tag,sent-count\n";

  for (std::uint64_t step = 0;; ++step) {
    still_live.clear();
    for (NodeId v : live) {
      const std::size_t base = g.slot_offset(v);
      const std::size_t deg = g.degree(v);
      inbox.clear();
      for (std::size_t p = 0; p < deg; ++p) {
        if (inbox_slots[base + p]) {
          inbox.push_back({static_cast<std::uint32_t>(p), *inbox_slots[base + p]});
        }
      }
      Outbox out(std::span<std::optional<Message>>(outbox_slots).subspan(base, deg));
      NodeContext ctx = context(v);
      const bool halted = program.step(result.states[v], ctx, step, inbox, out);
      std::size_t count = 0;
      for (std::size_t p = 0; p < deg; ++p) {
        if (!outbox_slots[base + p]) continue;
        const std::size_t bits = outbox_slots[base + p]->size_bits();
        if (cfg.enforce_bandwidth && bits > cfg.bandwidth_bits) {
          throw BandwidthViolation(v, step, bits, cfg.bandwidth_bits);
        }
        result.max_message_bits = std::max(result.max_message_bits, bits);
        sent.push_back(base + p);
        ++count;
      }
      if (trace != nullptr) {
        *trace << step << ',' << v << ',' << program.state_tag(result.states[v]) << ',' << count
               << '\n';
      }
      if (!halted) still_live.push_back(v);
    }
    for (std::size_t slot : delivered) inbox_slots[slot].reset();
    delivered.clear();
    live.swap(still_live);

    if (live.empty() || result.rounds_executed == cfg.max_rounds) {
      for (std::size_t slot : sent) outbox_slots[slot].reset();
      break;
    }
    ++result.rounds_executed;
    result.total_messages += sent.size();
    for (std::size_t slot : sent) {
      inbox_slots[reverse[slot]] = std::move(outbox_slots[slot]);
      outbox_slots[slot].reset();
      delivered.push_back(reverse[slot]);
    }
    sent.clear();
  }
  result.halted_all = live.empty();
  return result;
}

}  // namespace arbomis
