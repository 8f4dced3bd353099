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

#include "arbomis/baselines.h"

#include <algorithm>
#include <tuple>

namespace arbomis {
namespace {

using Status = BaselineNode::Status;

std::string_view tag_of(const BaselineNode& s) {
  switch (s.status) {
    case Status::kUndecided:
      return "undecided";
    case Status::kInMis:
      return "in_mis";
    case Status::kEliminated:
      return "eliminated";
  }
  return "?";
}

Started<BaselineNode> start(const NodeContext& ctx) {
  BaselineNode s;
  s.ports.resize(ctx.degree);
  for (std::uint32_t i = 0; i < ctx.degree; ++i) s.ports[i] = i;
  return {std::move(s), false};
}

// Returns true when some neighbor announced a join.
bool check_eliminated(BaselineNode& s, std::span<const Incoming> inbox, unsigned join_tag,
                      std::uint32_t iteration) {
  for (const Incoming& in : inbox) {
    if (in.msg.tag() == join_tag) {
      s.status = Status::kEliminated;
      s.decided_iteration = iteration;
      return true;
    }
  }
  return false;
}

void learn_ports(BaselineNode& s, std::span<const Incoming> inbox, unsigned tag) {
  s.ports.clear();
  for (const Incoming& in : inbox) {
    if (in.msg.tag() == tag) s.ports.push_back(in.port);
  }
  s.deg = static_cast<std::uint32_t>(s.ports.size());
}

unsigned payload_bits(const NodeContext& ctx, unsigned tag_bits) {
  const std::size_t room = ctx.bandwidth_bits > tag_bits ? ctx.bandwidth_bits - tag_bits : 1;
  return static_cast<unsigned>(std::clamp<std::size_t>(room, 1, 63));
}

template <class P>
BaselineRun collect(const Graph& g, const P& program, const SimConfig& cfg,
                    std::ostream* trace) {
  auto sim = run(g, program, cfg, trace);
  BaselineRun out;
  out.rounds = sim.rounds_executed;
  out.total_messages = sim.total_messages;
  out.max_message_bits = sim.max_message_bits;
  out.halted_all = sim.halted_all;
  for (NodeId v = 0; v < sim.states.size(); ++v) {
    const BaselineNode& s = sim.states[v];
    if (s.status == Status::kInMis) out.mis.push_back(v);
    out.iterations = std::max<std::size_t>(out.iterations, s.decided_iteration);
  }
  return out;
}

}  // namespace

// Métivier. Even steps: drop out on a join notice, else send a priority.
// Odd steps: compare and possibly join.
Started<BaselineNode> MetivierProgram::init(NodeContext& ctx) const { return start(ctx); }

bool MetivierProgram::step(State& s, NodeContext& ctx, std::uint64_t t,
                           std::span<const Incoming> inbox, Outbox& out) const {
  constexpr unsigned kPriority = 0, kJoin = 1;
  const auto iteration = static_cast<std::uint32_t>(t / 2 + 1);
  if (t % 2 == 0) {
    if (check_eliminated(s, inbox, kJoin, iteration - 1)) return true;
    const unsigned bits = payload_bits(ctx, kTagBits);
    s.priority = ctx.rng->nonzero_bits(bits);
    out.send_all(s.ports, Message(kPriority, kTagBits).with(s.priority, bits));
    return false;
  }
  learn_ports(s, inbox, kPriority);
  for (const Incoming& in : inbox) {
    if (in.msg.field(0) >= s.priority) return false;
  }
  s.status = Status::kInMis;
  s.decided_iteration = iteration;
  out.send_all(s.ports, Message(kJoin, kTagBits));
  return true;
}

std::string_view MetivierProgram::state_tag(const State& s) const { return tag_of(s); }

// Luby. Step 3j: drop out on a join notice, else ping. 3j + 1: count
// undecided neighbors and mark. 3j + 2: marked nodes compare and join.
Started<BaselineNode> LubyProgram::init(NodeContext& ctx) const { return start(ctx); }

bool LubyProgram::step(State& s, NodeContext& ctx, std::uint64_t t,
                       std::span<const Incoming> inbox, Outbox& out) const {
  constexpr unsigned kPing = 0, kMark = 1, kJoin = 2;
  const auto iteration = static_cast<std::uint32_t>(t / 3 + 1);
  const unsigned width = field_width(ctx.node_count > 1 ? ctx.node_count - 1 : 1);
  switch (t % 3) {
    case 0:
      if (check_eliminated(s, inbox, kJoin, iteration - 1)) return true;
      out.send_all(s.ports, Message(kPing, kTagBits));
      return false;
    case 1:
      learn_ports(s, inbox, kPing);
      s.marked = s.deg == 0 || ctx.rng->bernoulli(1.0 / (2.0 * s.deg));
      if (s.marked) {
        out.send_all(s.ports, Message(kMark, kTagBits).with(s.deg, width).with(ctx.id, width));
      }
      return false;
    default: {
      if (!s.marked) return false;
      const auto mine = std::make_tuple(std::uint64_t{s.deg}, std::uint64_t{ctx.id});
      for (const Incoming& in : inbox) {
        if (in.msg.tag() == kMark && std::make_tuple(in.msg.field(0), in.msg.field(1)) > mine) {
          return false;
        }
      }
      s.status = Status::kInMis;
      s.decided_iteration = iteration;
      out.send_all(s.ports, Message(kJoin, kTagBits));
      return true;
    }
  }
}

std::string_view LubyProgram::state_tag(const State& s) const { return tag_of(s); }

MetivierProgram metivier_program() { return {}; }
LubyProgram luby_program() { return {}; }

BaselineRun run_metivier(const Graph& g, const SimConfig& cfg, std::ostream* trace) {
  return collect(g, MetivierProgram{}, cfg, trace);
}

BaselineRun run_luby(const Graph& g, const SimConfig& cfg, std::ostream* trace) {
  return collect(g, LubyProgram{}, cfg, trace);
}

}  // namespace arbomis
