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

#include "arbomis/shattering.h"

#include <algorithm>
#include <cmath>

namespace arbomis {
namespace {

enum Kind : unsigned { kPing = 0, kPriority = 1, kJoin = 2, kDegree = 3 };
constexpr unsigned kTagBits = 2;

struct ShatterNode {
  NodeStatus status = NodeStatus::kActive;
  std::vector<std::uint32_t> ports;  // ports of neighbors believed active
  std::uint32_t deg = 0;
  std::uint64_t priority = 0;
  std::uint64_t exit_point = ShatterRun::kNever;
  bool noncompetitive_join = false;
};

enum class Phase { kPing, kPriority, kJoin, kScaleEndPing, kDegree, kFinal };

class ShatterProgram {
 public:
  using State = ShatterNode;

  ShatterProgram(const ScaleParams& params, std::size_t node_count)
      : p_(params),
        scale_len_(3 * params.lambda + 2),
        degree_bits_(field_width(node_count > 1 ? node_count - 1 : 1)) {
    for (std::size_t k = 1; k <= p_.theta; ++k) rho_.push_back(p_.rho(k));
  }

  Started<State> init(NodeContext& ctx) const {
    State s;
    s.ports.resize(ctx.degree);
    for (std::uint32_t i = 0; i < ctx.degree; ++i) s.ports[i] = i;
    return {std::move(s), p_.theta == 0 || p_.lambda == 0};
  }

  bool step(State& s, NodeContext& ctx, std::uint64_t t, std::span<const Incoming> inbox,
            Outbox& out) const {
    const std::size_t k = t / scale_len_ + 1;
    const std::size_t r = t % scale_len_;
    const std::size_t point_base = (k - 1) * (p_.lambda + 1);

    // The step after a degree exchange applies the bad marking of the scale
    // that just ended.
    if (r == 0 && t > 0) {
      const std::size_t done = k - 1;
      const double high = p_.high_degree_cut(done);
      std::size_t count = 0;
      for (const Incoming& in : inbox) {
        if (in.msg.tag() == kDegree && static_cast<double>(in.msg.field(0)) > high) ++count;
      }
      if (static_cast<double>(count) > p_.bad_count_cut(done)) {
        s.status = NodeStatus::kBad;
        s.exit_point = done * (p_.lambda + 1);
        return true;
      }
      if (k > p_.theta) return true;
    }

    if (r < 3 * p_.lambda) {
      const std::size_t i = r / 3 + 1;
      switch (r % 3) {
        case 0:
          if (eliminated(s, inbox, point_base + i - 1)) return true;
          out.send_all(s.ports, Message(kPing, kTagBits));
          return false;
        case 1: {
          learn_ports(s, inbox, kPing);
          const bool competitive = static_cast<double>(s.deg) <= rho_[k - 1];
          s.priority = competitive ? ctx.rng->nonzero_bits(priority_bits(ctx)) : 0;
          out.send_all(s.ports, Message(kPriority, kTagBits).with(s.priority, priority_bits(ctx)));
          return false;
        }
        default: {
          std::uint64_t best = 0;
          bool any = false;
          for (const Incoming& in : inbox) {
            if (in.msg.tag() != kPriority) continue;
            any = true;
            best = std::max(best, in.msg.field(0));
          }
          if (any && s.priority <= best) return false;
          s.status = NodeStatus::kInI;
          s.exit_point = point_base + i;
          s.noncompetitive_join = s.priority == 0 && s.deg > 0;
          out.send_all(s.ports, Message(kJoin, kTagBits));
          return true;
        }
      }
    }
    if (r == 3 * p_.lambda) {
      if (eliminated(s, inbox, point_base + p_.lambda)) return true;
      out.send_all(s.ports, Message(kPing, kTagBits));
      return false;
    }
    learn_ports(s, inbox, kPing);
    out.send_all(s.ports, Message(kDegree, kTagBits).with(s.deg, degree_bits_));
    return false;
  }

  std::string_view state_tag(const State& s) const { return to_string(s.status); }

 private:
  unsigned priority_bits(const NodeContext& ctx) const {
    const std::size_t room = ctx.bandwidth_bits > kTagBits ? ctx.bandwidth_bits - kTagBits : 1;
    return static_cast<unsigned>(std::clamp<std::size_t>(room, 1, 63));
  }

  static bool eliminated(State& s, std::span<const Incoming> inbox, std::uint64_t point) {
    for (const Incoming& in : inbox) {
      if (in.msg.tag() == kJoin) {
        s.status = NodeStatus::kNeighborOfI;
        s.exit_point = point;
        return true;
      }
    }
    return false;
  }

  static void learn_ports(State& s, std::span<const Incoming> inbox, unsigned kind) {
    s.ports.clear();
    for (const Incoming& in : inbox) {
      if (in.msg.tag() == kind) s.ports.push_back(in.port);
    }
    s.deg = static_cast<std::uint32_t>(s.ports.size());
  }

  ScaleParams p_;
  std::size_t scale_len_;
  unsigned degree_bits_;
  std::vector<double> rho_;
};

}  // namespace

const char* to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::kActive:
      return "active";
    case NodeStatus::kInI:
      return "in_I";
    case NodeStatus::kNeighborOfI:
      return "neighbor_of_I";
    case NodeStatus::kBad:
      return "bad";
  }
  return "?";
}

AlgorithmState AlgorithmState::from_status(const Graph& g, std::vector<NodeStatus> status) {
  AlgorithmState st;
  st.status = std::move(status);
  st.deg_ib.assign(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (NodeId w : g.neighbors(v)) {
      if (st.status[w] == NodeStatus::kActive) ++st.deg_ib[v];
    }
  }
  return st;
}

std::vector<NodeId> AlgorithmState::with_status(NodeStatus s) const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < status.size(); ++v) {
    if (status[v] == s) out.push_back(v);
  }
  return out;
}

AlgorithmState ShatterRun::snapshot(const Graph& g, std::uint64_t point) const {
  std::vector<NodeStatus> status(state.status.size(), NodeStatus::kActive);
  for (NodeId v = 0; v < status.size(); ++v) {
    if (exit_point[v] <= point) status[v] = state.status[v];
  }
  return AlgorithmState::from_status(g, std::move(status));
}

std::vector<NodeId> ShatterRun::marked_bad(std::size_t k) const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < exit_point.size(); ++v) {
    if (state.status[v] == NodeStatus::kBad && exit_point[v] == after_marking(k)) {
      out.push_back(v);
    }
  }
  return out;
}

ShatterRun bounded_arb_independent_set(const Graph& g, const ScaleParams& params,
                                       const SimConfig& cfg, std::ostream* trace) {
  ShatterProgram program(params, g.node_count());
  SimConfig run_cfg = cfg;
  run_cfg.max_rounds = std::max<std::size_t>(1, params.shatter_rounds());
  auto sim = run(g, program, run_cfg, trace);

  ShatterRun out;
  out.params = params;
  out.rounds = sim.rounds_executed;
  out.total_messages = sim.total_messages;
  out.max_message_bits = sim.max_message_bits;
  std::vector<NodeStatus> status;
  status.reserve(g.node_count());
  out.exit_point.reserve(g.node_count());
  for (const ShatterNode& s : sim.states) {
    status.push_back(s.status);
    out.exit_point.push_back(s.exit_point);
    if (s.noncompetitive_join) ++out.noncompetitive_joins;
  }
  out.state = AlgorithmState::from_status(g, std::move(status));
  return out;
}

ShatterRun bounded_arb_independent_set(const Graph& g, const ScaleParams& params,
                                       std::uint64_t seed) {
  return bounded_arb_independent_set(g, params, SimConfig::for_graph(g, seed));
}

HiLoPartition partition_hi_lo(const Graph& g, const AlgorithmState& state,
                              const ScaleParams& params) {
  HiLoPartition out;
  const double threshold = params.lo_threshold();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (state.status[v] != NodeStatus::kActive) continue;
    (static_cast<double>(state.deg_ib[v]) <= threshold ? out.lo : out.hi).push_back(v);
  }
  return out;
}

std::vector<Component> bad_components(const Graph& g, const AlgorithmState& state) {
  std::vector<Component> out;
  std::vector<bool> seen(g.node_count(), false);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (seen[s] || state.status[s] != NodeStatus::kBad) continue;
    Component c;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      c.nodes.push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (!seen[w] && state.status[w] == NodeStatus::kBad) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(c.nodes.begin(), c.nodes.end());
    c.size = c.nodes.size();
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Component& a, const Component& b) { return a.size > b.size; });
  return out;
}

}  // namespace arbomis
