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

#include "arbomis/forest_mis.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "arbomis/simulator.h"

namespace arbomis {
namespace {

enum Kind : unsigned { kColor = 0, kCand = 1, kJoin = 2 };
constexpr unsigned kTagBits = 2;
constexpr std::uint32_t kNoPort = 0xffffffffu;
constexpr std::uint32_t kNoColor = ForestMisResult::kNoColor;

// Per-node, per-forest port structure of the induced subgraph.
struct Topology {
  std::size_t forests = 0;
  std::vector<std::uint32_t> parent_port;  // [v * forests + f]
  std::vector<std::size_t> child_offset;   // CSR over (v, f)
  std::vector<std::uint32_t> child_ports;

  std::span<const std::uint32_t> children(NodeId v, std::size_t f) const {
    const std::size_t i = v * forests + f;
    return {child_ports.data() + child_offset[i], child_ports.data() + child_offset[i + 1]};
  }
};

enum class ColorOp { kNone, kReduce, kShift, kRecolor };

struct Actions {
  int color_forest = -1;
  ColorOp op = ColorOp::kNone;
  std::uint32_t recolor = 0;
  bool start_forest = false;
  bool send_color = false;
  int cand_forest = -1;
  std::uint32_t cand_class = 0;
  bool eval = false;
};

struct CvNode {
  enum class Status : std::uint8_t { kUndecided, kInMis, kDominated } status = Status::kUndecided;
  std::vector<std::uint32_t> color;
  std::uint32_t prev_color = 0;
  bool candidate = false;
};

class CvProgram {
 public:
  using State = CvNode;

  CvProgram(const Topology& topo, std::size_t n)
      : topo_(topo),
        reductions_(cole_vishkin_reduction_rounds(n)),
        block_(reductions_ + 9),
        width_(field_width(n > 1 ? n - 1 : 1)) {}

  std::size_t main_steps() const { return topo_.forests * block_; }
  std::size_t reductions() const { return reductions_; }

  Actions schedule(std::uint64_t t) const {
    Actions a;
    const std::size_t forests = topo_.forests;
    const std::size_t r = reductions_;
    if (t < main_steps()) {
      const std::size_t f = t / block_;
      const std::size_t j = t % block_;
      a.color_forest = static_cast<int>(f);
      if (j == 0) {
        a.start_forest = true;
        a.eval = f > 0;
      } else if (j <= r) {
        a.op = ColorOp::kReduce;
      } else if (j <= r + 6) {
        const std::size_t s = j - r - 1;  // 0..5: shift, recolor 5, shift, recolor 4, ...
        a.op = s % 2 == 0 ? ColorOp::kShift : ColorOp::kRecolor;
        a.recolor = static_cast<std::uint32_t>(5 - s / 2);
      }
      a.send_color = j <= r + 5;
      if (j >= r + 6) {
        a.cand_forest = j <= r + 8 ? static_cast<int>(f) : -1;
        a.cand_class = static_cast<std::uint32_t>(j - r - 6);
      }
      a.eval = a.eval || j >= r + 7;
      return a;
    }
    const std::size_t u = t - main_steps();
    const std::size_t q = u / 3;
    a.cand_forest = static_cast<int>(q % forests);
    a.cand_class = static_cast<std::uint32_t>(u % 3);
    a.eval = true;
    return a;
  }

  Started<State> init(NodeContext&) const {
    State s;
    s.color.assign(topo_.forests, kNoColor);
    return {std::move(s), false};
  }

  bool step(State& s, NodeContext& ctx, std::uint64_t t, std::span<const Incoming> inbox,
            Outbox& out) const {
    for (const Incoming& in : inbox) {
      if (in.msg.tag() == kJoin) {
        s.status = CvNode::Status::kDominated;
        return true;
      }
    }
    const Actions a = schedule(t);
    if (a.eval && s.candidate) {
      s.candidate = false;
      bool beaten = false;
      for (const Incoming& in : inbox) {
        if (in.msg.tag() == kCand && in.msg.field(0) > ctx.id) beaten = true;
      }
      if (!beaten) {
        s.status = CvNode::Status::kInMis;
        out.broadcast(Message(kJoin, kTagBits));
        return true;
      }
    }
    if (a.color_forest >= 0) {
      const auto f = static_cast<std::size_t>(a.color_forest);
      std::uint32_t& c = s.color[f];
      if (a.start_forest) c = ctx.id;
      const std::uint32_t pport = topo_.parent_port[ctx.id * topo_.forests + f];
      std::optional<std::uint32_t> pc;
      for (const Incoming& in : inbox) {
        if (in.msg.tag() == kColor && in.port == pport) {
          pc = static_cast<std::uint32_t>(in.msg.field(0));
        }
      }
      switch (a.op) {
        case ColorOp::kReduce: {
          // Root: behave as if the parent differed in bit 0.
          const unsigned i = pc ? static_cast<unsigned>(std::countr_zero(c ^ *pc)) : 0u;
          c = 2 * i + ((c >> i) & 1u);
          break;
        }
        case ColorOp::kShift:
          s.prev_color = c;
          c = pc ? *pc : (c == 0 ? 1u : 0u);
          break;
        case ColorOp::kRecolor:
          if (c == a.recolor) {
            c = 0;
            while (c == s.prev_color || (pc && c == *pc)) ++c;
          }
          break;
        case ColorOp::kNone:
          break;
      }
      if (a.send_color) {
        out.send_all(topo_.children(ctx.id, f), Message(kColor, kTagBits).with(c, width_));
      }
    }
    if (a.cand_forest >= 0 && s.color[static_cast<std::size_t>(a.cand_forest)] == a.cand_class) {
      s.candidate = true;
      out.broadcast(Message(kCand, kTagBits).with(ctx.id, width_));
    }
    return false;
  }

  std::string_view state_tag(const State& s) const {
    switch (s.status) {
      case CvNode::Status::kUndecided:
        return s.candidate ? "candidate" : "undecided";
      case CvNode::Status::kInMis:
        return "in_mis";
      case CvNode::Status::kDominated:
        return "dominated";
    }
    return "?";
  }

 private:
  const Topology& topo_;
  std::size_t reductions_;
  std::size_t block_;
  unsigned width_;
};

}  // namespace

std::size_t cole_vishkin_reduction_rounds(std::size_t n) {
  std::size_t k = n;
  std::size_t rounds = 0;
  while (k > 6) {
    k = 2 * static_cast<std::size_t>(std::bit_width(k - 1));
    ++rounds;
  }
  return rounds;
}

std::size_t log_star2(double x) {
  std::size_t count = 0;
  while (x > 1.0) {
    x = std::log2(x);
    ++count;
  }
  return count;
}

ForestMisResult cole_vishkin_forest_mis(const Graph& g, std::span<const NodeId> nodes,
                                        const ForestDecomposition& d,
                                        std::size_t bandwidth_bits) {
  if (d.node_count() != g.node_count()) {
    throw GraphError(fmt::format("decomposition has {} nodes, graph has {}", d.node_count(),
                                 g.node_count()));
  }
  Subgraph sub = induced_subgraph(g, nodes);
  const Graph& h = sub.graph;
  const std::size_t n = h.node_count();

  ForestMisResult result;
  if (h.edge_count() == 0) {
    result.mis = sub.to_global;
    return result;
  }

  Topology topo;
  topo.forests = d.forest_count();
  topo.parent_port.assign(n * topo.forests, kNoPort);
  std::vector<std::vector<std::uint32_t>> children(n * topo.forests);
  for (NodeId v = 0; v < n; ++v) {
    auto nb = h.neighbors(v);
    for (std::uint32_t p = 0; p < nb.size(); ++p) {
      const NodeId gv = sub.to_global[v];
      const NodeId gw = sub.to_global[nb[p]];
      auto f = d.forest_of(gv, gw);
      if (!f) throw GraphError(fmt::format("decomposition does not cover edge ({}, {})", gv, gw));
      if (d.parent(*f, gv) == gw) {
        topo.parent_port[v * topo.forests + *f] = p;
      } else {
        children[v * topo.forests + *f].push_back(p);
      }
    }
  }
  topo.child_offset.push_back(0);
  for (auto& c : children) {
    topo.child_ports.insert(topo.child_ports.end(), c.begin(), c.end());
    topo.child_offset.push_back(topo.child_ports.size());
  }

  CvProgram program(topo, n);
  SimConfig cfg = SimConfig::for_graph(h, 0);
  if (bandwidth_bits != 0) cfg.bandwidth_bits = bandwidth_bits;
  cfg.max_rounds = program.main_steps() + 3 * topo.forests * (n + 1) + 1;
  auto sim = run(h, program, cfg);
  if (!sim.halted_all) throw GraphError("forest MIS did not terminate");

  result.rounds = sim.rounds_executed;
  result.reduction_rounds = program.reductions();
  result.coloring_rounds = program.reductions() + 6;
  result.max_message_bits = sim.max_message_bits;
  if (result.rounds > program.main_steps()) {
    const std::size_t pass = 3 * topo.forests;
    result.extra_passes = (result.rounds - program.main_steps() + pass - 1) / pass;
  }
  result.colors.assign(topo.forests, std::vector<std::uint32_t>(n, kNoColor));
  for (NodeId v = 0; v < n; ++v) {
    const CvNode& s = sim.states[v];
    if (s.status == CvNode::Status::kInMis) result.mis.push_back(sub.to_global[v]);
    for (std::size_t f = 0; f < topo.forests; ++f) result.colors[f][v] = s.color[f];
  }
  return result;
}

ForestMisResult cole_vishkin_forest_mis(const Graph& g, const ForestDecomposition& d,
                                        std::size_t bandwidth_bits) {
  std::vector<NodeId> all(g.node_count());
  for (NodeId v = 0; v < all.size(); ++v) all[v] = v;
  return cole_vishkin_forest_mis(g, all, d, bandwidth_bits);
}

}  // namespace arbomis
