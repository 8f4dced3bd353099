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

#include "arbomis/simulator.h"

#include <fmt/format.h>

namespace arbomis {

Message::Message(unsigned tag, unsigned tag_bits)
    : tag_(static_cast<std::uint8_t>(tag)), tag_bits_(static_cast<std::uint8_t>(tag_bits)) {
  if (tag_bits > 8 || (tag_bits < 8 && tag >= (1u << tag_bits) && !(tag == 0 && tag_bits == 0))) {
    throw std::invalid_argument(fmt::format("tag {} does not fit in {} bits", tag, tag_bits));
  }
}

Message& Message::with(std::uint64_t value, unsigned width) {
  if (count_ == kMaxFields) throw std::invalid_argument("too many message fields");
  if (width == 0 || width > 64 || (width < 64 && (value >> width) != 0)) {
    throw std::invalid_argument(fmt::format("value {} does not fit in {} bits", value, width));
  }
  widths_[count_] = static_cast<std::uint8_t>(width);
  fields_[count_] = value;
  ++count_;
  return *this;
}

std::size_t Message::size_bits() const {
  std::size_t bits = tag_bits_;
  for (std::size_t i = 0; i < count_; ++i) bits += widths_[i];
  return bits;
}

std::vector<std::uint8_t> Message::serialize() const {
  std::vector<std::uint8_t> out((size_bits() + 7) / 8, 0);
  std::size_t pos = 0;
  auto put = [&](std::uint64_t value, unsigned width) {
    for (unsigned b = width; b-- > 0;) {
      if ((value >> b) & 1u) out[pos / 8] |= static_cast<std::uint8_t>(0x80u >> (pos % 8));
      ++pos;
    }
  };
  put(tag_, tag_bits_);
  for (std::size_t i = 0; i < count_; ++i) put(fields_[i], widths_[i]);
  return out;
}

void Outbox::send(std::uint32_t port, const Message& m) {
  if (port >= slots_.size()) throw std::out_of_range(fmt::format("no port {}", port));
  if (slots_[port]) throw std::logic_error(fmt::format("second message on port {}", port));
  slots_[port] = m;
}

void Outbox::broadcast(const Message& m) {
  for (std::uint32_t p = 0; p < slots_.size(); ++p) send(p, m);
}

void Outbox::send_all(std::span<const std::uint32_t> ports, const Message& m) {
  for (std::uint32_t p : ports) send(p, m);
}

std::size_t SimConfig::default_bandwidth_bits(std::size_t node_count, std::size_t c) {
  std::size_t log2n = node_count <= 1 ? 0 : std::bit_width(node_count - 1);
  return std::max<std::size_t>(1, c * log2n);
}

SimConfig SimConfig::for_graph(const Graph& g, std::uint64_t seed) {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.bandwidth_bits = default_bandwidth_bits(g.node_count());
  return cfg;
}

BandwidthViolation::BandwidthViolation(NodeId node, std::uint64_t step, std::size_t bits,
                                       std::size_t limit)
    : std::runtime_error(fmt::format("bandwidth violation: node {} sent {} bits in round {} "
                                     "(limit {})",
                                     node, bits, step + 1, limit)),
      node_(node),
      step_(step),
      bits_(bits) {}

namespace detail {

void validate(const SimConfig& cfg) {
  if (cfg.max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
  if (cfg.bandwidth_bits < 1) throw std::invalid_argument("bandwidth_bits must be at least 1");
}

std::vector<std::size_t> reverse_slots(const Graph& g) {
  std::vector<std::size_t> rev(2 * g.edge_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto nb = g.neighbors(u);
    for (std::size_t p = 0; p < nb.size(); ++p) {
      rev[g.slot_offset(u) + p] = g.slot_offset(nb[p]) + g.port_of(nb[p], u);
    }
  }
  return rev;
}

}  // namespace detail
}  // namespace arbomis
