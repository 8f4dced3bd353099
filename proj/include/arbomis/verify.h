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
#include <span>
#include <string>
#include <vector>

#include "arbomis/graph.h"
#include "arbomis/orientation.h"
#include "arbomis/scale_params.h"
#include "arbomis/shattering.h"

namespace arbomis {

struct Violation {
  enum class Kind { kIndependence, kMaximality, kInvariant, kOrientation };
  Kind kind = Kind::kIndependence;
  std::vector<NodeId> witness;
  std::string detail;

  /// One-line JSON record.
  std::string to_json() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

const char* to_string(Violation::Kind k);

/// One violation per edge inside `s` and per node outside `s` without a
/// neighbor in `s`. Throws GraphError for ids outside the graph.
std::vector<Violation> verify_mis(const Graph& g, std::span<const NodeId> s);

/// Nodes of the active set whose number of active neighbors of active
/// degree above delta / 2^k + alpha exceeds delta / 2^(k+2). The active
/// degrees are recomputed from state.status; state.deg_ib is not read.
std::vector<Violation> check_invariant(const Graph& g, const AlgorithmState& state,
                                       std::size_t k, const ScaleParams& params);

/// One violation per problem found in the orientation.
std::vector<Violation> verify_orientation(const Graph& g, const Orientation& o);

/// Re-evaluates the predicate named by `v` on its witness.
bool still_violates(const Graph& g, std::span<const NodeId> s, const Violation& v);
bool still_violates(const Graph& g, const AlgorithmState& state, std::size_t k,
                    const ScaleParams& params, const Violation& v);

struct ComponentSizeReport {
  std::size_t max_size = 0;
  double bound = 0.0;
  bool within_bound = true;
};

/// Largest connected component of G[bad] against delta^6 * c * log_delta(n),
/// with delta = max_degree(g). Throws std::invalid_argument when delta < 2.
ComponentSizeReport component_size_report(const Graph& g, std::span<const NodeId> bad,
                                          double c);

/// The bound alone.
double component_size_bound(std::size_t n, std::size_t delta, double c);

}  // namespace arbomis
