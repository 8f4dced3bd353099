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
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arbomis/graph.h"
#include "arbomis/readk.h"

namespace arbomis {

/// Bad command-line input; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

/// "kind:key=value,..." with kind in forest-union, tree, path, star, clique,
/// empty. Keys: n, alpha (forest-union), seed (forest-union, tree).
struct GraphSpec {
  std::string kind;
  std::optional<std::size_t> n;
  std::size_t alpha = 1;
  std::uint64_t seed = 0;

  std::string to_string() const;
};

/// Parses the whole spec or throws UsageError. With require_n unset the n
/// key may be omitted (sweeps fill it in).
GraphSpec parse_graph_spec(std::string_view text, bool require_n = true);
Graph build_graph(const GraphSpec& spec);

/// "7" or the inclusive range "a..b".
std::vector<std::uint64_t> parse_seed_range(std::string_view text);

enum class Algorithm { kLuby, kMetivier, kArbMis };
Algorithm parse_algorithm(std::string_view text);
const char* to_string(Algorithm a);

struct RunOptions {
  Algorithm algorithm = Algorithm::kArbMis;
  std::size_t alpha = 1;
  double p_const = 1.0;
  double const_scale = 1.0;
  /// When set, const_scale is chosen so that theta equals this value.
  std::optional<std::size_t> target_theta;
  /// Multiplier c of the c * ceil(log2 n) bandwidth.
  std::size_t bandwidth_c = 4;
};

struct RunRow {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t alpha = 0;
  std::size_t delta = 0;
  Algorithm algorithm = Algorithm::kArbMis;
  double p_const = 1.0;
  double const_scale = 1.0;
  std::uint64_t seed = 0;
  std::size_t rounds_total = 0;
  std::size_t rounds_shatter = 0;
  std::size_t rounds_lo = 0;
  std::size_t rounds_hi = 0;
  std::size_t rounds_bad = 0;
  std::size_t mis_size = 0;
  std::size_t bad_count = 0;
  std::size_t max_bad_component = 0;
  std::size_t max_msg_bits = 0;
  bool verified = false;
  /// Iterations of the baselines, theta of arbmis. Not part of the CSV.
  std::size_t iterations = 0;
  std::vector<NodeId> mis;
};

/// One run. Verification failures are reported through `verified`; a
/// bandwidth violation propagates.
RunRow run_one(const Graph& g, const RunOptions& opts, std::uint64_t seed,
               std::ostream* trace = nullptr);

std::string run_header();
std::string to_csv(const RunRow& r);
std::string to_json(const RunRow& r);

/// Sweep CSV: a row_type column in front of the run columns.
std::string sweep_header();
std::string sweep_run_csv(const RunRow& r);
/// Median and nearest-rank 95th percentile of every rounds column for rows
/// sharing one n, in order of first appearance.
std::vector<std::string> sweep_summary_csv(const std::vector<RunRow>& rows);

/// Worker count from ARBOMIS_THREADS (unset or 0: hardware concurrency).
std::size_t thread_count();

/// Runs `count` independent jobs on up to thread_count() threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job);

struct ReadKSuiteResult {
  std::vector<BoundReport> reports;
  std::size_t violations = 0;
};

/// The regression suite: exact conjunction for every family, tight cases
/// checked for equality, and the tail grid with `samples` draws per family.
ReadKSuiteResult run_readk_suite(std::size_t samples, std::uint64_t seed);

}  // namespace arbomis
