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
#include <stdexcept>
#include <string>
#include <vector>

#include "arbomis/graph.h"
#include "arbomis/orientation.h"

namespace arbomis {

class ReadKError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Indicators Y_j = f_j(X restricted to P_j) over independent base bits X_i
/// with Pr[X_i = 1] = q_i. Bit b of a truth-table index holds the value of
/// X at read_sets[j][b].
struct ReadKFamily {
  static constexpr std::size_t kMaxReadSet = 20;
  static constexpr std::size_t kMaxExactVariables = 24;

  std::size_t m = 0;
  std::size_t k = 0;
  std::vector<double> q;
  std::vector<std::vector<std::uint32_t>> read_sets;
  std::vector<std::vector<std::uint8_t>> tables;
  std::string label;

  std::size_t n() const { return read_sets.size(); }
  /// Largest number of read sets containing one base variable.
  std::size_t max_read_count() const;
  /// Throws ReadKError when shapes disagree, a read set is unsorted, out of
  /// range or larger than kMaxReadSet, or some variable is read more than k
  /// times.
  void validate() const;
  /// Exact Pr[Y_j = 1] by summing the truth table against the product measure.
  double marginal(std::size_t j) const;
  std::vector<double> marginals() const;
  bool eval(std::size_t j, std::span<const std::uint8_t> x) const;
};

/// Read-k family of n indicators over m base variables whose exact marginals
/// all equal target_p. Throws ReadKError when n > m * k or an argument is out
/// of range.
ReadKFamily build_equal_marginal_family(std::size_t n, std::size_t m, std::size_t k,
                                        double target_p, std::uint64_t seed);

/// Pr[all Y_j = 1], enumerating every base assignment with pruning. Throws
/// ReadKError when m > kMaxExactVariables; use mc_conjunction then.
long double exact_conjunction(const ReadKFamily& f);

struct BoundReport {
  std::string kind;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  double p = 0.0;
  double parameter = 0.0;  // epsilon or delta; 0 for conjunctions
  double estimate = 0.0;
  double half_width = 0.0;
  double bound = 0.0;
  std::size_t samples = 0;
  bool satisfied = true;
  std::string label;

  double margin() const { return bound - estimate; }
};

/// Tolerance added to the conjunction bound in exact mode.
inline constexpr double kConjunctionSlack = 0x1.0p-30;

/// Exact conjunction against p^(n/k). p is the mean exact marginal, or the
/// minimum one when use_min_marginal is set.
BoundReport conjunction_report(const ReadKFamily& f, bool use_min_marginal = false);

/// Monte Carlo estimate of Pr[all Y_j = 1] with a 99% half-width.
BoundReport mc_conjunction(const ReadKFamily& f, std::size_t samples, std::uint64_t seed,
                           bool use_min_marginal = false);

/// Histogram of Y = sum_j Y_j over `samples` draws: counts[y] for y = 0..n.
std::vector<std::size_t> sample_histogram(const ReadKFamily& f, std::size_t samples,
                                          std::uint64_t seed);

/// Empirical Pr[Y <= (p - eps) n] against exp(-2 eps^2 n / k) for each eps
/// and Pr[Y <= (1 - delta) E[Y]] against exp(-delta^2 E[Y] / (2k)) for each
/// delta. Requires samples >= 10^4.
std::vector<BoundReport> mc_tail(const ReadKFamily& f, std::size_t samples, std::uint64_t seed,
                                 std::span<const double> epsilons,
                                 std::span<const double> deltas);

enum class EventKind { kChildWin, kParentWin };

/// Family of priority events on `targets`: each node draws `bits` uniform
/// bits as its priority. child_win: Y_w = [r(w) < max over children of w],
/// parent_win: Y_w = [r(w) > max over parents of w] (true when w has no
/// parent). k is the exact maximum read count. Only nodes that some event
/// reads get base variables.
ReadKFamily family_from_simulation(const Graph& g, const Orientation& o, EventKind kind,
                                   std::span<const NodeId> targets, unsigned bits = 4);

struct FamilySpec {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  /// Expected to meet the conjunction bound with equality.
  bool tight = false;
};

/// The fixed 50-family regression suite (m <= 24).
std::vector<FamilySpec> regression_suite();

/// CSV header and row.
std::string bound_report_header();
std::string to_csv(const BoundReport& r);

}  // namespace arbomis
