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

#include "arbomis/readk.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace arbomis {
namespace {

// Y_1 = Y_2 = X_1.
ReadKFamily duplicated(double p) {
  ReadKFamily f;
  f.m = 1;
  f.k = 2;
  f.q = {p};
  f.read_sets = {{0}, {0}};
  f.tables = {{0, 1}, {0, 1}};
  f.label = "duplicated";
  return f;
}

TEST(ReadKBuilderTest, ReadOnceIsDisjoint) {
  ReadKFamily f = build_equal_marginal_family(4, 4, 1, 0.5, 1);
  EXPECT_NO_THROW(f.validate());
  EXPECT_EQ(f.max_read_count(), 1u);
  std::vector<std::uint32_t> all;
  for (const auto& r : f.read_sets) all.insert(all.end(), r.begin(), r.end());
  std::sort(all.begin(), all.end());
  EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
  for (double m : f.marginals()) EXPECT_NEAR(m, 0.5, 0x1.0p-20);
}

TEST(ReadKBuilderTest, MarginalsHitTarget) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ReadKFamily f = build_equal_marginal_family(6, 10, 3, 0.3, seed);
    EXPECT_NO_THROW(f.validate());
    EXPECT_LE(f.max_read_count(), 3u);
    for (std::size_t j = 0; j < f.n(); ++j) EXPECT_NEAR(f.marginal(j), 0.3, 0x1.0p-20);
  }
}

TEST(ReadKBuilderTest, Errors) {
  EXPECT_THROW(build_equal_marginal_family(7, 2, 3, 0.3, 0), ReadKError);
  EXPECT_THROW(build_equal_marginal_family(2, 2, 1, 1.5, 0), ReadKError);
  EXPECT_THROW(build_equal_marginal_family(0, 2, 1, 0.5, 0), ReadKError);
  ReadKFamily f = duplicated(0.5);
  f.k = 1;
  EXPECT_THROW(f.validate(), ReadKError);
}

TEST(ReadKBuilderTest, Deterministic) {
  ReadKFamily a = build_equal_marginal_family(8, 10, 2, 0.4, 77);
  ReadKFamily b = build_equal_marginal_family(8, 10, 2, 0.4, 77);
  EXPECT_EQ(a.read_sets, b.read_sets);
  EXPECT_EQ(a.tables, b.tables);
  EXPECT_EQ(a.q, b.q);
}

TEST(ExactConjunctionTest, IndependentIndicators) {
  ReadKFamily f;
  f.m = 5;
  f.k = 1;
  f.q.assign(5, 0.3);
  for (std::uint32_t i = 0; i < 5; ++i) {
    f.read_sets.push_back({i});
    f.tables.push_back({0, 1});
  }
  EXPECT_NEAR(static_cast<double>(exact_conjunction(f)), std::pow(0.3, 5), 1e-15);
  BoundReport r = conjunction_report(f);
  EXPECT_LE(std::abs(r.margin()), kConjunctionSlack);
  EXPECT_TRUE(r.satisfied);
}

TEST(ExactConjunctionTest, DuplicatedIndicatorIsTight) {
  ReadKFamily f = duplicated(0.37);
  EXPECT_NEAR(static_cast<double>(exact_conjunction(f)), 0.37, 1e-15);
  BoundReport r = conjunction_report(f);
  EXPECT_NEAR(r.bound, 0.37, 1e-15);
  EXPECT_LE(std::abs(r.margin()), kConjunctionSlack);
}

TEST(ExactConjunctionTest, BuiltFamiliesRespectBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ReadKFamily f = build_equal_marginal_family(6, 10, 3, 0.3, seed);
    BoundReport r = conjunction_report(f);
    EXPECT_NEAR(r.bound, 0.09, 1e-6);
    EXPECT_LE(r.estimate, r.bound + kConjunctionSlack);
    EXPECT_TRUE(r.satisfied);
  }
}

TEST(ExactConjunctionTest, TooManyVariables) {
  ReadKFamily f = build_equal_marginal_family(30, 30, 1, 0.5, 0);
  EXPECT_THROW(exact_conjunction(f), ReadKError);
  BoundReport mc = mc_conjunction(f, 10000, 1);
  EXPECT_TRUE(mc.satisfied);
}

TEST(ExactConjunctionTest, MonteCarloAgrees) {
  ReadKFamily f = build_equal_marginal_family(5, 8, 2, 0.6, 4);
  const double exact = static_cast<double>(exact_conjunction(f));
  BoundReport mc = mc_conjunction(f, 200000, 9);
  EXPECT_NEAR(mc.estimate, exact, 2 * mc.half_width + 1e-3);
}

TEST(MonteCarloTest, HistogramIsADistribution) {
  ReadKFamily f = build_equal_marginal_family(6, 10, 3, 0.3, 2);
  auto h = sample_histogram(f, 20000, 3);
  ASSERT_EQ(h.size(), f.n() + 1);
  EXPECT_EQ(std::accumulate(h.begin(), h.end(), std::size_t{0}), 20000u);
  EXPECT_EQ(h, sample_histogram(f, 20000, 3));
}

TEST(MonteCarloTest, TailExamples) {
  ReadKFamily f = build_equal_marginal_family(6, 10, 3, 0.3, 5);
  const std::vector<double> eps = {0.15, 0.5};
  const std::vector<double> deltas = {0.0};
  auto reports = mc_tail(f, 100000, 11, eps, deltas);
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_EQ(reports[0].kind, "tail_epsilon");
  EXPECT_TRUE(reports[0].satisfied);
  // eps above p: the threshold is negative, so the event is empty.
  EXPECT_EQ(reports[1].estimate, 0.0);
  EXPECT_TRUE(reports[1].satisfied);
  EXPECT_EQ(reports[2].kind, "tail_delta");
  EXPECT_EQ(reports[2].bound, 1.0);
  EXPECT_TRUE(reports[2].satisfied);
}

TEST(MonteCarloTest, CdfIsMonotone) {
  ReadKFamily f = build_equal_marginal_family(10, 12, 2, 0.5, 8);
  std::vector<double> eps;
  for (int i = 0; i <= 10; ++i) eps.push_back(0.05 * i);
  auto reports = mc_tail(f, 20000, 2, eps, {});
  for (std::size_t i = 1; i < reports.size(); ++i) {
    EXPECT_LE(reports[i].estimate, reports[i - 1].estimate);
  }
}

TEST(MonteCarloTest, RequiresEnoughSamples) {
  ReadKFamily f = duplicated(0.5);
  const std::vector<double> eps = {0.1};
  EXPECT_THROW(mc_tail(f, 100, 0, eps, {}), std::invalid_argument);
}

TEST(SimulationFamilyTest, StarLeavesHaveNoChildren) {
  Graph g = make_star(4);
  Orientation o;
  o.parents = {{}, {0}, {0}, {0}};
  o.out_bound = 1;
  const std::vector<NodeId> leaves = {1, 2, 3};
  ReadKFamily f = family_from_simulation(g, o, EventKind::kChildWin, leaves);
  EXPECT_EQ(f.k, 1u);
  for (double m : f.marginals()) EXPECT_EQ(m, 0.0);
  EXPECT_EQ(f.label, "heuristic hypothesis");
}

TEST(SimulationFamilyTest, PathParentWinReadsMiddleTwice) {
  Graph g = make_path(3);
  Orientation o;
  o.parents = {{1}, {2}, {}};
  o.out_bound = 1;
  const std::vector<NodeId> targets = {0, 1};
  ReadKFamily f = family_from_simulation(g, o, EventKind::kParentWin, targets, 4);
  EXPECT_EQ(f.k, 2u);
  EXPECT_EQ(f.max_read_count(), 2u);
  EXPECT_NO_THROW(f.validate());
  // Pr[r(a) > r(b)] for 4-bit priorities: (1 - 1/16) / 2.
  EXPECT_NEAR(f.marginal(0), 15.0 / 32.0, 1e-12);
}

TEST(SimulationFamilyTest, ArboricityTwoGadget) {
  // Three children, each with two of the three parents 3, 4, 5.
  Graph g = Graph::from_edges(6, std::vector<Edge>{{0, 3}, {0, 4}, {1, 4}, {1, 5}, {2, 3}, {2, 5}});
  Orientation o;
  o.parents = {{3, 4}, {4, 5}, {3, 5}, {}, {}, {}};
  o.out_bound = 2;
  const std::vector<NodeId> targets = {3, 4, 5};
  ReadKFamily f = family_from_simulation(g, o, EventKind::kChildWin, targets, 4);
  EXPECT_EQ(f.k, 2u);
  EXPECT_EQ(f.m, 24u);
  // 1 - sum_{j=1}^{16} j^2 / 16^3
  const double p = 0.634765625;
  for (double m : f.marginals()) EXPECT_NEAR(m, p, 1e-12);

  // Direct enumeration over the 16^6 priority vectors.
  std::uint64_t hits = 0;
  for (std::uint32_t x = 0; x < (1u << 24); ++x) {
    auto r = [&](int v) { return (x >> (4 * v)) & 15u; };
    if (r(3) < std::max(r(0), r(2)) && r(4) < std::max(r(0), r(1)) &&
        r(5) < std::max(r(1), r(2))) {
      ++hits;
    }
  }
  const double truth = static_cast<double>(hits) / static_cast<double>(1u << 24);
  EXPECT_NEAR(static_cast<double>(exact_conjunction(f)), truth, 1e-12);
  EXPECT_LE(truth, std::pow(p, 1.5));
}

TEST(RegressionSuiteTest, Shape) {
  auto suite = regression_suite();
  ASSERT_EQ(suite.size(), 50u);
  std::size_t tight = 0;
  for (const FamilySpec& s : suite) {
    EXPECT_LE(s.m, ReadKFamily::kMaxExactVariables);
    EXPECT_LE(s.n, s.m * s.k);
    if (s.tight) ++tight;
  }
  EXPECT_GT(tight, 0u);
}

TEST(CsvTest, HeaderAndRow) {
  EXPECT_EQ(bound_report_header(),
            "kind,n,m,k,p,epsilon_or_delta,estimate,half_width,bound,satisfied");
  BoundReport r = conjunction_report(duplicated(0.5));
  const std::string row = to_csv(r);
  EXPECT_EQ(row.rfind("conjunction_", 0), 0u);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 9);
}

}  // namespace
}  // namespace arbomis
