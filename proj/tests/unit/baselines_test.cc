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

#include <gtest/gtest.h>

#include <cmath>

#include "arbomis/verify.h"

namespace arbomis {
namespace {

SimConfig wide(const Graph& g, std::uint64_t seed) {
  SimConfig cfg = SimConfig::for_graph(g, seed);
  cfg.bandwidth_bits = 64;
  return cfg;
}

TEST(MetivierTest, IsolatedNodeJoinsInFirstIteration) {
  Graph g = make_empty(1);
  BaselineRun r = run_metivier(g, SimConfig::for_graph(g, 3));
  EXPECT_EQ(r.mis, std::vector<NodeId>{0});
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_EQ(r.rounds, 1u);
}

TEST(MetivierTest, EdgeResolvesInOneIteration) {
  Graph g = make_clique(2);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    BaselineRun r = run_metivier(g, wide(g, seed));
    EXPECT_EQ(r.mis.size(), 1u);
    EXPECT_EQ(r.iterations, 1u);
    EXPECT_EQ(r.rounds, 2u);
  }
}

TEST(MetivierTest, PathOfHundred) {
  Graph g = make_path(100);
  const double limit = 8.0 * std::log(100.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    BaselineRun r = run_metivier(g, SimConfig::for_graph(g, seed));
    EXPECT_TRUE(verify_mis(g, r.mis).empty());
    EXPECT_LE(static_cast<double>(r.iterations), limit);
    EXPECT_LE(r.max_message_bits, SimConfig::default_bandwidth_bits(100));
    EXPECT_LE(r.rounds, 2 * r.iterations);
  }
}

TEST(LubyTest, IsolatedNodeJoinsInFirstIteration) {
  Graph g = make_empty(3);
  BaselineRun r = run_luby(g, SimConfig::for_graph(g, 1));
  EXPECT_EQ(r.mis.size(), 3u);
  EXPECT_EQ(r.iterations, 1u);
}

TEST(LubyTest, EdgeGivesOneEndpoint) {
  Graph g = make_clique(2);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    BaselineRun r = run_luby(g, SimConfig::for_graph(g, seed));
    EXPECT_EQ(r.mis.size(), 1u);
    EXPECT_TRUE(r.halted_all);
  }
}

TEST(LubyTest, ForestUnionSweep) {
  Graph g = generate_forest_union(1000, 2, 9);
  double total = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BaselineRun r = run_luby(g, SimConfig::for_graph(g, seed));
    EXPECT_TRUE(verify_mis(g, r.mis).empty());
    EXPECT_LE(r.max_message_bits, SimConfig::default_bandwidth_bits(1000));
    total += static_cast<double>(r.iterations);
  }
  RecordProperty("mean_iterations", std::to_string(total / 20));
}

TEST(BaselinesTest, CliqueAndStar) {
  for (std::size_t n = 1; n <= 8; ++n) {
    Graph k = make_clique(n);
    EXPECT_EQ(run_metivier(k, SimConfig::for_graph(k, n)).mis.size(), 1u);
    EXPECT_EQ(run_luby(k, SimConfig::for_graph(k, n)).mis.size(), 1u);
  }
  Graph s = make_star(9);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BaselineRun r = run_metivier(s, SimConfig::for_graph(s, seed));
    EXPECT_TRUE(verify_mis(s, r.mis).empty());
    EXPECT_TRUE(r.mis.size() == 1 || r.mis.size() == 8);
  }
}

}  // namespace
}  // namespace arbomis
