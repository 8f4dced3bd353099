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

#include "arbomis/experiment.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>

#include "json.hpp"

namespace arbomis {
namespace {

TEST(GraphSpecTest, ParsesForestUnion) {
  GraphSpec s = parse_graph_spec("forest-union:n=1024,alpha=2,seed=7");
  EXPECT_EQ(s.kind, "forest-union");
  EXPECT_EQ(s.n, 1024u);
  EXPECT_EQ(s.alpha, 2u);
  EXPECT_EQ(s.seed, 7u);
  EXPECT_EQ(parse_graph_spec(s.to_string()).to_string(), s.to_string());
  Graph g = build_graph(s);
  EXPECT_EQ(g.node_count(), 1024u);
  EXPECT_EQ(g, build_graph(s));
}

TEST(GraphSpecTest, OtherKinds) {
  EXPECT_EQ(build_graph(parse_graph_spec("path:n=5")).edge_count(), 4u);
  EXPECT_EQ(build_graph(parse_graph_spec("star:n=6")).max_degree(), 5u);
  EXPECT_EQ(build_graph(parse_graph_spec("clique:n=4")).edge_count(), 6u);
  EXPECT_EQ(build_graph(parse_graph_spec("empty:n=3")).edge_count(), 0u);
  EXPECT_EQ(build_graph(parse_graph_spec("tree:n=50,seed=2")).edge_count(), 49u);
}

TEST(GraphSpecTest, Rejects) {
  EXPECT_THROW(parse_graph_spec("torus:n=5"), UsageError);
  EXPECT_THROW(parse_graph_spec("path"), UsageError);
  EXPECT_THROW(parse_graph_spec("path:n=abc"), UsageError);
  EXPECT_THROW(parse_graph_spec("path:n=5,alpha=2"), UsageError);
  EXPECT_THROW(parse_graph_spec("path:n=5,n=6"), UsageError);
  EXPECT_THROW(parse_graph_spec("forest-union:n=5,alpha=0"), UsageError);
  EXPECT_NO_THROW(parse_graph_spec("forest-union:alpha=2", false));
  EXPECT_THROW(parse_graph_spec("forest-union:alpha=2", true), UsageError);
}

TEST(SeedRangeTest, Parses) {
  EXPECT_EQ(parse_seed_range("7"), (std::vector<std::uint64_t>{7}));
  EXPECT_EQ(parse_seed_range("2..5"), (std::vector<std::uint64_t>{2, 3, 4, 5}));
  EXPECT_THROW(parse_seed_range("5..2"), UsageError);
  EXPECT_THROW(parse_seed_range("x"), UsageError);
  EXPECT_THROW(parse_seed_range("1..2..3"), UsageError);
}

TEST(AlgorithmTest, RoundTrip) {
  for (Algorithm a : {Algorithm::kLuby, Algorithm::kMetivier, Algorithm::kArbMis}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_THROW(parse_algorithm("greedy"), UsageError);
}

TEST(RunOneTest, CsvIsDeterministic) {
  Graph g = build_graph(parse_graph_spec("forest-union:n=3000,alpha=2,seed=4"));
  RunOptions opts;
  opts.alpha = 2;
  opts.target_theta = 3;
  RunRow a = run_one(g, opts, 11);
  RunRow b = run_one(g, opts, 11);
  EXPECT_TRUE(a.verified);
  EXPECT_EQ(to_csv(a), to_csv(b));
  EXPECT_EQ(a.rounds_total, a.rounds_shatter + a.rounds_lo + a.rounds_hi + a.rounds_bad);
  EXPECT_EQ(a.mis_size, a.mis.size());
  const std::string header = run_header();
  const std::string row = to_csv(a);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
}

TEST(RunOneTest, Baselines) {
  Graph g = build_graph(parse_graph_spec("tree:n=500,seed=1"));
  for (Algorithm alg : {Algorithm::kLuby, Algorithm::kMetivier}) {
    RunOptions opts;
    opts.algorithm = alg;
    RunRow r = run_one(g, opts, 3);
    EXPECT_TRUE(r.verified);
    EXPECT_EQ(r.rounds_shatter, 0u);
    EXPECT_GT(r.rounds_total, 0u);
  }
}

TEST(RunOneTest, Json) {
  Graph g = make_path(10);
  RunRow r = run_one(g, RunOptions{}, 0);
  auto j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j["n"], 10);
  EXPECT_EQ(j["algorithm"], "arbmis");
  EXPECT_EQ(j["verified"], true);
}

TEST(SweepTest, SummaryRows) {
  std::vector<RunRow> rows;
  for (std::size_t n : {100, 200}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      RunRow r;
      r.n = n;
      r.seed = seed;
      r.rounds_total = n + seed;
      rows.push_back(r);
    }
  }
  auto summary = sweep_summary_csv(rows);
  ASSERT_EQ(summary.size(), 4u);
  EXPECT_EQ(summary[0].rfind("median,100,", 0), 0u);
  EXPECT_EQ(summary[1].rfind("p95,100,", 0), 0u);
  EXPECT_EQ(summary[2].rfind("median,200,", 0), 0u);
  EXPECT_EQ(sweep_header().rfind("row_type,", 0), 0u);
}

TEST(ParallelTest, RunsEveryJobOnce) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_GE(thread_count(), 1u);
}

}  // namespace
}  // namespace arbomis
