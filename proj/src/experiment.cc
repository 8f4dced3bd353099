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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "arbomis/arb_mis.h"
#include "arbomis/baselines.h"
#include "arbomis/rng.h"
#include "arbomis/scale_params.h"
#include "arbomis/verify.h"
#include "json.hpp"

namespace arbomis {
namespace {

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError(fmt::format("invalid {} '{}'", what, text));
  }
  return value;
}

std::string fmt_double(double x) { return fmt::format("{:.10g}", x); }

}  // namespace

std::string GraphSpec::to_string() const {
  std::string out = kind + ":";
  if (n) out += fmt::format("n={}", *n);
  if (kind == "forest-union") out += fmt::format(",alpha={}", alpha);
  if (kind == "forest-union" || kind == "tree") out += fmt::format(",seed={}", seed);
  return out;
}

GraphSpec parse_graph_spec(std::string_view text, bool require_n) {
  GraphSpec spec;
  const std::size_t colon = text.find(':');
  spec.kind = std::string(text.substr(0, colon));
  static const std::vector<std::string> kinds = {"forest-union", "tree",   "path",
                                                 "star",         "clique", "empty"};
  if (std::find(kinds.begin(), kinds.end(), spec.kind) == kinds.end()) {
    throw UsageError(fmt::format("unknown graph kind '{}'", spec.kind));
  }
  std::string_view rest = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  std::vector<std::string_view> seen;
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? "" : rest.substr(comma + 1);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(fmt::format("expected key=value, got '{}'", item));
    }
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      throw UsageError(fmt::format("key '{}' given twice", key));
    }
    seen.push_back(key);
    if (key == "n") {
      spec.n = parse_uint(value, "n");
    } else if (key == "alpha" && spec.kind == "forest-union") {
      spec.alpha = parse_uint(value, "alpha");
    } else if (key == "seed" && (spec.kind == "forest-union" || spec.kind == "tree")) {
      spec.seed = parse_uint(value, "seed");
    } else {
      throw UsageError(fmt::format("unknown key '{}' for {}", key, spec.kind));
    }
  }
  if (require_n && !spec.n) throw UsageError("graph spec needs n");
  if (spec.n && *spec.n == 0) throw UsageError("n must be at least 1");
  if (spec.alpha == 0) throw UsageError("alpha must be at least 1");
  return spec;
}

Graph build_graph(const GraphSpec& spec) {
  if (!spec.n) throw UsageError("graph spec needs n");
  const std::size_t n = *spec.n;
  if (spec.kind == "forest-union") return generate_forest_union(n, spec.alpha, spec.seed);
  if (spec.kind == "tree") return generate_forest_union(n, 1, spec.seed);
  if (spec.kind == "path") return make_path(n);
  if (spec.kind == "star") return make_star(n);
  if (spec.kind == "clique") return make_clique(n);
  return make_empty(n);
}

std::vector<std::uint64_t> parse_seed_range(std::string_view text) {
  const std::size_t dots = text.find("..");
  if (dots == std::string_view::npos) return {parse_uint(text, "seed")};
  const std::uint64_t a = parse_uint(text.substr(0, dots), "seed");
  const std::uint64_t b = parse_uint(text.substr(dots + 2), "seed");
  if (b < a) throw UsageError(fmt::format("empty seed range '{}'", text));
  if (b - a >= 1000000) throw UsageError("seed range too large");
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = a; s <= b; ++s) out.push_back(s);
  return out;
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "luby") return Algorithm::kLuby;
  if (text == "metivier") return Algorithm::kMetivier;
  if (text == "arbmis") return Algorithm::kArbMis;
  throw UsageError(fmt::format("unknown algorithm '{}'", text));
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kLuby:
      return "luby";
    case Algorithm::kMetivier:
      return "metivier";
    case Algorithm::kArbMis:
      return "arbmis";
  }
  return "?";
}

RunRow run_one(const Graph& g, const RunOptions& opts, std::uint64_t seed, std::ostream* trace) {
  RunRow row;
  row.n = g.node_count();
  row.m = g.edge_count();
  row.alpha = opts.alpha;
  row.delta = g.max_degree();
  row.algorithm = opts.algorithm;
  row.p_const = opts.p_const;
  row.const_scale = opts.const_scale;
  row.seed = seed;
  SimConfig cfg = SimConfig::for_graph(g, seed);
  cfg.bandwidth_bits = SimConfig::default_bandwidth_bits(g.node_count(), opts.bandwidth_c);

  if (opts.algorithm != Algorithm::kArbMis) {
    BaselineRun r = opts.algorithm == Algorithm::kLuby ? run_luby(g, cfg, trace)
                                                       : run_metivier(g, cfg, trace);
    row.rounds_total = r.rounds;
    row.iterations = r.iterations;
    row.max_msg_bits = r.max_message_bits;
    row.mis = std::move(r.mis);
  } else {
    if (opts.target_theta && g.max_degree() >= 2) {
      row.const_scale = const_scale_for_theta(opts.alpha, g.max_degree(), *opts.target_theta);
    }
    ArbMisConfig ac;
    ac.alpha = opts.alpha;
    ac.p_const = opts.p_const;
    ac.const_scale = row.const_scale;
    ac.seed = seed;
    ac.bandwidth_bits = cfg.bandwidth_bits;
    ac.trace = trace;
    try {
      MISOutcome out = arb_mis(g, ac);
      row.rounds_total = out.rounds;
      row.rounds_shatter = out.phases.shatter;
      row.rounds_lo = out.phases.lo;
      row.rounds_hi = out.phases.hi;
      row.rounds_bad = out.phases.bad;
      row.bad_count = out.bad_nodes.size();
      row.max_bad_component = out.max_bad_component;
      row.max_msg_bits = out.max_message_bits;
      row.iterations = out.params.theta;
      row.mis = std::move(out.mis);
    } catch (const std::logic_error&) {
      row.verified = false;
      return row;
    }
  }
  row.mis_size = row.mis.size();
  row.verified = verify_mis(g, row.mis).empty();
  return row;
}

std::string run_header() {
  return "n,m,alpha,delta,algorithm,p_const,const_scale,seed,rounds_total,rounds_shatter,"
         "rounds_lo,rounds_hi,rounds_bad,mis_size,bad_count,max_bad_component,max_msg_bits,"
         "verified";
}

std::string to_csv(const RunRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.n, r.m, r.alpha,
                     r.delta, to_string(r.algorithm), fmt_double(r.p_const),
                     fmt_double(r.const_scale), r.seed, r.rounds_total, r.rounds_shatter,
                     r.rounds_lo, r.rounds_hi, r.rounds_bad, r.mis_size, r.bad_count,
                     r.max_bad_component, r.max_msg_bits, r.verified ? "true" : "false");
}

std::string to_json(const RunRow& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["alpha"] = r.alpha;
  j["delta"] = r.delta;
  j["algorithm"] = to_string(r.algorithm);
  j["p_const"] = r.p_const;
  j["const_scale"] = r.const_scale;
  j["seed"] = r.seed;
  j["rounds_total"] = r.rounds_total;
  j["rounds_shatter"] = r.rounds_shatter;
  j["rounds_lo"] = r.rounds_lo;
  j["rounds_hi"] = r.rounds_hi;
  j["rounds_bad"] = r.rounds_bad;
  j["mis_size"] = r.mis_size;
  j["bad_count"] = r.bad_count;
  j["max_bad_component"] = r.max_bad_component;
  j["max_msg_bits"] = r.max_msg_bits;
  j["verified"] = r.verified;
  return j.dump();
}

std::string sweep_header() { return "row_type," + run_header(); }

std::string sweep_run_csv(const RunRow& r) { return "run," + to_csv(r); }

std::vector<std::string> sweep_summary_csv(const std::vector<RunRow>& rows) {
  std::vector<std::size_t> sizes;
  std::map<std::size_t, std::vector<const RunRow*>> by_n;
  for (const RunRow& r : rows) {
    if (by_n[r.n].empty()) sizes.push_back(r.n);
    by_n[r.n].push_back(&r);
  }
  std::vector<std::string> out;
  for (std::size_t n : sizes) {
    const auto& group = by_n[n];
    auto stat = [&](std::size_t RunRow::*field, bool p95) {
      std::vector<std::size_t> v;
      for (const RunRow* r : group) v.push_back(r->*field);
      std::sort(v.begin(), v.end());
      if (p95) {
        const std::size_t rank = (95 * v.size() + 99) / 100;  // ceil(0.95 N)
        return fmt::format("{}", v[std::max<std::size_t>(rank, 1) - 1]);
      }
      const std::size_t h = v.size() / 2;
      return v.size() % 2 ? fmt::format("{}", v[h]) : fmt_double((v[h - 1] + v[h]) / 2.0);
    };
    const RunRow& first = *group.front();
    for (bool p95 : {false, true}) {
      out.push_back(fmt::format("{},{},,{},,{},{},{},,{},{},{},{},{},,,,,", p95 ? "p95" : "median",
                                n, first.alpha, to_string(first.algorithm),
                                fmt_double(first.p_const), fmt_double(first.const_scale),
                                stat(&RunRow::rounds_total, p95), stat(&RunRow::rounds_shatter, p95),
                                stat(&RunRow::rounds_lo, p95), stat(&RunRow::rounds_hi, p95),
                                stat(&RunRow::rounds_bad, p95)));
    }
  }
  return out;
}

std::size_t thread_count() {
  if (const char* env = std::getenv("ARBOMIS_THREADS")) {
    std::size_t value = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job) {
  const std::size_t workers = std::min(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

ReadKSuiteResult run_readk_suite(std::size_t samples, std::uint64_t seed) {
  const std::vector<FamilySpec> suite = regression_suite();
  std::vector<std::vector<BoundReport>> per_family(suite.size());
  const std::vector<double> eps = {0.05, 0.1, 0.2};
  const std::vector<double> deltas = {0.25, 0.5};
  parallel_for(suite.size(), [&](std::size_t i) {
    const FamilySpec& s = suite[i];
    ReadKFamily f = build_equal_marginal_family(s.n, s.m, s.k, s.p, s.seed);
    BoundReport c = conjunction_report(f);
    if (s.tight) {
      c.kind = "conjunction_tight";
      c.satisfied = c.satisfied && c.margin() <= kConjunctionSlack;
    }
    per_family[i].push_back(c);
    for (BoundReport& r : mc_tail(f, samples, stream_seed(seed, i), eps, deltas)) {
      per_family[i].push_back(std::move(r));
    }
  });
  ReadKSuiteResult out;
  for (auto& reports : per_family) {
    for (BoundReport& r : reports) {
      if (!r.satisfied) ++out.violations;
      out.reports.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace arbomis
