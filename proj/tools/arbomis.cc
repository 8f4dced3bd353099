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

// Command-line driver: gen, run, sweep, readk, verify.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "arbomis/experiment.h"
#include "arbomis/graph.h"
#include "arbomis/readk.h"
#include "arbomis/verify.h"

namespace {

using namespace arbomis;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Output sink: a file when a path is given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::ios_base::failure("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void line(const std::string& s) { stream() << s << '\n'; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Common {
  std::string graph;
  std::string input;
  std::string algorithm = "arbmis";
  std::size_t alpha = 0;
  double p_const = 1.0;
  double const_scale = 1.0;
  std::optional<std::size_t> target_theta;
  std::string seeds = "0";
  std::string output;
  bool json = false;
  bool verify = false;
};

void add_run_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--algorithm,-a", c.algorithm, "luby, metivier or arbmis");
  cmd->add_option("--alpha", c.alpha, "arboricity parameter (default: from the graph spec)");
  cmd->add_option("--p-const", c.p_const, "iteration constant p (>= 1)");
  cmd->add_option("--const-scale", c.const_scale, "constant multiplier (1 = faithful)");
  cmd->add_option("--target-theta", c.target_theta, "pick const_scale so that theta matches");
  cmd->add_option("--seeds,-s", c.seeds, "seed or inclusive range a..b");
  cmd->add_option("--output,-o", c.output, "output file (default stdout)");
  cmd->add_flag("--json", c.json, "emit JSON lines instead of CSV");
  cmd->add_flag("--verify", c.verify, "print violations of failed runs as JSON lines on stderr");
}

RunOptions run_options(const Common& c, std::size_t spec_alpha) {
  RunOptions o;
  o.algorithm = parse_algorithm(c.algorithm);
  o.alpha = c.alpha != 0 ? c.alpha : spec_alpha;
  o.p_const = c.p_const;
  o.const_scale = c.const_scale;
  o.target_theta = c.target_theta;
  if (!(o.p_const >= 1.0)) throw UsageError("--p-const must be at least 1");
  if (!(o.const_scale > 0.0)) throw UsageError("--const-scale must be positive");
  return o;
}

void report_violations(const Graph& g, const RunRow& row) {
  for (const Violation& v : verify_mis(g, row.mis)) std::cerr << v.to_json() << '\n';
}

int cmd_gen(const Common& c) {
  const Graph g = build_graph(parse_graph_spec(c.graph));
  Output out(c.output);
  out.stream() << write_edge_list(g);
  return kExitOk;
}

int cmd_run(const Common& c, const std::string& trace_path) {
  Graph g;
  std::size_t spec_alpha = 1;
  if (!c.input.empty()) {
    g = read_edge_list(read_file(c.input));
  } else if (!c.graph.empty()) {
    const GraphSpec spec = parse_graph_spec(c.graph);
    spec_alpha = spec.alpha;
    g = build_graph(spec);
  } else {
    throw UsageError("run needs --graph or --input");
  }
  const RunOptions opts = run_options(c, spec_alpha);
  const std::vector<std::uint64_t> seeds = parse_seed_range(c.seeds);
  std::unique_ptr<std::ofstream> trace;
  if (!trace_path.empty()) {
    if (seeds.size() != 1) throw UsageError("--trace needs a single seed");
    trace = std::make_unique<std::ofstream>(trace_path);
    if (!*trace) throw std::ios_base::failure("cannot write " + trace_path);
  }
  Output out(c.output);
  if (!c.json) out.line(run_header());
  bool ok = true;
  for (std::uint64_t seed : seeds) {
    const RunRow row = run_one(g, opts, seed, trace.get());
    out.line(c.json ? to_json(row) : to_csv(row));
    if (!row.verified) {
      ok = false;
      if (c.verify) report_violations(g, row);
    }
  }
  return ok ? kExitOk : kExitViolation;
}

std::vector<std::size_t> parse_sizes(const std::string& sizes, const std::string& log2_sizes) {
  std::vector<std::size_t> out;
  if (!log2_sizes.empty()) {
    for (std::uint64_t e : parse_seed_range(log2_sizes)) {
      if (e > 30) throw UsageError("log2 size above 30");
      out.push_back(std::size_t{1} << e);
    }
  }
  std::stringstream ss(sizes);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(parse_seed_range(item).front());
  }
  if (out.empty()) throw UsageError("sweep needs --sizes or --log2-sizes");
  for (std::size_t n : out) {
    if (n == 0) throw UsageError("sizes must be positive");
  }
  return out;
}

int cmd_sweep(const Common& c, const std::string& sizes, const std::string& log2_sizes) {
  if (c.graph.empty()) throw UsageError("sweep needs --graph");
  const GraphSpec base = parse_graph_spec(c.graph, /*require_n=*/false);
  const RunOptions opts = run_options(c, base.alpha);
  const std::vector<std::size_t> ns = parse_sizes(sizes, log2_sizes);
  const std::vector<std::uint64_t> seeds = parse_seed_range(c.seeds);

  // Each (n, seed) point draws its graph with the run seed.
  std::vector<RunRow> rows(ns.size() * seeds.size());
  std::vector<char> failed(rows.size(), 0);
  parallel_for(rows.size(), [&](std::size_t i) {
    GraphSpec spec = base;
    spec.n = ns[i / seeds.size()];
    spec.seed = seeds[i % seeds.size()];
    const Graph g = build_graph(spec);
    rows[i] = run_one(g, opts, seeds[i % seeds.size()]);
    if (!rows[i].verified && c.verify) report_violations(g, rows[i]);
    rows[i].mis.clear();
  });
  Output out(c.output);
  if (!c.json) out.line(sweep_header());
  bool ok = true;
  for (const RunRow& r : rows) {
    ok = ok && r.verified;
    out.line(c.json ? to_json(r) : sweep_run_csv(r));
  }
  if (!c.json) {
    for (const std::string& s : sweep_summary_csv(rows)) out.line(s);
  }
  return ok ? kExitOk : kExitViolation;
}

struct ReadKArgs {
  bool suite = true;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  std::optional<std::size_t> n, m, k;
  double p = 0.5;
  std::uint64_t family_seed = 1;
  bool exact = false;
  std::string output;
};

int cmd_readk(const ReadKArgs& a) {
  std::vector<BoundReport> reports;
  std::size_t violations = 0;
  if (a.suite) {
    ReadKSuiteResult r = run_readk_suite(a.samples, a.seed);
    reports = std::move(r.reports);
    violations = r.violations;
  }
  if (a.n || a.m || a.k) {
    if (!a.n || !a.m || !a.k) throw UsageError("a user family needs --n, --m and --k");
    if (a.exact && *a.m > ReadKFamily::kMaxExactVariables) {
      throw UsageError(fmt::format("exact mode supports m <= {}", ReadKFamily::kMaxExactVariables));
    }
    const ReadKFamily f = build_equal_marginal_family(*a.n, *a.m, *a.k, a.p, a.family_seed);
    BoundReport c = a.exact ? conjunction_report(f) : mc_conjunction(f, a.samples, a.seed);
    if (!c.satisfied) ++violations;
    reports.push_back(c);
    const std::vector<double> eps = {0.05, 0.1, 0.2};
    const std::vector<double> deltas = {0.25, 0.5};
    for (BoundReport& r : mc_tail(f, a.samples, a.seed, eps, deltas)) {
      if (!r.satisfied) ++violations;
      reports.push_back(std::move(r));
    }
  }
  Output out(a.output);
  out.line(bound_report_header());
  for (const BoundReport& r : reports) out.line(to_csv(r));
  return violations == 0 ? kExitOk : kExitViolation;
}

int cmd_verify(const std::string& input, const std::string& set_path) {
  const Graph g = read_edge_list(read_file(input));
  std::vector<NodeId> set;
  std::istringstream ss(read_file(set_path));
  for (long long v; ss >> v;) {
    if (v < 0) throw UsageError("negative node id in set file");
    set.push_back(static_cast<NodeId>(v));
  }
  if (!ss.eof()) throw UsageError("set file must hold whitespace-separated node ids");
  const auto violations = verify_mis(g, set);
  for (const Violation& v : violations) std::cout << v.to_json() << '\n';
  return violations.empty() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation harness for distributed MIS on bounded-arboricity graphs"};
  app.require_subcommand(1);
  Common c;
  std::string trace_path, sizes, log2_sizes, set_path;
  ReadKArgs rk;
  bool no_suite = false;

  auto* gen = app.add_subcommand("gen", "generate a graph as an edge list");
  gen->add_option("--graph,-g", c.graph, "generator spec, e.g. forest-union:n=100,alpha=2,seed=1")
      ->required();
  gen->add_option("--output,-o", c.output, "output file (default stdout)");

  auto* run = app.add_subcommand("run", "run one algorithm for each seed");
  run->add_option("--graph,-g", c.graph, "generator spec");
  run->add_option("--input,-i", c.input, "edge-list file");
  run->add_option("--trace", trace_path, "write the per-round trace CSV (single seed)");
  add_run_options(run, c);

  auto* sweep = app.add_subcommand("sweep", "run over a grid of sizes and seeds");
  sweep->add_option("--graph,-g", c.graph, "generator spec without n, e.g. tree:")->required();
  sweep->add_option("--sizes", sizes, "comma-separated node counts");
  sweep->add_option("--log2-sizes", log2_sizes, "range of exponents, e.g. 10..18");
  add_run_options(sweep, c);

  auto* readk = app.add_subcommand("readk", "read-k bound regression suite");
  readk->add_flag("--no-suite", no_suite, "skip the fixed 50-family suite");
  readk->add_option("--samples", rk.samples, "Monte Carlo samples per family (>= 10000)");
  readk->add_option("--seed", rk.seed, "sampling seed");
  readk->add_option("--n", rk.n, "user family: indicator count");
  readk->add_option("--m", rk.m, "user family: base variable count");
  readk->add_option("--k", rk.k, "user family: read bound");
  readk->add_option("--p", rk.p, "user family: common marginal");
  readk->add_option("--family-seed", rk.family_seed, "user family: construction seed");
  readk->add_flag("--exact", rk.exact, "user family: exact conjunction instead of Monte Carlo");
  readk->add_option("--output,-o", rk.output, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "check that a node set is an MIS");
  verify->add_option("--input,-i", c.input, "edge-list file")->required();
  verify->add_option("--set", set_path, "file of node ids")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(c);
    if (*run) return cmd_run(c, trace_path);
    if (*sweep) return cmd_sweep(c, sizes, log2_sizes);
    if (*readk) {
      rk.suite = !no_suite;
      return cmd_readk(rk);
    }
    if (*verify) return cmd_verify(c.input, set_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ReadKError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitUsage;
}
