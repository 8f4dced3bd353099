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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "arbomis/rng.h"

namespace arbomis {
namespace {

constexpr double kZ99 = 2.5758293035489004;  // two-sided 99% normal quantile
constexpr std::size_t kChunk = 4096;
constexpr std::size_t kMaxExtras = 3;

long double table_weight(const ReadKFamily& f, std::size_t j, std::size_t index) {
  long double w = 1.0L;
  const auto& reads = f.read_sets[j];
  for (std::size_t b = 0; b < reads.size(); ++b) {
    const long double q = f.q[reads[b]];
    w *= ((index >> b) & 1u) ? q : 1.0L - q;
  }
  return w;
}

// Draws one base assignment per sample, chunk by chunk, and hands the
// indicator values to `visit`.
template <class Visit>
void sample(const ReadKFamily& f, std::size_t samples, std::uint64_t seed, Visit visit) {
  std::vector<std::uint8_t> x(f.m);
  for (std::size_t start = 0, chunk = 0; start < samples; start += kChunk, ++chunk) {
    std::mt19937_64 rng(stream_seed(seed, chunk));
    const std::size_t end = std::min(samples, start + kChunk);
    for (std::size_t s = start; s < end; ++s) {
      for (std::size_t i = 0; i < f.m; ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        x[i] = u < f.q[i] ? 1 : 0;
      }
      visit(x);
    }
  }
}

double half_width(double estimate, std::size_t samples) {
  return kZ99 * std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(samples));
}

double family_p(const ReadKFamily& f, bool use_min) {
  const std::vector<double> marg = f.marginals();
  if (marg.empty()) return 1.0;
  if (use_min) return *std::min_element(marg.begin(), marg.end());
  return std::accumulate(marg.begin(), marg.end(), 0.0) / static_cast<double>(marg.size());
}

}  // namespace

std::size_t ReadKFamily::max_read_count() const {
  std::vector<std::size_t> count(m, 0);
  for (const auto& reads : read_sets) {
    for (std::uint32_t i : reads) {
      if (i < m) ++count[i];
    }
  }
  return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

void ReadKFamily::validate() const {
  if (q.size() != m) throw ReadKError(fmt::format("{} probabilities for {} variables", q.size(), m));
  for (double qi : q) {
    if (!(qi >= 0.0 && qi <= 1.0)) throw ReadKError(fmt::format("probability {} out of range", qi));
  }
  if (tables.size() != read_sets.size()) throw ReadKError("one truth table per indicator required");
  for (std::size_t j = 0; j < read_sets.size(); ++j) {
    const auto& reads = read_sets[j];
    if (reads.size() > kMaxReadSet) {
      throw ReadKError(fmt::format("indicator {} reads {} variables, limit {}", j, reads.size(),
                                   kMaxReadSet));
    }
    for (std::size_t b = 0; b < reads.size(); ++b) {
      if (reads[b] >= m) throw ReadKError(fmt::format("indicator {} reads variable {}", j, reads[b]));
      if (b > 0 && reads[b] <= reads[b - 1]) {
        throw ReadKError(fmt::format("read set of indicator {} is not strictly increasing", j));
      }
    }
    if (tables[j].size() != (std::size_t{1} << reads.size())) {
      throw ReadKError(fmt::format("truth table of indicator {} has the wrong size", j));
    }
  }
  if (max_read_count() > k) {
    throw ReadKError(fmt::format("a variable is read {} times, bound is {}", max_read_count(), k));
  }
}

double ReadKFamily::marginal(std::size_t j) const {
  long double sum = 0.0L;
  for (std::size_t idx = 0; idx < tables[j].size(); ++idx) {
    if (tables[j][idx]) sum += table_weight(*this, j, idx);
  }
  return static_cast<double>(sum);
}

std::vector<double> ReadKFamily::marginals() const {
  std::vector<double> out(n());
  for (std::size_t j = 0; j < n(); ++j) out[j] = marginal(j);
  return out;
}

bool ReadKFamily::eval(std::size_t j, std::span<const std::uint8_t> x) const {
  const auto& reads = read_sets[j];
  std::size_t idx = 0;
  for (std::size_t b = 0; b < reads.size(); ++b) idx |= std::size_t{x[reads[b]]} << b;
  return tables[j][idx] != 0;
}

ReadKFamily build_equal_marginal_family(std::size_t n, std::size_t m, std::size_t k,
                                        double target_p, std::uint64_t seed) {
  if (n == 0 || m == 0 || k == 0) throw ReadKError("n, m and k must be positive");
  if (!(target_p > 0.0 && target_p < 1.0)) throw ReadKError("target_p must lie in (0, 1)");
  if (n > m * k) {
    throw ReadKError(fmt::format("infeasible: {} indicators need more than {} * {} reads", n, m, k));
  }
  SplitMix64 rng(stream_seed(seed, 0x7265616bULL));
  const std::size_t protos = std::min(n, m);

  ReadKFamily f;
  f.m = m;
  f.k = k;
  f.label = "equal-marginal";
  f.q.assign(m, 0.5);
  // Variables [0, protos) tune the prototypes; the rest are shared.
  for (std::size_t i = protos; i < m; ++i) f.q[i] = 0.25 + 0.5 * rng.uniform();

  std::vector<std::size_t> load(m, 0);
  std::vector<std::vector<std::uint32_t>> proto_reads(protos);
  std::vector<std::vector<std::uint8_t>> proto_tables(protos);
  for (std::size_t j = 0; j < protos; ++j) {
    const std::size_t copies = (n - j + protos - 1) / protos;
    load[j] += copies;

    std::vector<std::uint32_t> candidates;
    for (std::size_t i = 0; i < m; ++i) {
      if ((i < j || i >= protos) && load[i] + copies <= k) candidates.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::size_t i = candidates.size(); i > 1; --i) {
      std::swap(candidates[i - 1], candidates[rng() % i]);
    }
    const std::size_t extras = std::min<std::size_t>(candidates.size(), rng() % (kMaxExtras + 1));
    std::vector<std::uint32_t> extra(candidates.begin(), candidates.begin() + extras);
    std::sort(extra.begin(), extra.end());
    for (std::uint32_t i : extra) load[i] += copies;

    // Assignments of the extras in random order; a prefix is accepted outright,
    // the boundary assignment defers to the tuning variable.
    const std::size_t combos = std::size_t{1} << extras;
    std::vector<std::size_t> order(combos);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = combos; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    std::vector<std::uint8_t> accept(combos, 0);
    std::size_t boundary = order.back();
    double acc = 0.0;
    for (std::size_t a : order) {
      double w = 1.0;
      for (std::size_t b = 0; b < extras; ++b) w *= ((a >> b) & 1u) ? f.q[extra[b]] : 1.0 - f.q[extra[b]];
      if (acc + w >= target_p) {
        boundary = a;
        f.q[j] = w > 0.0 ? std::clamp((target_p - acc) / w, 0.0, 1.0) : 0.0;
        break;
      }
      acc += w;
      accept[a] = 1;
    }

    std::vector<std::uint32_t> reads = extra;
    reads.push_back(static_cast<std::uint32_t>(j));
    std::sort(reads.begin(), reads.end());
    const std::size_t tpos = static_cast<std::size_t>(
        std::find(reads.begin(), reads.end(), static_cast<std::uint32_t>(j)) - reads.begin());
    std::vector<std::uint8_t> table(std::size_t{1} << reads.size(), 0);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      const std::size_t low = idx & ((std::size_t{1} << tpos) - 1);
      const std::size_t a = low | ((idx >> (tpos + 1)) << tpos);
      const bool t = (idx >> tpos) & 1u;
      table[idx] = accept[a] || (a == boundary && t);
    }
    proto_reads[j] = std::move(reads);
    proto_tables[j] = std::move(table);
  }
  for (std::size_t j = 0; j < n; ++j) {
    f.read_sets.push_back(proto_reads[j % protos]);
    f.tables.push_back(proto_tables[j % protos]);
  }
  f.validate();
  for (std::size_t j = 0; j < protos; ++j) {
    if (std::abs(f.marginal(j) - target_p) > 0x1.0p-20) {
      throw ReadKError(fmt::format("marginal of indicator {} missed the target", j));
    }
  }
  return f;
}

long double exact_conjunction(const ReadKFamily& f) {
  if (f.m > ReadKFamily::kMaxExactVariables) {
    throw ReadKError(fmt::format("exact enumeration supports at most {} variables, got {}; use "
                                 "mc_conjunction",
                                 ReadKFamily::kMaxExactVariables, f.m));
  }
  f.validate();
  // Indicators are checked as soon as their last variable is fixed.
  std::vector<std::vector<std::size_t>> ready(f.m + 1);
  for (std::size_t j = 0; j < f.n(); ++j) {
    const auto& reads = f.read_sets[j];
    ready[reads.empty() ? 0 : reads.back() + 1].push_back(j);
  }
  std::vector<std::uint8_t> x(f.m, 0);
  auto passes = [&](std::size_t level) {
    for (std::size_t j : ready[level]) {
      if (!f.eval(j, x)) return false;
    }
    return true;
  };
  if (!passes(0)) return 0.0L;

  // Iterative depth-first search over variable assignments.
  long double total = 0.0L;
  std::vector<long double> weight(f.m + 1, 1.0L);
  std::vector<int> choice(f.m, -1);
  std::size_t d = 0;
  if (f.m == 0) return 1.0L;
  while (true) {
    if (choice[d] == 1) {
      choice[d] = -1;
      if (d == 0) break;
      --d;
      continue;
    }
    ++choice[d];
    const long double q = f.q[d];
    const long double w = choice[d] ? q : 1.0L - q;
    if (w == 0.0L) continue;
    x[d] = static_cast<std::uint8_t>(choice[d]);
    if (!passes(d + 1)) continue;
    weight[d + 1] = weight[d] * w;
    if (d + 1 == f.m) {
      total += weight[d + 1];
    } else {
      ++d;
    }
  }
  return total;
}

BoundReport conjunction_report(const ReadKFamily& f, bool use_min_marginal) {
  BoundReport r;
  r.kind = "conjunction_exact";
  r.n = f.n();
  r.m = f.m;
  r.k = f.k;
  r.p = family_p(f, use_min_marginal);
  r.estimate = static_cast<double>(exact_conjunction(f));
  r.bound = std::pow(r.p, static_cast<double>(r.n) / static_cast<double>(r.k));
  r.satisfied = r.estimate <= r.bound + kConjunctionSlack;
  r.label = f.label;
  return r;
}

BoundReport mc_conjunction(const ReadKFamily& f, std::size_t samples, std::uint64_t seed,
                           bool use_min_marginal) {
  if (samples == 0) throw std::invalid_argument("samples must be positive");
  f.validate();
  std::size_t hits = 0;
  sample(f, samples, seed, [&](const std::vector<std::uint8_t>& x) {
    for (std::size_t j = 0; j < f.n(); ++j) {
      if (!f.eval(j, x)) return;
    }
    ++hits;
  });
  BoundReport r;
  r.kind = "conjunction_mc";
  r.n = f.n();
  r.m = f.m;
  r.k = f.k;
  r.p = family_p(f, use_min_marginal);
  r.samples = samples;
  r.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  r.half_width = half_width(r.estimate, samples);
  r.bound = std::pow(r.p, static_cast<double>(r.n) / static_cast<double>(r.k));
  r.satisfied = r.estimate <= r.bound + r.half_width;
  r.label = f.label;
  return r;
}

std::vector<std::size_t> sample_histogram(const ReadKFamily& f, std::size_t samples,
                                          std::uint64_t seed) {
  f.validate();
  std::vector<std::size_t> counts(f.n() + 1, 0);
  sample(f, samples, seed, [&](const std::vector<std::uint8_t>& x) {
    std::size_t y = 0;
    for (std::size_t j = 0; j < f.n(); ++j) y += f.eval(j, x) ? 1 : 0;
    ++counts[y];
  });
  return counts;
}

std::vector<BoundReport> mc_tail(const ReadKFamily& f, std::size_t samples, std::uint64_t seed,
                                 std::span<const double> epsilons,
                                 std::span<const double> deltas) {
  if (samples < 10000) throw std::invalid_argument("mc_tail needs at least 10^4 samples");
  const std::vector<double> marg = f.marginals();
  const double expected = std::accumulate(marg.begin(), marg.end(), 0.0);
  const double p = marg.empty() ? 0.0 : expected / static_cast<double>(marg.size());
  const std::vector<std::size_t> counts = sample_histogram(f, samples, seed);
  const double n = static_cast<double>(f.n());
  const double k = static_cast<double>(f.k);

  // Pr[Y <= t]; the small slack keeps integer thresholds such as (p - eps) n
  // from being lost to rounding.
  auto cdf = [&](double t) {
    std::size_t hits = 0;
    for (std::size_t y = 0; y < counts.size(); ++y) {
      if (static_cast<double>(y) <= t + 1e-9) hits += counts[y];
    }
    return static_cast<double>(hits) / static_cast<double>(samples);
  };
  auto report = [&](std::string kind, double param, double threshold, double bound) {
    BoundReport r;
    r.kind = std::move(kind);
    r.n = f.n();
    r.m = f.m;
    r.k = f.k;
    r.p = p;
    r.parameter = param;
    r.samples = samples;
    r.estimate = cdf(threshold);
    r.half_width = half_width(r.estimate, samples);
    r.bound = bound;
    r.satisfied = r.estimate <= r.bound + r.half_width;
    r.label = f.label;
    return r;
  };
  std::vector<BoundReport> out;
  for (double eps : epsilons) {
    out.push_back(report("tail_epsilon", eps, (p - eps) * n, std::exp(-2.0 * eps * eps * n / k)));
  }
  for (double delta : deltas) {
    out.push_back(report("tail_delta", delta, (1.0 - delta) * expected,
                         std::exp(-delta * delta * expected / (2.0 * k))));
  }
  return out;
}

ReadKFamily family_from_simulation(const Graph& g, const Orientation& o, EventKind kind,
                                   std::span<const NodeId> targets, unsigned bits) {
  if (bits == 0 || bits > 16) throw ReadKError("priority width must be between 1 and 16 bits");
  if (auto problem = o.check(g)) throw ReadKError("invalid orientation: " + *problem);
  const auto children = o.children();

  std::vector<std::vector<NodeId>> groups;
  std::vector<NodeId> used;
  for (NodeId w : targets) {
    if (w >= g.node_count()) throw ReadKError(fmt::format("target {} is not a node", w));
    std::vector<NodeId> group = kind == EventKind::kChildWin ? children[w] : o.parents[w];
    group.insert(group.begin(), w);
    if (group.size() * bits > ReadKFamily::kMaxReadSet) {
      throw ReadKError(fmt::format("discretization infeasible: event of node {} reads {} bits",
                                   w, group.size() * bits));
    }
    used.insert(used.end(), group.begin(), group.end());
    groups.push_back(std::move(group));
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  auto slot = [&](NodeId v) {
    return static_cast<std::uint32_t>(std::lower_bound(used.begin(), used.end(), v) - used.begin());
  };

  ReadKFamily f;
  f.m = used.size() * bits;
  f.q.assign(f.m, 0.5);
  f.label = "heuristic hypothesis";
  for (const auto& group : groups) {
    // Variables of node v occupy [slot(v) * bits, slot(v) * bits + bits),
    // least significant priority bit first.
    std::vector<NodeId> nodes = group;
    std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) { return slot(a) < slot(b); });
    std::vector<std::uint32_t> reads;
    for (NodeId v : nodes) {
      for (unsigned b = 0; b < bits; ++b) reads.push_back(slot(v) * bits + b);
    }
    const std::size_t self =
        static_cast<std::size_t>(std::find(nodes.begin(), nodes.end(), group[0]) - nodes.begin());
    const std::uint32_t mask = (1u << bits) - 1;
    std::vector<std::uint8_t> table(std::size_t{1} << reads.size(), 0);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      const std::uint32_t mine = static_cast<std::uint32_t>(idx >> (self * bits)) & mask;
      bool any = false;
      std::uint32_t best = 0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i == self) continue;
        any = true;
        best = std::max(best, static_cast<std::uint32_t>(idx >> (i * bits)) & mask);
      }
      table[idx] = kind == EventKind::kChildWin ? (any && mine < best) : (!any || mine > best);
    }
    f.read_sets.push_back(std::move(reads));
    f.tables.push_back(std::move(table));
  }
  f.k = std::max<std::size_t>(1, f.max_read_count());
  f.validate();
  return f;
}

std::vector<FamilySpec> regression_suite() {
  std::vector<FamilySpec> suite = {
      {4, 4, 1, 0.5, 1, true},  {2, 1, 2, 0.3, 2, true},  {6, 10, 3, 0.3, 3, false},
      {6, 3, 2, 0.4, 4, true},  {8, 8, 1, 0.5, 5, true},
  };
  SplitMix64 rng(0x5eed);
  while (suite.size() < 50) {
    FamilySpec s;
    s.n = 2 + rng() % 15;
    s.k = 1 + rng() % 4;
    const std::size_t m_min = std::max<std::size_t>(1, (s.n + s.k - 1) / s.k);
    s.m = m_min + rng() % (ReadKFamily::kMaxExactVariables - m_min + 1);
    s.p = static_cast<double>(1 + rng() % 9) / 10.0;
    s.seed = rng();
    s.tight = s.k == 1 || s.n == s.m * s.k;
    suite.push_back(s);
  }
  return suite;
}

std::string bound_report_header() {
  return "kind,n,m,k,p,epsilon_or_delta,estimate,half_width,bound,satisfied";
}

std::string to_csv(const BoundReport& r) {
  return fmt::format("{},{},{},{},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{}", r.kind, r.n, r.m,
                     r.k, r.p, r.parameter, r.estimate, r.half_width, r.bound,
                     r.satisfied ? "true" : "false");
}

}  // namespace arbomis
