// Copyright 2026 The semsna Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "semsna/detail/parallel.hpp"
#include "semsna/graph.hpp"
#include "semsna/label.hpp"
#include "semsna/path_engine.hpp"
#include "semsna/path_pattern.hpp"
#include "semsna/taxonomy.hpp"

namespace semsna {

enum class MetricKind : std::uint8_t {
  kDegree,
  kInDegree,
  kOutDegree,
  kCloseness,
  kBetweenness,
};

inline PathExpr default_type() {
  return PathExpr::star(PathExpr::make_atom(std::string(vocab::kFoafKnows)));
}

/// A bare property type (p or alt(p, q, ...)) stands for paths over that
/// type, i.e. its star; any other expression is used as written.
inline PathExpr metric_expr(const PathExpr& type) {
  bool atoms = type.kind == PathExpr::Kind::kAtom;
  if (type.kind == PathExpr::Kind::kAlt) {
    atoms = std::all_of(type.children.begin(), type.children.end(),
                        [](const PathExpr& c) {
                          return c.kind == PathExpr::Kind::kAtom;
                        });
  }
  return atoms ? PathExpr::star(type) : type;
}

/// For closeness and betweenness `direction` is the traversal direction. For
/// degree, kOut counts paths starting at a node, kIn paths ending there and
/// kEither both.
struct MetricParams {
  PathExpr type = default_type();
  Direction direction = Direction::kOut;
  bool subsumption = true;
  /// Degree only; defaults to 1.
  std::optional<std::int64_t> max_length;
  std::optional<std::int64_t> budget;

  PathPattern pattern() const { return {metric_expr(type), subsumption}; }
  friend bool operator==(const MetricParams&, const MetricParams&) = default;
};

struct MetricOptions {
  unsigned threads = 1;
  /// Also produce per-pair betweenness records.
  bool pairs = false;
};

template <class Number>
struct CentralityResult {
  EntityId node;
  Number value{};
  MetricKind kind = MetricKind::kDegree;
  MetricParams params;
  /// Closeness: number of peers the value is computed over.
  std::size_t reachable = 0;
  bool truncated = false;
};

/// `from` is where the geodesic search starts, so value equals
/// pair_betweenness(broker, from, to) under the same params.
template <class Number>
struct PairBetweenness {
  EntityId broker;
  EntityId from;
  EntityId to;
  Number value{};
  friend bool operator==(const PairBetweenness&,
                         const PairBetweenness&) = default;
};

template <class Number>
struct MetricReport {
  MetricKind kind = MetricKind::kDegree;
  MetricParams params;
  /// In entity-id order.
  std::vector<CentralityResult<Number>> results;
  std::vector<PairBetweenness<Number>> pairs;
  bool truncated = false;
  std::uint64_t steps = 0;
};

inline MetricKind degree_kind(Direction d) {
  switch (d) {
    case Direction::kOut: return MetricKind::kOutDegree;
    case Direction::kIn: return MetricKind::kInDegree;
    case Direction::kEither: return MetricKind::kDegree;
  }
  return MetricKind::kDegree;
}

namespace detail {

inline std::uint64_t budget_limit(const MetricParams& p) {
  return MatchBudget::from_option(p.budget).limit();
}

template <class Number>
void add_result(MetricReport<Number>& report, EntityId e, Number value,
                std::size_t reachable = 0) {
  CentralityResult<Number> r;
  r.node = e;
  r.value = std::move(value);
  r.kind = report.kind;
  r.params = report.params;
  r.reachable = reachable;
  report.results.push_back(std::move(r));
}

template <class Number>
void finish(MetricReport<Number>& report, const SourceRun& run) {
  report.truncated = run.truncated;
  report.steps = run.steps;
  for (auto& r : report.results) r.truncated = run.truncated;
}

}  // namespace detail

/// n-degree: elementary accepted paths of length <= n with the node as an
/// endpoint.
template <class Number = double>
MetricReport<Number> degree(const ERGraph& g, const Taxonomy& t,
                            const MetricParams& params,
                            const MetricOptions& options = {}) {
  MetricReport<Number> report;
  report.kind = degree_kind(params.direction);
  report.params = params;
  const std::size_t max_length =
      params.max_length ? length_bound(params.max_length) : 1;
  const PathPattern forward = params.pattern();
  const PathPattern backward{reversed(forward.expr), params.subsumption};
  const detail::Stepper sf(forward, g, t);
  const detail::Stepper sb(backward, g, t);
  const Direction dir = params.direction;
  const auto literal = detail::literal_mask(g);

  const std::size_t n = g.entity_count();
  std::vector<std::optional<std::uint64_t>> counts(n);
  auto make_worker = [&] {
    return [&](std::size_t i, MatchBudget& budget)
               -> std::optional<std::uint64_t> {
      std::uint64_t c = 0;
      if (literal[i]) return c;
      auto count = [&](const Path&) {
        ++c;
        return true;
      };
      EntityId y(static_cast<std::uint32_t>(i));
      if (dir != Direction::kIn) {
        detail::PathSearcher s(g, sf, Direction::kOut, max_length, budget);
        if (!s.all_paths(y, std::nullopt, count)) return std::nullopt;
      }
      if (dir != Direction::kOut) {
        detail::PathSearcher s(g, sb, Direction::kIn, max_length, budget);
        if (!s.all_paths(y, std::nullopt, count)) return std::nullopt;
      }
      return c;
    };
  };
  auto run = detail::run_sources<std::uint64_t>(
      n, options.threads, detail::budget_limit(params), make_worker,
      [&](std::size_t i, std::uint64_t c) { counts[i] = c; });
  for (std::uint32_t e = 0; e < n; ++e) {
    if (!literal[e] && counts[e]) {
      detail::add_result(report, EntityId(e), Number(*counts[e]));
    }
  }
  detail::finish(report, run);
  return report;
}

/// Inverse of the summed geodesic distances to the reachable peers. Nodes
/// without reachable peers are omitted.
template <class Number = double>
MetricReport<Number> closeness(const ERGraph& g, const Taxonomy& t,
                               const MetricParams& params,
                               const MetricOptions& options = {}) {
  MetricReport<Number> report;
  report.kind = MetricKind::kCloseness;
  report.params = params;
  const PathPattern pattern = params.pattern();
  const detail::Stepper stepper(pattern, g, t);
  const std::size_t n = g.entity_count();
  using Partial = std::pair<std::uint64_t, std::size_t>;  // (sum, reachable)
  std::vector<std::optional<Partial>> sums(n);

  auto make_worker = [&] {
    return [&, dag = std::optional<GeodesicDag>()](
               std::size_t i, MatchBudget& budget) mutable
               -> std::optional<Partial> {
      EntityId s(static_cast<std::uint32_t>(i));
      Partial out{0, 0};
      if (stepper.uniform() || stepper.empty()) {
        if (!dag) dag.emplace(g, stepper, params.direction);
        if (!budget.charge(dag->run(s))) return std::nullopt;
        for (std::size_t k = 1; k < dag->order().size(); ++k) {
          out.first += dag->dist(EntityId(dag->order()[k]));
          ++out.second;
        }
        return out;
      }
      detail::PathSearcher searcher(g, stepper, params.direction,
                                    length_bound(std::nullopt), budget);
      auto visit = [&](const Path& p) {
        out.first += p.length();
        ++out.second;
        return true;
      };
      if (!searcher.geodesics(s, std::nullopt, false, visit)) {
        return std::nullopt;
      }
      return out;
    };
  };
  auto run = detail::run_sources<Partial>(
      n, options.threads, detail::budget_limit(params), make_worker,
      [&](std::size_t i, Partial p) { sums[i] = p; });
  for (std::uint32_t e = 0; e < n; ++e) {
    if (sums[e] && sums[e]->second > 0) {
      detail::add_result(report, EntityId(e),
                         Number(1) / Number(sums[e]->first), sums[e]->second);
    }
  }
  detail::finish(report, run);
  return report;
}

/// Number of geodesics from `from` to `to`.
inline std::uint64_t geodesic_count(const ERGraph& g, const Taxonomy& t,
                                    EntityId from, EntityId to,
                                    const MetricParams& params) {
  PathMode mode;
  mode.direction = params.direction;
  mode.shortest = ShortestMode::kAll;
  std::uint64_t count = 0;
  for_each_path(g, t, from, to, params.pattern(), mode, [&](const Path&) {
    ++count;
    return true;
  });
  return count;
}

/// Geodesics from `from` to `to` with `broker` as an interior node. Pairs
/// joined by a single admissible step have no interior nodes and give 0.
inline std::uint64_t geodesic_count_through(const ERGraph& g,
                                            const Taxonomy& t, EntityId broker,
                                            EntityId from, EntityId to,
                                            const MetricParams& params) {
  g.check_entity(broker);
  if (broker == from || broker == to) return 0;
  PathMode mode;
  mode.direction = params.direction;
  mode.shortest = ShortestMode::kAll;
  std::uint64_t count = 0;
  for_each_path(g, t, from, to, params.pattern(), mode, [&](const Path& p) {
    if (std::find(p.nodes.begin() + 1, p.nodes.end() - 1, broker) !=
        p.nodes.end() - 1) {
      ++count;
    }
    return true;
  });
  return count;
}

template <class Number = double>
Number pair_betweenness(const ERGraph& g, const Taxonomy& t, EntityId broker,
                        EntityId from, EntityId to,
                        const MetricParams& params) {
  std::uint64_t all = geodesic_count(g, t, from, to, params);
  if (all == 0) return Number(0);
  return Number(geodesic_count_through(g, t, broker, from, to, params)) /
         Number(all);
}

namespace detail {

template <class Number>
struct BetweennessPartial {
  std::vector<std::pair<std::uint32_t, Number>> contrib;
  std::vector<PairBetweenness<Number>> pairs;
};

// Per source s: sigma[u] counts geodesics s -> u over the DAG; for each
// target t a backward sweep over the ancestors of t gives tau[u], the
// geodesics u -> t, and u brokers sigma[u] * tau[u] / sigma[t] of the pair.
template <class Number>
class PairSweep {
 public:
  PairSweep(const ERGraph& g, const Stepper& m, const MetricParams& params,
            bool pairs)
      : dag_(g, m, params.direction),
        direction_(params.direction),
        pairs_(pairs),
        sigma_(g.entity_count()),
        tau_(g.entity_count()),
        acc_(g.entity_count()),
        stamp_(g.entity_count(), 0),
        touched_mark_(g.entity_count(), 0) {}

  std::optional<BetweennessPartial<Number>> operator()(std::size_t i,
                                                       MatchBudget& budget) {
    EntityId s(static_cast<std::uint32_t>(i));
    std::uint64_t cost = dag_.run(s);
    const auto& order = dag_.order();
    BetweennessPartial<Number> out;
    if (order.empty()) {
      if (!budget.charge(cost)) return std::nullopt;
      return out;
    }
    for (std::uint32_t v : order) {
      if (v == s.index()) {
        sigma_[v] = Number(1);
        continue;
      }
      sigma_[v] = Number(0);
      for (const Step& p : dag_.preds(EntityId(v))) {
        sigma_[v] += sigma_[p.other.index()];
      }
    }
    for (std::uint32_t tv : order) {
      EntityId t(tv);
      if (t == s || dag_.dist(t) < 2) continue;
      if (direction_ == Direction::kEither && t < s) continue;
      ++tick_;
      layer_.assign(1, tv);
      stamp_[tv] = tick_;
      tau_[tv] = Number(1);
      for (;;) {
        next_.clear();
        for (std::uint32_t v : layer_) {
          for (const Step& p : dag_.preds(EntityId(v))) {
            ++cost;
            auto u = static_cast<std::uint32_t>(p.other.index());
            if (stamp_[u] != tick_) {
              stamp_[u] = tick_;
              tau_[u] = Number(0);
              next_.push_back(u);
            }
            tau_[u] += tau_[v];
          }
        }
        if (next_.empty() || next_.front() == s.index()) break;
        for (std::uint32_t u : next_) {
          Number share = sigma_[u] * tau_[u] / sigma_[tv];
          if (!touched_mark_[u]) {
            touched_mark_[u] = 1;
            touched_.push_back(u);
            acc_[u] = Number(0);
          }
          if (pairs_) out.pairs.push_back({EntityId(u), s, t, share});
          acc_[u] += share;
        }
        layer_.swap(next_);
      }
    }
    if (!budget.charge(cost)) {
      clear_touched();
      return std::nullopt;
    }
    std::sort(touched_.begin(), touched_.end());
    for (std::uint32_t u : touched_) out.contrib.emplace_back(u, acc_[u]);
    clear_touched();
    return out;
  }

 private:
  void clear_touched() {
    for (std::uint32_t u : touched_) touched_mark_[u] = 0;
    touched_.clear();
  }

  GeodesicDag dag_;
  Direction direction_;
  bool pairs_;
  std::vector<Number> sigma_;
  std::vector<Number> tau_;
  std::vector<Number> acc_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t tick_ = 0;
  std::vector<char> touched_mark_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint32_t> layer_;
  std::vector<std::uint32_t> next_;
};

// Patterns whose product does not collapse: enumerate the geodesics.
template <class Number>
std::optional<BetweennessPartial<Number>> enumerate_pairs(
    const ERGraph& g, const Stepper& m, const MetricParams& params, bool pairs,
    std::size_t i, MatchBudget& budget) {
  EntityId s(static_cast<std::uint32_t>(i));
  struct PerTarget {
    std::uint64_t sigma = 0;
    std::map<std::uint32_t, std::uint64_t> through;
  };
  std::map<std::uint32_t, PerTarget> targets;
  PathSearcher searcher(g, m, params.direction, length_bound(std::nullopt),
                        budget);
  auto visit = [&](const Path& p) {
    if (params.direction == Direction::kEither && p.target() < s) return true;
    auto& pt = targets[static_cast<std::uint32_t>(p.target().index())];
    ++pt.sigma;
    for (std::size_t k = 1; k + 1 < p.nodes.size(); ++k) {
      ++pt.through[static_cast<std::uint32_t>(p.nodes[k].index())];
    }
    return true;
  };
  if (!searcher.geodesics(s, std::nullopt, true, visit)) return std::nullopt;
  BetweennessPartial<Number> out;
  std::map<std::uint32_t, Number> acc;
  for (const auto& [tv, pt] : targets) {
    EntityId t(tv);
    for (const auto& [u, c] : pt.through) {
      Number share = Number(c) / Number(pt.sigma);
      if (pairs) out.pairs.push_back({EntityId(u), s, t, share});
      auto [it, inserted] = acc.try_emplace(u, Number(0));
      it->second += share;
    }
  }
  for (auto& [u, v] : acc) out.contrib.emplace_back(u, std::move(v));
  return out;
}

}  // namespace detail

/// Sum over pairs of the fraction of their geodesics through each node.
/// Pairs are ordered, or unordered under Direction::kEither. Every
/// non-literal entity gets a result; pair records are sorted by
/// (from, to, broker).
template <class Number = double>
MetricReport<Number> betweenness(const ERGraph& g, const Taxonomy& t,
                                 const MetricParams& params,
                                 const MetricOptions& options = {}) {
  MetricReport<Number> report;
  report.kind = MetricKind::kBetweenness;
  report.params = params;
  const detail::Stepper stepper(params.pattern(), g, t);
  const std::size_t n = g.entity_count();
  std::vector<Number> totals(n, Number(0));
  using Partial = detail::BetweennessPartial<Number>;

  auto merge = [&](std::size_t, Partial p) {
    for (auto& [u, v] : p.contrib) totals[u] += v;
    for (auto& pr : p.pairs) report.pairs.push_back(std::move(pr));
  };
  detail::SourceRun run;
  if (stepper.uniform() || stepper.empty()) {
    auto make_worker = [&] {
      return detail::PairSweep<Number>(g, stepper, params, options.pairs);
    };
    run = detail::run_sources<Partial>(n, options.threads,
                                       detail::budget_limit(params),
                                       make_worker, merge);
  } else {
    auto make_worker = [&] {
      return [&](std::size_t i, MatchBudget& budget) {
        return detail::enumerate_pairs<Number>(g, stepper, params,
                                               options.pairs, i, budget);
      };
    };
    run = detail::run_sources<Partial>(n, options.threads,
                                       detail::budget_limit(params),
                                       make_worker, merge);
  }
  std::sort(report.pairs.begin(), report.pairs.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.from, a.to, a.broker) <
                     std::tie(b.from, b.to, b.broker);
            });
  const auto literal = detail::literal_mask(g);
  for (std::uint32_t e = 0; e < n; ++e) {
    if (!literal[e]) detail::add_result(report, EntityId(e), totals[e]);
  }
  detail::finish(report, run);
  return report;
}

}  // namespace semsna
