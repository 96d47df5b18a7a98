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
#include <deque>
#include <limits>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "semsna/error.hpp"
#include "semsna/graph.hpp"
#include "semsna/metrics.hpp"
#include "semsna/taxonomy.hpp"

// Reference implementations by exhaustive enumeration over the raw adjacency
// lists. They share no code with the path engine and are meant for small
// graphs only.
namespace semsna::oracle {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kMaxNodes = 200;

/// Supported types: p, alt(p, q, ...) and the star of either; the bare forms
/// mean their star, as for the engine.
struct Admitted {
  std::vector<char> label;  // by LabelId
};

inline Admitted admitted(const ERGraph& g, const Taxonomy& t,
                         const MetricParams& params) {
  Admitted out;
  const PathExpr type = metric_expr(params.type);
  const PathExpr* inner = &type;
  if (inner->kind == PathExpr::Kind::kStar) inner = &inner->children[0];
  std::vector<Label> atoms;
  if (inner->kind == PathExpr::Kind::kAtom) {
    atoms.push_back(inner->atom);
  } else if (inner->kind == PathExpr::Kind::kAlt) {
    for (const auto& c : inner->children) {
      if (c.kind != PathExpr::Kind::kAtom) {
        throw InputError("oracle supports p, alt(p, ...) and their star");
      }
      atoms.push_back(c.atom);
    }
  } else {
    throw InputError("oracle supports p, alt(p, ...) and their star");
  }
  out.label.assign(g.label_count(), 0);
  for (std::uint32_t l = 0; l < g.label_count(); ++l) {
    const Label& label = g.label(LabelId(l));
    for (const Label& a : atoms) {
      if (label == a ||
          (params.subsumption &&
           t.subsumes(a, label, TermKind::kProperty))) {
        out.label[l] = 1;
      }
    }
  }
  return out;
}

class Walker {
 public:
  Walker(const ERGraph& g, const Taxonomy& t, const MetricParams& params)
      : g_(g), ok_(admitted(g, t, params)), on_path_(g.entity_count(), 0) {
    std::size_t nodes = 0;
    for (std::uint32_t e = 0; e < g.entity_count(); ++e) {
      if (!literal(EntityId(e))) ++nodes;
    }
    if (nodes > kMaxNodes) {
      throw InputError("oracle is limited to " + std::to_string(kMaxNodes) +
                       " nodes");
    }
  }

  bool literal(EntityId e) const { return g_.entity_label(e).is_literal(); }

  /// Admissible (relation, neighbour) pairs of `v`, out-list then in-list.
  std::vector<Step> steps(EntityId v, Direction dir) const {
    std::vector<Step> out;
    auto take = [&](std::span<const Step> list) {
      for (const Step& s : list) {
        if (ok_.label[g_.relation_label_id(s.relation).index()] &&
            !literal(s.other)) {
          out.push_back(s);
        }
      }
    };
    if (dir != Direction::kIn) take(g_.out_steps(v));
    if (dir != Direction::kOut) take(g_.in_steps(v));
    return out;
  }

  /// fn(nodes) for every elementary path from s of length 1..max_length.
  template <class Fn>
  void simple_paths(EntityId s, Direction dir, std::size_t max_length,
                    Fn&& fn) {
    std::vector<EntityId> nodes{s};
    on_path_[s.index()] = 1;
    extend(nodes, dir, max_length, fn);
    on_path_[s.index()] = 0;
  }

 private:
  template <class Fn>
  void extend(std::vector<EntityId>& nodes, Direction dir,
              std::size_t max_length, Fn& fn) {
    for (const Step& s : steps(nodes.back(), dir)) {
      if (on_path_[s.other.index()]) continue;
      nodes.push_back(s.other);
      on_path_[s.other.index()] = 1;
      fn(nodes);
      if (nodes.size() - 1 < max_length) extend(nodes, dir, max_length, fn);
      on_path_[s.other.index()] = 0;
      nodes.pop_back();
    }
  }

  const ERGraph& g_;
  Admitted ok_;
  std::vector<char> on_path_;
};

inline MetricReport<Rational> make_report(MetricKind kind,
                                          const MetricParams& params) {
  MetricReport<Rational> r;
  r.kind = kind;
  r.params = params;
  return r;
}

inline void push(MetricReport<Rational>& r, EntityId e, Rational v,
                 std::size_t reachable = 0) {
  CentralityResult<Rational> c;
  c.node = e;
  c.value = std::move(v);
  c.kind = r.kind;
  c.params = r.params;
  c.reachable = reachable;
  r.results.push_back(std::move(c));
}

/// Counts elementary paths per endpoint.
inline MetricReport<Rational> degree(const ERGraph& g, const Taxonomy& t,
                                     const MetricParams& params) {
  Walker w(g, t, params);
  auto report = make_report(degree_kind(params.direction), params);
  const std::size_t max_length =
      params.max_length ? static_cast<std::size_t>(*params.max_length) : 1;
  std::vector<std::uint64_t> starts(g.entity_count(), 0);
  std::vector<std::uint64_t> ends(g.entity_count(), 0);
  for (std::uint32_t e = 0; e < g.entity_count(); ++e) {
    if (w.literal(EntityId(e))) continue;
    w.simple_paths(EntityId(e), Direction::kOut, max_length,
                   [&](const std::vector<EntityId>& nodes) {
                     ++starts[nodes.front().index()];
                     ++ends[nodes.back().index()];
                   });
  }
  for (std::uint32_t e = 0; e < g.entity_count(); ++e) {
    if (w.literal(EntityId(e))) continue;
    std::uint64_t v = 0;
    if (params.direction != Direction::kIn) v += starts[e];
    if (params.direction != Direction::kOut) v += ends[e];
    push(report, EntityId(e), Rational(v));
  }
  return report;
}

/// Breadth-first distances on the raw adjacency lists.
inline MetricReport<Rational> closeness(const ERGraph& g, const Taxonomy& t,
                                        const MetricParams& params) {
  Walker w(g, t, params);
  auto report = make_report(MetricKind::kCloseness, params);
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  for (std::uint32_t e = 0; e < g.entity_count(); ++e) {
    EntityId s(e);
    if (w.literal(s)) continue;
    std::vector<std::size_t> dist(g.entity_count(), kInf);
    std::deque<EntityId> queue{s};
    dist[e] = 0;
    std::uint64_t sum = 0;
    std::size_t reached = 0;
    while (!queue.empty()) {
      EntityId v = queue.front();
      queue.pop_front();
      for (const Step& st : w.steps(v, params.direction)) {
        if (dist[st.other.index()] != kInf) continue;
        dist[st.other.index()] = dist[v.index()] + 1;
        sum += dist[st.other.index()];
        ++reached;
        queue.push_back(st.other);
      }
    }
    if (reached > 0) push(report, s, Rational(1) / Rational(sum), reached);
  }
  return report;
}

/// Geodesics found by enumerating every elementary path. Same conventions as
/// the engine: ordered pairs (unordered under kEither), self-pairs and pairs
/// joined by a single step skipped, brokers are interior nodes.
inline MetricReport<Rational> betweenness(const ERGraph& g, const Taxonomy& t,
                                          const MetricParams& params,
                                          bool pairs = false) {
  Walker w(g, t, params);
  auto report = make_report(MetricKind::kBetweenness, params);
  std::vector<Rational> total(g.entity_count());
  for (std::uint32_t e = 0; e < g.entity_count(); ++e) {
    EntityId s(e);
    if (w.literal(s)) continue;
    struct Best {
      std::size_t length = std::numeric_limits<std::size_t>::max();
      std::uint64_t count = 0;
      std::map<std::uint32_t, std::uint64_t> through;
    };
    std::map<std::uint32_t, Best> best;
    w.simple_paths(s, params.direction, std::numeric_limits<std::size_t>::max(),
                   [&](const std::vector<EntityId>& nodes) {
      Best& b = best[static_cast<std::uint32_t>(nodes.back().index())];
      std::size_t len = nodes.size() - 1;
      if (len > b.length) return;
      if (len < b.length) b = Best{len, 0, {}};
      ++b.count;
      for (std::size_t k = 1; k + 1 < nodes.size(); ++k) {
        ++b.through[static_cast<std::uint32_t>(nodes[k].index())];
      }
    });
    for (const auto& [target, b] : best) {
      if (b.length < 2) continue;
      if (params.direction == Direction::kEither && target < e) continue;
      for (const auto& [u, c] : b.through) {
        Rational share(static_cast<long long>(c),
                       static_cast<long long>(b.count));
        total[u] += share;
        if (pairs) report.pairs.push_back({EntityId(u), s, EntityId(target), share});
      }
    }
  }
  for (std::uint32_t e = 0; e < g.entity_count(); ++e) {
    if (!w.literal(EntityId(e))) push(report, EntityId(e), total[e]);
  }
  std::sort(report.pairs.begin(), report.pairs.end(),
            [](const auto& a, const auto& b) {
              if (a.from != b.from) return a.from < b.from;
              if (a.to != b.to) return a.to < b.to;
              return a.broker < b.broker;
            });
  return report;
}

}  // namespace semsna::oracle
