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
#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "semsna/automaton.hpp"
#include "semsna/error.hpp"
#include "semsna/graph.hpp"
#include "semsna/path_pattern.hpp"
#include "semsna/taxonomy.hpp"

namespace semsna {

/// kNone: every elementary path. kOne: one geodesic per (source, target)
/// pair, the lexicographically smallest relation-id sequence. kAll: every
/// geodesic.
enum class ShortestMode : std::uint8_t { kNone, kOne, kAll };

/// kOut follows relations subject to object, kIn object to subject.
struct PathMode {
  Direction direction = Direction::kOut;
  ShortestMode shortest = ShortestMode::kNone;
  std::optional<std::int64_t> max_length;
  /// Matching steps allowed; one step per admissible neighbour considered.
  std::optional<std::int64_t> budget;
};

/// Step counter shared by any number of searches. Safe for concurrent use;
/// used() never exceeds limit().
class MatchBudget {
 public:
  static constexpr std::uint64_t kUnlimited =
      std::numeric_limits<std::uint64_t>::max();

  explicit MatchBudget(std::uint64_t limit = kUnlimited) : limit_(limit) {}

  static MatchBudget from_option(std::optional<std::int64_t> budget) {
    if (!budget) return MatchBudget();
    if (*budget <= 0) throw InputError("budget must be positive");
    return MatchBudget(static_cast<std::uint64_t>(*budget));
  }

  bool consume() noexcept {
    std::uint64_t cur = used_.load(std::memory_order_relaxed);
    while (cur < limit_) {
      if (used_.compare_exchange_weak(cur, cur + 1,
                                      std::memory_order_relaxed)) {
        return true;
      }
    }
    return false;
  }

  /// Takes `n` steps at once; when fewer are left, takes them all and fails.
  bool charge(std::uint64_t n) noexcept {
    std::uint64_t cur = used_.load(std::memory_order_relaxed);
    for (;;) {
      bool fits = limit_ - cur >= n;
      std::uint64_t next = fits ? cur + n : limit_;
      if (used_.compare_exchange_weak(cur, next,
                                      std::memory_order_relaxed)) {
        return fits;
      }
    }
  }

  std::uint64_t used() const noexcept {
    return used_.load(std::memory_order_relaxed);
  }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

/// nodes.size() == relations.size() + 1, in traversal order.
struct Path {
  std::vector<RelationId> relations;
  std::vector<EntityId> nodes;

  EntityId source() const { return nodes.front(); }
  EntityId target() const { return nodes.back(); }
  std::size_t length() const noexcept { return relations.size(); }

  friend bool operator==(const Path&, const Path&) = default;
};

inline Path reversed(const Path& p) {
  Path out = p;
  std::reverse(out.relations.begin(), out.relations.end());
  std::reverse(out.nodes.begin(), out.nodes.end());
  return out;
}

struct PathStats {
  bool truncated = false;
  std::uint64_t steps = 0;
};

struct PathResult {
  std::vector<Path> paths;
  bool truncated = false;
  std::uint64_t steps = 0;
};

struct PathTriple {
  EntityId subject;
  LabelId predicate;
  EntityId object;
  friend bool operator==(const PathTriple&, const PathTriple&) = default;
};

/// Triples of `p` in traversal order, each in stored orientation.
inline std::vector<PathTriple> path_triples(const ERGraph& g, const Path& p) {
  std::vector<PathTriple> out;
  out.reserve(p.relations.size());
  for (RelationId r : p.relations) {
    auto a = g.args(r);
    out.push_back({a[0], g.relation_label_id(r), a[1]});
  }
  return out;
}

inline std::size_t length_bound(std::optional<std::int64_t> max_length) {
  if (!max_length) return std::numeric_limits<std::size_t>::max();
  if (*max_length <= 0) throw InputError("max length must be positive");
  return static_cast<std::size_t>(*max_length);
}

namespace detail {

/// Automaton view used by the searches. A uniform pattern collapses to two
/// states (0 = start, 1 = after an admissible step), so the product with the
/// graph is the graph itself.
class Stepper {
 public:
  static constexpr int kDead = CompiledPattern::kDead;

  Stepper(const PathPattern& pattern, const ERGraph& g, const Taxonomy& t)
      : cp_(pattern, g, t), uniform_(cp_.uniform()) {}

  bool uniform() const noexcept { return uniform_; }
  bool empty() const noexcept { return cp_.empty(); }
  int start() const noexcept { return cp_.empty() ? kDead : 0; }
  std::size_t state_count() const noexcept {
    return uniform_ ? 2 : cp_.state_count();
  }

  int next(int q, LabelId l) const {
    if (q == kDead) return kDead;
    if (uniform_) return cp_.admissible(l) ? 1 : kDead;
    return cp_.next(q, l);
  }

  bool accepting(int q) const {
    return uniform_ ? q == 1 : cp_.accepting(q);
  }

  bool admissible(LabelId l) const { return cp_.admissible(l); }

 private:
  CompiledPattern cp_;
  bool uniform_;
};

inline std::vector<char> literal_mask(const ERGraph& g) {
  std::vector<char> mask(g.entity_count());
  for (std::uint32_t e = 0; e < mask.size(); ++e) {
    mask[e] = g.entity_label(EntityId(e)).is_literal();
  }
  return mask;
}

/// One source at a time over the product of graph and automaton. Literal
/// entities are never entered. Every search returns false once the visitor
/// or the budget stopped it.
class PathSearcher {
 public:
  PathSearcher(const ERGraph& g, const Stepper& m, Direction dir,
               std::size_t max_length, MatchBudget& budget)
      : g_(g),
        m_(m),
        dir_(dir),
        max_length_(max_length),
        budget_(budget),
        literal_(literal_mask(g)),
        on_path_(g.entity_count(), 0) {}

  bool truncated() const noexcept { return truncated_; }

  template <class Visit>
  bool all_paths(EntityId s, std::optional<EntityId> t, Visit& visit) {
    if (literal_[s.index()] || m_.start() == Stepper::kDead) return true;
    begin(s);
    bool keep = dfs(s, m_.start(), t, visit);
    end(s);
    return keep;
  }

  /// Geodesics from `s` in lexicographic relation-id order, a path before
  /// its extensions. `all` selects kAll over kOne.
  template <class Visit>
  bool geodesics(EntityId s, std::optional<EntityId> t, bool all,
                 Visit& visit) {
    if (literal_[s.index()] || m_.start() == Stepper::kDead) return true;
    if (!product_bfs(s, t)) return false;
    mark_useful(s, t);
    emitted_.assign(g_.entity_count(), 0);
    begin(s);
    bool keep = dag_dfs(0, s, all, visit);
    end(s);
    if (!keep || m_.uniform()) return keep;
    return fallback(s, t, all, visit);
  }

 private:
  static constexpr std::uint32_t kUnreached =
      std::numeric_limits<std::uint32_t>::max();

  void begin(EntityId s) {
    path_.relations.clear();
    path_.nodes.assign(1, s);
    on_path_[s.index()] = 1;
  }
  void end(EntityId s) { on_path_[s.index()] = 0; }

  template <class Fn>
  bool expand(EntityId v, int q, Fn&& fn) {
    bool keep = true;
    g_.for_each_neighbor(
        v, dir_,
        [&](LabelId l) { return keep && m_.next(q, l) != Stepper::kDead; },
        [&](const Step& st) {
          if (!keep) return;
          if (!budget_.consume()) {
            truncated_ = true;
            keep = false;
            return;
          }
          if (literal_[st.other.index()]) return;
          keep = fn(st, m_.next(q, g_.relation_label_id(st.relation)));
        });
    return keep;
  }

  void push(const Step& st) {
    path_.relations.push_back(st.relation);
    path_.nodes.push_back(st.other);
    on_path_[st.other.index()] = 1;
  }
  void pop() {
    on_path_[path_.nodes.back().index()] = 0;
    path_.relations.pop_back();
    path_.nodes.pop_back();
  }

  template <class Visit>
  bool dfs(EntityId v, int q, std::optional<EntityId> t, Visit& visit) {
    return expand(v, q, [&](const Step& st, int nq) {
      if (on_path_[st.other.index()]) return true;
      push(st);
      bool keep = true;
      bool at_target = t && st.other == *t;
      if (m_.accepting(nq) && (!t || at_target)) keep = visit(path_);
      if (keep && !at_target && path_.length() < max_length_) {
        keep = dfs(st.other, nq, t, visit);
      }
      pop();
      return keep;
    });
  }

  std::uint32_t node_of(EntityId e, int q) {
    std::uint64_t key =
        (static_cast<std::uint64_t>(e.value) << 32) | static_cast<std::uint32_t>(q);
    auto [it, inserted] =
        index_.emplace(key, static_cast<std::uint32_t>(pn_entity_.size()));
    if (inserted) {
      pn_entity_.push_back(e);
      pn_state_.push_back(q);
      pn_dist_.push_back(kUnreached);
    }
    return it->second;
  }

  // Layered BFS from (s, start); records the geodesic DAG of the product in
  // BFS order, successors of each node contiguous and in relation-id order.
  bool product_bfs(EntityId s, std::optional<EntityId> t) {
    index_.clear();
    pn_entity_.clear();
    pn_state_.clear();
    pn_dist_.clear();
    succ_.clear();
    succ_begin_.clear();
    best_.assign(g_.entity_count(), kUnreached);
    std::uint32_t root = node_of(s, m_.start());
    pn_dist_[root] = 0;
    std::size_t stop = max_length_;
    for (std::uint32_t u = 0; u < pn_entity_.size(); ++u) {
      succ_begin_.push_back(static_cast<std::uint32_t>(succ_.size()));
      std::uint32_t d = pn_dist_[u];
      if (d >= stop) continue;
      bool keep = expand(pn_entity_[u], pn_state_[u],
                         [&](const Step& st, int nq) {
        if (st.other == s) return true;
        std::uint32_t w = node_of(st.other, nq);
        if (pn_dist_[w] == kUnreached) {
          pn_dist_[w] = d + 1;
          if (m_.accepting(nq)) {
            auto& b = best_[st.other.index()];
            b = std::min(b, d + 1);
            if (t && st.other == *t) stop = std::min<std::size_t>(stop, d + 1);
          }
        }
        if (pn_dist_[w] == d + 1) succ_.push_back({st.relation, w});
        return true;
      });
      if (!keep) return false;
    }
    succ_begin_.push_back(static_cast<std::uint32_t>(succ_.size()));
    return true;
  }

  bool emits(std::uint32_t u, EntityId s, std::optional<EntityId> t) const {
    EntityId e = pn_entity_[u];
    return e != s && (!t || e == *t) && m_.accepting(pn_state_[u]) &&
           pn_dist_[u] == best_[e.index()];
  }

  void mark_useful(EntityId s, std::optional<EntityId> t) {
    useful_.assign(pn_entity_.size(), 0);
    for (std::size_t k = pn_entity_.size(); k-- > 0;) {
      auto u = static_cast<std::uint32_t>(k);
      if (emits(u, s, t)) {
        useful_[u] = 1;
        continue;
      }
      for (std::uint32_t i = succ_begin_[u]; i < succ_begin_[u + 1]; ++i) {
        if (useful_[succ_[i].node]) {
          useful_[u] = 1;
          break;
        }
      }
    }
    target_ = t;
    expanded_.assign(pn_entity_.size(), 0);
  }

  template <class Visit>
  bool dag_dfs(std::uint32_t u, EntityId s, bool all, Visit& visit) {
    // In the collapsed product every DAG path is elementary, so in kOne mode
    // a node's subtree needs exploring only from its first (smallest) prefix.
    if (!all && m_.uniform()) {
      if (expanded_[u]) return true;
      expanded_[u] = 1;
    }
    for (std::uint32_t i = succ_begin_[u]; i < succ_begin_[u + 1]; ++i) {
      const Edge& e = succ_[i];
      if (!useful_[e.node]) continue;
      if (!budget_.consume()) {
        truncated_ = true;
        return false;
      }
      EntityId w = pn_entity_[e.node];
      if (on_path_[w.index()]) continue;
      push({e.relation, w});
      bool keep = true;
      if (emits(e.node, s, target_) && (all || !emitted_[w.index()])) {
        emitted_[w.index()] = 1;
        keep = visit(path_);
      }
      if (keep) keep = dag_dfs(e.node, s, all, visit);
      pop();
      if (!keep) return false;
    }
    return true;
  }

  // Targets whose shortest accepted walks all repeat an entity: find their
  // shortest elementary paths exhaustively. Emission waits for completion so
  // that a truncated run emits a prefix of the full run.
  template <class Visit>
  bool fallback(EntityId s, std::optional<EntityId> t, bool all,
                Visit& visit) {
    std::vector<char> pending(g_.entity_count(), 0);
    bool any = false;
    for (std::uint32_t e = 0; e < pending.size(); ++e) {
      if (best_[e] != kUnreached && !emitted_[e] && EntityId(e) != s &&
          (!t || EntityId(e) == *t)) {
        pending[e] = 1;
        any = true;
      }
    }
    if (!any) return true;
    std::vector<std::size_t> shortest(g_.entity_count(),
                                      std::numeric_limits<std::size_t>::max());
    std::vector<Path> found;
    auto collect = [&](const Path& p) {
      auto e = p.target().index();
      if (!pending[e] || p.length() > shortest[e]) return true;
      if (p.length() < shortest[e]) {
        shortest[e] = p.length();
        std::erase_if(found, [&](const Path& f) {
          return f.target().index() == e;
        });
      }
      found.push_back(p);
      return true;
    };
    if (!all_paths(s, std::nullopt, collect)) return false;
    std::sort(found.begin(), found.end(), [](const Path& a, const Path& b) {
      return a.relations < b.relations;
    });
    for (const Path& p : found) {
      auto e = p.target().index();
      if (!all && emitted_[e]) continue;
      emitted_[e] = 1;
      if (!visit(p)) return false;
    }
    return true;
  }

  struct Edge {
    RelationId relation;
    std::uint32_t node;
  };

  const ERGraph& g_;
  const Stepper& m_;
  Direction dir_;
  std::size_t max_length_;
  MatchBudget& budget_;
  std::vector<char> literal_;
  std::vector<char> on_path_;
  Path path_;
  bool truncated_ = false;

  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<EntityId> pn_entity_;
  std::vector<int> pn_state_;
  std::vector<std::uint32_t> pn_dist_;
  std::vector<Edge> succ_;
  std::vector<std::uint32_t> succ_begin_;
  std::vector<std::uint32_t> best_;
  std::vector<char> useful_;
  std::vector<char> expanded_;
  std::vector<char> emitted_;
  std::optional<EntityId> target_;
};

}  // namespace detail

/// Streams paths to `visit(const Path&) -> bool`; returning false stops the
/// search. Without a source, each entity is a source in id order. A search
/// with only a target runs backwards from it over the mirrored pattern and
/// reports paths in forward orientation. `shared` replaces the budget of
/// `mode` when given.
template <class Visit>
PathStats for_each_path(const ERGraph& g, const Taxonomy& t,
                        std::optional<EntityId> source,
                        std::optional<EntityId> target,
                        const PathPattern& pattern, const PathMode& mode,
                        Visit&& visit, MatchBudget* shared = nullptr) {
  if (source) g.check_entity(*source);
  if (target) g.check_entity(*target);
  std::size_t max_length = length_bound(mode.max_length);
  MatchBudget own = MatchBudget::from_option(mode.budget);
  MatchBudget& budget = shared ? *shared : own;
  std::uint64_t before = budget.used();

  bool backwards = !source && target;
  PathPattern effective = pattern;
  Direction dir = mode.direction;
  if (backwards) {
    effective.expr = reversed(pattern.expr);
    dir = reverse(dir);
  }
  detail::Stepper stepper(effective, g, t);
  detail::PathSearcher searcher(g, stepper, dir, max_length, budget);

  auto forward = [&](const Path& p) -> bool {
    if (!backwards) return visit(p);
    return visit(reversed(p));
  };
  auto run = [&](EntityId s, std::optional<EntityId> goal) {
    if (mode.shortest == ShortestMode::kNone) {
      return searcher.all_paths(s, goal, forward);
    }
    return searcher.geodesics(s, goal, mode.shortest == ShortestMode::kAll,
                              forward);
  };

  if (backwards) {
    run(*target, std::nullopt);
  } else if (source) {
    run(*source, target);
  } else {
    for (std::uint32_t e = 0; e < g.entity_count(); ++e) {
      if (!run(EntityId(e), std::nullopt)) break;
    }
  }
  return {searcher.truncated(), budget.used() - before};
}

inline PathResult find_paths(const ERGraph& g, const Taxonomy& t,
                             std::optional<EntityId> source,
                             std::optional<EntityId> target,
                             const PathPattern& pattern, const PathMode& mode) {
  PathResult out;
  PathStats stats = for_each_path(g, t, source, target, pattern, mode,
                                  [&](const Path& p) {
                                    out.paths.push_back(p);
                                    return true;
                                  });
  out.truncated = stats.truncated;
  out.steps = stats.steps;
  return out;
}

/// Single-source geodesic DAG over the relations a uniform pattern admits.
/// Reusable across sources; only the entries touched by the previous run are
/// reset.
class GeodesicDag {
 public:
  static constexpr std::uint32_t kUnreached =
      std::numeric_limits<std::uint32_t>::max();

  GeodesicDag(const ERGraph& g, const detail::Stepper& m, Direction dir,
              std::size_t max_length = std::numeric_limits<std::size_t>::max())
      : g_(g),
        m_(m),
        dir_(dir),
        max_length_(max_length),
        literal_(detail::literal_mask(g)),
        dist_(g.entity_count(), kUnreached),
        preds_(g.entity_count()) {
    if (!m.uniform() && !m.empty()) {
      throw ContractViolation("geodesic DAG requires a uniform pattern");
    }
  }

  /// Returns the number of matching steps spent.
  std::uint64_t run(EntityId source) {
    for (std::uint32_t v : order_) {
      dist_[v] = kUnreached;
      preds_[v].clear();
    }
    order_.clear();
    std::uint64_t steps = 0;
    if (literal_[source.index()] || m_.empty()) return steps;
    dist_[source.index()] = 0;
    order_.push_back(static_cast<std::uint32_t>(source.index()));
    for (std::size_t k = 0; k < order_.size(); ++k) {
      std::uint32_t u = order_[k];
      std::uint32_t d = dist_[u];
      if (d >= max_length_) continue;
      g_.for_each_neighbor(
          EntityId(u), dir_, [&](LabelId l) { return m_.admissible(l); },
          [&](const Step& st) {
            ++steps;
            auto w = static_cast<std::uint32_t>(st.other.index());
            if (literal_[w]) return;
            if (dist_[w] == kUnreached) {
              dist_[w] = d + 1;
              order_.push_back(w);
            }
            if (dist_[w] == d + 1) preds_[w].push_back({st.relation, EntityId(u)});
          });
    }
    return steps;
  }

  std::uint32_t dist(EntityId e) const { return dist_[e.index()]; }
  /// Reached entities in BFS order, the source first.
  const std::vector<std::uint32_t>& order() const noexcept { return order_; }
  /// DAG predecessors: (relation, entity one step closer to the source).
  const std::vector<Step>& preds(EntityId e) const {
    return preds_[e.index()];
  }

 private:
  const ERGraph& g_;
  const detail::Stepper& m_;
  Direction dir_;
  std::size_t max_length_;
  std::vector<char> literal_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::vector<Step>> preds_;
  std::vector<std::uint32_t> order_;
};

/// Geodesic length from `source` to every entity reachable along accepted
/// elementary paths. The shortest mode of `mode` is ignored.
inline std::map<EntityId, std::size_t> shortest_distance(
    const ERGraph& g, const Taxonomy& t, EntityId source,
    const PathPattern& pattern, const PathMode& mode) {
  std::map<EntityId, std::size_t> out;
  PathMode m = mode;
  m.shortest = ShortestMode::kOne;
  for_each_path(g, t, source, std::nullopt, pattern, m, [&](const Path& p) {
    out.emplace(p.target(), p.length());
    return true;
  });
  return out;
}

}  // namespace semsna
