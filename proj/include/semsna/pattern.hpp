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

// Mappings between entity-relation graphs: partial entity maps, relation
// preserving maps, their label-preorder variants, and projection (total
// label-respecting homomorphism) enumeration.

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "semsna/error.hpp"
#include "semsna/graph.hpp"
#include "semsna/taxonomy.hpp"

namespace semsna {

/// Query graph. Entity labels may be variables (`Label::variable`); a variable
/// matches any target entity, a constant only entities whose label it
/// subsumes. Relation labels are always constants.
class PatternGraph {
 public:
  EntityId add_node(const Label& label) { return graph_.add_entity(label); }

  RelationId add_relation(const Label& label, std::span<const EntityId> args) {
    if (label.is_variable() || label.is_literal()) {
      throw InputError("pattern relation labels must be IRIs");
    }
    return graph_.add_relation(label, args);
  }

  RelationId add_triple(const Label& s, const Label& p, const Label& o) {
    EntityId se = add_node(s);
    EntityId oe = add_node(o);
    const EntityId args[] = {se, oe};
    return add_relation(p, args);
  }

  const ERGraph& graph() const noexcept { return graph_; }
  std::size_t node_count() const noexcept { return graph_.entity_count(); }
  std::size_t relation_count() const noexcept {
    return graph_.relation_count();
  }

 private:
  ERGraph graph_;
};

/// Partial function from pattern entities to target entities, plus the
/// supporting target relations of each preserved pattern relation.
struct Mapping {
  std::map<EntityId, EntityId> entities;
  std::map<RelationId, std::vector<RelationId>> supports;

  /// Binding a pattern entity twice to different targets is rejected.
  void bind(EntityId pattern, EntityId target) {
    auto [it, inserted] = entities.emplace(pattern, target);
    if (!inserted && it->second != target) {
      throw InputError("pattern entity " + std::to_string(pattern.value) +
                       " is already mapped to another entity");
    }
  }

  std::optional<EntityId> operator()(EntityId pattern) const {
    if (auto it = entities.find(pattern); it != entities.end()) {
      return it->second;
    }
    return std::nullopt;
  }

  bool is_total(const PatternGraph& h) const {
    return entities.size() == h.node_count();
  }

  friend bool operator==(const Mapping&, const Mapping&) = default;
};

struct MatchOptions {
  /// Compare labels through the taxonomy preorder; off means plain equality.
  bool subsumption = true;
  std::optional<std::size_t> limit;
};

namespace detail {

struct LabelOrder {
  const Taxonomy& taxonomy;
  bool subsumption;

  bool admits(const Label& general, const Label& specific,
              TermKind kind) const {
    if (general == specific) return true;
    return subsumption && taxonomy.subsumes(general, specific, kind);
  }

  bool entity_ok(const Label& pattern, const Label& target) const {
    return pattern.is_variable() || admits(pattern, target, TermKind::kClass);
  }
};

// Is `r` a support_X of pattern relation `rp` under the (partial) map `m`?
inline bool is_support(const PatternGraph& h, const ERGraph& g,
                       const LabelOrder& order, RelationId rp, RelationId r,
                       const std::function<std::optional<EntityId>(EntityId)>& m) {
  auto pargs = h.graph().args(rp);
  auto gargs = g.args(r);
  if (pargs.size() != gargs.size()) return false;
  for (std::size_t i = 0; i < pargs.size(); ++i) {
    auto mapped = m(pargs[i]);
    if (!mapped || *mapped != gargs[i]) return false;
  }
  return order.admits(h.graph().relation_label(rp), g.relation_label(r),
                      TermKind::kProperty);
}

}  // namespace detail

/// Entity map is a partial function from E_H into E_G. Functionality holds by
/// construction of Mapping; this checks the handles.
inline bool is_emapping(const Mapping& m, const PatternGraph& h,
                        const ERGraph& g) {
  for (const auto& [p, t] : m.entities) {
    if (p.index() >= h.node_count() || t.index() >= g.entity_count()) {
      return false;
    }
  }
  return true;
}

/// EMapping whose entity labels respect the preorder, and such that every
/// relation of the sub-pattern induced by the mapped entities has at least
/// one support whose label the pattern relation label subsumes. Supports
/// stored in `m` (if any) must themselves be valid supports.
inline bool is_ermmapping_x(const Mapping& m, const PatternGraph& h,
                            const ERGraph& g, const Taxonomy& t,
                            bool subsumption = true) {
  if (!is_emapping(m, h, g)) return false;
  detail::LabelOrder order{t, subsumption};
  for (const auto& [p, target] : m.entities) {
    if (!order.entity_ok(h.graph().entity_label(p), g.entity_label(target))) {
      return false;
    }
  }
  auto lookup = [&](EntityId e) { return m(e); };
  const ERGraph& hg = h.graph();
  for (std::uint32_t i = 0; i < hg.relation_count(); ++i) {
    RelationId rp(i);
    auto pargs = hg.args(rp);
    bool induced = std::all_of(pargs.begin(), pargs.end(),
                               [&](EntityId e) { return m(e).has_value(); });
    if (!induced) continue;
    EntityId anchor = *m(pargs[0]);
    bool supported = false;
    for (const auto& inc : g.incidences(anchor)) {
      if (inc.position == 0 &&
          detail::is_support(h, g, order, rp, inc.relation, lookup)) {
        supported = true;
        break;
      }
    }
    if (!supported) return false;
  }
  for (const auto& [rp, rs] : m.supports) {
    if (rp.index() >= hg.relation_count()) return false;
    for (RelationId r : rs) {
      if (r.index() >= g.relation_count() ||
          !detail::is_support(h, g, order, rp, r, lookup)) {
        return false;
      }
    }
  }
  return true;
}

namespace detail {

/// Backtracking over pattern entities in id order; candidates for each
/// entity are drawn from the target neighbourhood of an already-assigned
/// relation partner when one exists. Results therefore come out in
/// lexicographic order of the assigned target ids.
class Projector {
 public:
  Projector(const PatternGraph& h, const ERGraph& g, const Taxonomy& t,
            const MatchOptions& options)
      : hg_(h.graph()), g_(g), order_{t, options.subsumption},
        limit_(options.limit) {
    const std::size_t n = hg_.entity_count();
    closing_.resize(n);
    generator_.resize(n);
    for (std::uint32_t i = 0; i < hg_.relation_count(); ++i) {
      RelationId rp(i);
      auto args = hg_.args(rp);
      EntityId last = *std::max_element(args.begin(), args.end());
      closing_[last.index()].push_back(rp);
      for (std::uint32_t j = 0; j < args.size(); ++j) {
        EntityId e = args[j];
        if (generator_[e.index()]) continue;
        for (std::uint32_t k = 0; k < args.size(); ++k) {
          if (args[k] < e) {
            generator_[e.index()] = Generator{rp, k, j};
            break;
          }
        }
      }
    }
    admissible_.resize(hg_.relation_count());
    for (std::uint32_t i = 0; i < hg_.relation_count(); ++i) {
      const Label& pl = hg_.relation_label(RelationId(i));
      auto& mask = admissible_[i];
      mask.assign(g_.label_count(), 0);
      for (LabelId gl : g_.predicates()) {
        mask[gl.index()] = order_.admits(pl, g_.label(gl), TermKind::kProperty);
      }
    }
    assignment_.resize(n);
  }

  std::size_t run(const std::function<bool(const Mapping&)>& visit) {
    visit_ = &visit;
    emitted_ = 0;
    stopped_ = limit_ && *limit_ == 0;
    if (!stopped_) descend(0);
    return emitted_;
  }

 private:
  struct Generator {
    RelationId relation;
    std::uint32_t known_position;
    std::uint32_t own_position;
  };

  bool relation_ok(RelationId rp, RelationId r) const {
    return admissible_[rp.index()][g_.relation_label_id(r).index()] != 0;
  }

  bool has_support(RelationId rp) const {
    auto pargs = hg_.args(rp);
    EntityId anchor = assignment_[pargs[0].index()];
    for (const auto& inc : g_.incidences(anchor)) {
      if (inc.position == 0 && matches(rp, inc.relation)) return true;
    }
    return false;
  }

  bool matches(RelationId rp, RelationId r) const {
    auto pargs = hg_.args(rp);
    auto gargs = g_.args(r);
    if (pargs.size() != gargs.size() || !relation_ok(rp, r)) return false;
    for (std::size_t i = 0; i < pargs.size(); ++i) {
      if (assignment_[pargs[i].index()] != gargs[i]) return false;
    }
    return true;
  }

  std::vector<EntityId> candidates(std::size_t k) const {
    std::vector<EntityId> out;
    if (const auto& gen = generator_[k]) {
      auto pargs = hg_.args(gen->relation);
      EntityId known = assignment_[pargs[gen->known_position].index()];
      for (const auto& inc : g_.incidences(known)) {
        if (inc.position != gen->known_position) continue;
        auto gargs = g_.args(inc.relation);
        if (gargs.size() != pargs.size() ||
            !relation_ok(gen->relation, inc.relation)) {
          continue;
        }
        out.push_back(gargs[gen->own_position]);
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    } else {
      out.reserve(g_.entity_count());
      for (std::uint32_t i = 0; i < g_.entity_count(); ++i) {
        out.emplace_back(i);
      }
    }
    return out;
  }

  void descend(std::size_t k) {
    if (k == hg_.entity_count()) {
      emit();
      return;
    }
    const Label& plabel = hg_.entity_label(EntityId(static_cast<std::uint32_t>(k)));
    for (EntityId c : candidates(k)) {
      if (!order_.entity_ok(plabel, g_.entity_label(c))) continue;
      assignment_[k] = c;
      bool ok = std::all_of(closing_[k].begin(), closing_[k].end(),
                            [&](RelationId rp) { return has_support(rp); });
      if (ok) descend(k + 1);
      if (stopped_) return;
    }
  }

  void emit() {
    Mapping m;
    for (std::uint32_t i = 0; i < assignment_.size(); ++i) {
      m.entities.emplace(EntityId(i), assignment_[i]);
    }
    for (std::uint32_t i = 0; i < hg_.relation_count(); ++i) {
      RelationId rp(i);
      auto& sup = m.supports[rp];
      EntityId anchor = assignment_[hg_.args(rp)[0].index()];
      for (const auto& inc : g_.incidences(anchor)) {
        if (inc.position == 0 && matches(rp, inc.relation)) {
          sup.push_back(inc.relation);
        }
      }
    }
    ++emitted_;
    if (!(*visit_)(m) || (limit_ && emitted_ >= *limit_)) stopped_ = true;
  }

  const ERGraph& hg_;
  const ERGraph& g_;
  LabelOrder order_;
  std::optional<std::size_t> limit_;
  std::vector<std::vector<RelationId>> closing_;
  std::vector<std::optional<Generator>> generator_;
  std::vector<std::vector<char>> admissible_;
  std::vector<EntityId> assignment_;
  const std::function<bool(const Mapping&)>* visit_ = nullptr;
  std::size_t emitted_ = 0;
  bool stopped_ = false;
};

}  // namespace detail

/// Streams every projection (total ERMMapping_X) of `h` into `g`. `visit`
/// returns false to stop early. Returns the number of mappings emitted.
inline std::size_t for_each_projection(
    const PatternGraph& h, const ERGraph& g, const Taxonomy& t,
    const MatchOptions& options,
    const std::function<bool(const Mapping&)>& visit) {
  return detail::Projector(h, g, t, options).run(visit);
}

inline std::vector<Mapping> project(const PatternGraph& h, const ERGraph& g,
                                    const Taxonomy& t,
                                    const MatchOptions& options = {}) {
  std::vector<Mapping> out;
  for_each_projection(h, g, t, options, [&](const Mapping& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace semsna
