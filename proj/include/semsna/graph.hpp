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

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "semsna/error.hpp"
#include "semsna/label.hpp"

namespace semsna {

/// Opaque index into one graph's tables. Handles are plain values and may be
/// copied freely between threads; they only mean something together with the
/// graph that issued them.
template <class Tag>
struct Handle {
  std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

  constexpr Handle() = default;
  constexpr explicit Handle(std::uint32_t v) : value(v) {}
  constexpr std::size_t index() const noexcept { return value; }
  friend constexpr auto operator<=>(Handle, Handle) = default;
};

struct EntityTag;
struct RelationTag;
struct LabelTag;
using EntityId = Handle<EntityTag>;
using RelationId = Handle<RelationTag>;
using LabelId = Handle<LabelTag>;

enum class Direction : std::uint8_t { kOut, kIn, kEither };

inline Direction reverse(Direction d) {
  switch (d) {
    case Direction::kOut: return Direction::kIn;
    case Direction::kIn: return Direction::kOut;
    case Direction::kEither: return Direction::kEither;
  }
  return d;
}

/// One traversal step: the relation used and the entity reached.
struct Step {
  RelationId relation;
  EntityId other;
  friend bool operator==(const Step&, const Step&) = default;
};

/// Entity-relation graph: labelled entities and labelled hyperarcs whose
/// arguments are ordered entity tuples. RDF triples are arity-2 relations
/// (subject, object) labelled with the predicate.
///
/// Entities are deduplicated by label. Parallel relations with identical
/// label and arguments are permitted here; the RDF loaders collapse them.
/// After freeze() the graph is read-only and may be shared between threads.
class ERGraph {
 public:
  struct Incidence {
    RelationId relation;
    std::uint32_t position;
    friend bool operator==(const Incidence&, const Incidence&) = default;
  };

  LabelId intern(const Label& label) {
    auto key = label.canonical();
    if (auto it = label_index_.find(key); it != label_index_.end()) {
      return it->second;
    }
    LabelId id(static_cast<std::uint32_t>(labels_.size()));
    labels_.push_back(label);
    label_index_.emplace(std::move(key), id);
    entity_of_label_.push_back(EntityId{});
    return id;
  }

  std::optional<LabelId> find_label(const Label& label) const {
    if (auto it = label_index_.find(label.canonical());
        it != label_index_.end()) {
      return it->second;
    }
    return std::nullopt;
  }

  const Label& label(LabelId id) const { return labels_.at(id.index()); }
  std::size_t label_count() const noexcept { return labels_.size(); }

  EntityId add_entity(const Label& label) {
    check_mutable();
    LabelId lid = intern(label);
    EntityId& slot = entity_of_label_[lid.index()];
    if (slot.value != EntityId{}.value) return slot;
    slot = EntityId(static_cast<std::uint32_t>(entity_labels_.size()));
    entity_labels_.push_back(lid);
    incidences_.emplace_back();
    out_.emplace_back();
    in_.emplace_back();
    return slot;
  }

  std::optional<EntityId> find_entity(const Label& label) const {
    auto lid = find_label(label);
    if (!lid) return std::nullopt;
    EntityId e = entity_of_label_[lid->index()];
    if (e.value == EntityId{}.value) return std::nullopt;
    return e;
  }

  /// n-ary relation; args must be handles of this graph (arity >= 1).
  RelationId add_relation(const Label& label, std::span<const EntityId> args) {
    check_mutable();
    if (args.empty()) throw InputError("relation needs at least one argument");
    for (EntityId e : args) check_entity(e);
    LabelId lid = intern(label);
    RelationId r(static_cast<std::uint32_t>(relation_labels_.size()));
    relation_labels_.push_back(lid);
    relation_args_.emplace_back(args.begin(), args.end());
    for (std::uint32_t i = 0; i < args.size(); ++i) {
      incidences_[args[i].index()].push_back({r, i});
    }
    if (args.size() == 2) {
      out_[args[0].index()].push_back({r, args[1]});
      in_[args[1].index()].push_back({r, args[0]});
    }
    if (predicate_seen_.insert(lid.value).second) predicates_.push_back(lid);
    return r;
  }

  RelationId add_triple(const Label& s, const Label& p, const Label& o) {
    if (p.is_literal() || p.is_variable()) {
      throw InputError("predicate must be an IRI: " + p.canonical());
    }
    EntityId se = add_entity(s);
    EntityId oe = add_entity(o);
    const EntityId args[] = {se, oe};
    return add_relation(p, args);
  }

  std::size_t entity_count() const noexcept { return entity_labels_.size(); }
  std::size_t relation_count() const noexcept {
    return relation_labels_.size();
  }

  LabelId entity_label_id(EntityId e) const {
    check_entity(e);
    return entity_labels_[e.index()];
  }
  const Label& entity_label(EntityId e) const {
    return labels_[entity_label_id(e).index()];
  }
  LabelId relation_label_id(RelationId r) const {
    check_relation(r);
    return relation_labels_[r.index()];
  }
  const Label& relation_label(RelationId r) const {
    return labels_[relation_label_id(r).index()];
  }
  std::span<const EntityId> args(RelationId r) const {
    check_relation(r);
    return relation_args_[r.index()];
  }

  /// Every (relation, argument position) where `e` occurs, by relation id.
  std::span<const Incidence> incidences(EntityId e) const {
    check_entity(e);
    return incidences_[e.index()];
  }

  /// Binary relations with `e` as subject / object, in relation-id order.
  std::span<const Step> out_steps(EntityId e) const {
    check_entity(e);
    return out_[e.index()];
  }
  std::span<const Step> in_steps(EntityId e) const {
    check_entity(e);
    return in_[e.index()];
  }

  /// Distinct relation labels, in first-use order.
  std::span<const LabelId> predicates() const noexcept { return predicates_; }

  /// Calls fn(Step) for each binary relation incident to `e` in `dir` whose
  /// label passes `admissible`, in relation-id order. A self-loop is reported
  /// once under kEither.
  template <class Admissible, class Fn>
  void for_each_neighbor(EntityId e, Direction dir, Admissible&& admissible,
                         Fn&& fn) const {
    check_entity(e);
    const auto& outs = out_[e.index()];
    const auto& ins = in_[e.index()];
    auto emit = [&](const Step& s) {
      if (admissible(relation_labels_[s.relation.index()])) fn(s);
    };
    if (dir == Direction::kOut) {
      for (const Step& s : outs) emit(s);
    } else if (dir == Direction::kIn) {
      for (const Step& s : ins) emit(s);
    } else {
      std::size_t i = 0, j = 0;
      while (i < outs.size() || j < ins.size()) {
        if (j == ins.size() ||
            (i < outs.size() && outs[i].relation < ins[j].relation)) {
          emit(outs[i++]);
        } else if (i == outs.size() || ins[j].relation < outs[i].relation) {
          emit(ins[j++]);
        } else {
          emit(outs[i++]);
          ++j;
        }
      }
    }
  }

  template <class Admissible>
  std::vector<Step> neighbors(EntityId e, Direction dir,
                              Admissible&& admissible) const {
    std::vector<Step> out;
    for_each_neighbor(e, dir, admissible,
                      [&](const Step& s) { out.push_back(s); });
    return out;
  }

  std::vector<Step> neighbors(EntityId e, Direction dir) const {
    return neighbors(e, dir, [](LabelId) { return true; });
  }

  bool contains_triple(EntityId s, LabelId p, EntityId o) const {
    for (const Step& st : out_steps(s)) {
      if (st.other == o && relation_labels_[st.relation.index()] == p) {
        return true;
      }
    }
    return false;
  }

  void freeze() noexcept { frozen_ = true; }
  bool frozen() const noexcept { return frozen_; }

  void check_entity(EntityId e) const {
    if (e.index() >= entity_labels_.size()) {
      throw ContractViolation("entity handle " + std::to_string(e.value) +
                              " does not belong to this graph");
    }
  }
  void check_relation(RelationId r) const {
    if (r.index() >= relation_labels_.size()) {
      throw ContractViolation("relation handle " + std::to_string(r.value) +
                              " does not belong to this graph");
    }
  }

 private:
  void check_mutable() const {
    if (frozen_) throw ContractViolation("graph is frozen");
  }

  std::vector<Label> labels_;
  std::unordered_map<std::string, LabelId> label_index_;
  std::vector<EntityId> entity_of_label_;

  std::vector<LabelId> entity_labels_;
  std::vector<std::vector<Incidence>> incidences_;
  std::vector<std::vector<Step>> out_;
  std::vector<std::vector<Step>> in_;

  std::vector<LabelId> relation_labels_;
  std::vector<std::vector<EntityId>> relation_args_;

  std::vector<LabelId> predicates_;
  std::unordered_set<std::uint32_t> predicate_seen_;

  bool frozen_ = false;
};

}  // namespace semsna
