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

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "semsna/error.hpp"
#include "semsna/label.hpp"

namespace semsna {

enum class TermKind : std::uint8_t { kProperty, kClass };

/// Reflexive-transitive closure of rdfs:subPropertyOf and rdfs:subClassOf.
/// Cycles are allowed; labels on a cycle subsume each other.
class Taxonomy {
 public:
  void add_sub_property(const Label& sub, const Label& super) {
    order(TermKind::kProperty).add(sub, super);
  }
  void add_sub_class(const Label& sub, const Label& super) {
    order(TermKind::kClass).add(sub, super);
  }

  /// Feeds rdfs:subPropertyOf / rdfs:subClassOf triples; ignores the rest.
  /// Returns true when the triple was a schema assertion.
  bool observe(const Label& s, const Label& p, const Label& o) {
    if (!p.is_iri() || o.is_literal() || s.is_literal()) return false;
    if (p.value() == vocab::kSubPropertyOf) {
      add_sub_property(s, o);
      return true;
    }
    if (p.value() == vocab::kSubClassOf) {
      add_sub_class(s, o);
      return true;
    }
    return false;
  }

  void close() {
    properties_.close();
    classes_.close();
  }

  bool closed() const noexcept {
    return properties_.closed && classes_.closed;
  }

  /// True iff `specific` == `general` or specific is declared (transitively)
  /// below general. Unknown labels subsume only themselves.
  bool subsumes(const Label& general, const Label& specific,
                TermKind kind = TermKind::kProperty) const {
    if (general == specific) return true;
    const Order& o = order(kind);
    if (!o.closed) throw ContractViolation("taxonomy queried before close()");
    auto g = o.ids.find(general.canonical());
    auto s = o.ids.find(specific.canonical());
    if (g == o.ids.end() || s == o.ids.end()) return false;
    return o.closure.contains(key(s->second, g->second));
  }

  /// Labels `l` with subsumes(general, l), including `general` itself.
  std::vector<Label> descendants(const Label& general,
                                 TermKind kind = TermKind::kProperty) const {
    std::vector<Label> out{general};
    const Order& o = order(kind);
    auto g = o.ids.find(general.canonical());
    if (g == o.ids.end()) return out;
    for (std::uint32_t i = 0; i < o.labels.size(); ++i) {
      if (i != g->second && o.closure.contains(key(i, g->second))) {
        out.push_back(o.labels[i]);
      }
    }
    return out;
  }

  /// Number of (specific, general) pairs in the closure, reflexive pairs
  /// included.
  std::size_t closure_size(TermKind kind) const {
    return order(kind).closure.size();
  }

  bool empty() const noexcept {
    return properties_.labels.empty() && classes_.labels.empty();
  }

 private:
  static std::uint64_t key(std::uint32_t specific, std::uint32_t general) {
    return (static_cast<std::uint64_t>(specific) << 32) | general;
  }

  struct Order {
    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<Label> labels;
    std::vector<std::vector<std::uint32_t>> supers;
    std::unordered_set<std::uint64_t> closure;
    bool closed = true;

    std::uint32_t id(const Label& l) {
      auto [it, inserted] =
          ids.emplace(l.canonical(), static_cast<std::uint32_t>(labels.size()));
      if (inserted) {
        labels.push_back(l);
        supers.emplace_back();
      }
      return it->second;
    }

    void add(const Label& sub, const Label& super) {
      std::uint32_t s = id(sub);
      std::uint32_t g = id(super);
      supers[s].push_back(g);
      closed = false;
    }

    // Depth-first reachability from every node over the direct-super edges.
    void close() {
      if (closed) return;
      closure.clear();
      std::vector<std::uint32_t> stack;
      std::vector<std::uint32_t> seen(labels.size(), UINT32_MAX);
      for (std::uint32_t start = 0; start < labels.size(); ++start) {
        stack.assign(1, start);
        seen[start] = start;
        while (!stack.empty()) {
          std::uint32_t n = stack.back();
          stack.pop_back();
          closure.insert(key(start, n));
          for (std::uint32_t up : supers[n]) {
            if (seen[up] != start) {
              seen[up] = start;
              stack.push_back(up);
            }
          }
        }
      }
      closed = true;
    }
  };

  Order& order(TermKind k) {
    return k == TermKind::kProperty ? properties_ : classes_;
  }
  const Order& order(TermKind k) const {
    return k == TermKind::kProperty ? properties_ : classes_;
  }

  Order properties_;
  Order classes_;
};

}  // namespace semsna
