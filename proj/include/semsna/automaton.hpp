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
#include <vector>

#include "semsna/graph.hpp"
#include "semsna/path_pattern.hpp"
#include "semsna/taxonomy.hpp"

namespace semsna {

namespace detail {

// Thompson construction; one NFA per pattern, independent of any graph.
struct Nfa {
  struct State {
    std::vector<int> epsilon;
    std::vector<std::pair<int, int>> moves;  // (atom index, target)
  };
  std::vector<State> states;
  std::vector<Label> atoms;
  int start = 0;
  int accept = 0;

  int add_state() {
    states.emplace_back();
    return static_cast<int>(states.size()) - 1;
  }

  int atom_index(const Label& l) {
    auto it = std::find(atoms.begin(), atoms.end(), l);
    if (it != atoms.end()) return static_cast<int>(it - atoms.begin());
    atoms.push_back(l);
    return static_cast<int>(atoms.size()) - 1;
  }

  std::pair<int, int> build(const PathExpr& e) {
    int s = add_state();
    int f = add_state();
    switch (e.kind) {
      case PathExpr::Kind::kAtom:
        states[s].moves.emplace_back(atom_index(e.atom), f);
        break;
      case PathExpr::Kind::kStar: {
        auto [cs, cf] = build(e.children[0]);
        states[s].epsilon.push_back(cs);
        states[s].epsilon.push_back(f);
        states[cf].epsilon.push_back(cs);
        states[cf].epsilon.push_back(f);
        break;
      }
      case PathExpr::Kind::kSeq: {
        int prev = s;
        for (const auto& c : e.children) {
          auto [cs, cf] = build(c);
          states[prev].epsilon.push_back(cs);
          prev = cf;
        }
        states[prev].epsilon.push_back(f);
        break;
      }
      case PathExpr::Kind::kAlt:
        for (const auto& c : e.children) {
          auto [cs, cf] = build(c);
          states[s].epsilon.push_back(cs);
          states[cf].epsilon.push_back(f);
        }
        break;
    }
    return {s, f};
  }

  void close(std::vector<int>& set) const {
    std::vector<int> stack(set);
    std::vector<char> in(states.size(), 0);
    for (int s : set) in[s] = 1;
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      for (int t : states[s].epsilon) {
        if (!in[t]) {
          in[t] = 1;
          set.push_back(t);
          stack.push_back(t);
        }
      }
    }
    std::sort(set.begin(), set.end());
  }
};

}  // namespace detail

/// A path pattern determinized against the relation labels of one graph.
/// Each label path has at most one run, so counting runs in the product of
/// graph and automaton counts label paths exactly. States that cannot reach
/// acceptance are folded into the dead state (-1).
class CompiledPattern {
 public:
  static constexpr int kDead = -1;

  CompiledPattern(const PathPattern& pattern, const ERGraph& g,
                  const Taxonomy& t) {
    detail::Nfa nfa;
    auto [s, f] = nfa.build(pattern.expr);
    nfa.start = s;
    nfa.accept = f;

    label_slot_.assign(g.label_count(), -1);
    std::vector<LabelId> alphabet(g.predicates().begin(), g.predicates().end());
    std::sort(alphabet.begin(), alphabet.end());
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      label_slot_[alphabet[i].index()] = static_cast<int>(i);
    }
    const std::size_t width = alphabet.size();
    // admits[atom][slot]
    std::vector<std::vector<char>> admits(nfa.atoms.size(),
                                          std::vector<char>(width, 0));
    for (std::size_t a = 0; a < nfa.atoms.size(); ++a) {
      for (std::size_t i = 0; i < width; ++i) {
        const Label& l = g.label(alphabet[i]);
        admits[a][i] = l == nfa.atoms[a] ||
                       (pattern.subsumption &&
                        t.subsumes(nfa.atoms[a], l, TermKind::kProperty));
      }
    }

    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> sets;
    std::vector<int> init{nfa.start};
    nfa.close(init);
    index.emplace(init, 0);
    sets.push_back(init);
    std::vector<int> raw;  // transitions before dead-state folding
    for (std::size_t q = 0; q < sets.size(); ++q) {
      for (std::size_t i = 0; i < width; ++i) {
        std::vector<int> next;
        for (int ns : sets[q]) {
          for (auto [atom, target] : nfa.states[ns].moves) {
            if (admits[atom][i]) next.push_back(target);
          }
        }
        int id = kDead;
        if (!next.empty()) {
          std::sort(next.begin(), next.end());
          next.erase(std::unique(next.begin(), next.end()), next.end());
          nfa.close(next);
          auto [it, inserted] =
              index.emplace(next, static_cast<int>(sets.size()));
          if (inserted) sets.push_back(next);
          id = it->second;
        }
        raw.push_back(id);
      }
    }
    const std::size_t n = sets.size();
    accepting_.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
      accepting_[q] = std::binary_search(sets[q].begin(), sets[q].end(),
                                         nfa.accept);
    }
    // Live = can reach an accepting state.
    std::vector<char> live(accepting_.begin(), accepting_.end());
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t q = 0; q < n; ++q) {
        if (live[q]) continue;
        for (std::size_t i = 0; i < width; ++i) {
          int to = raw[q * width + i];
          if (to != kDead && live[to]) {
            live[q] = 1;
            changed = true;
            break;
          }
        }
      }
    }
    width_ = width;
    next_.resize(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
      next_[k] = raw[k] != kDead && live[raw[k]] ? raw[k] : kDead;
    }
    start_ = live[0] ? 0 : kDead;
    state_count_ = n;
    analyse(live);
  }

  int start() const noexcept { return start_; }
  std::size_t state_count() const noexcept { return state_count_; }
  bool accepting(int q) const { return q != kDead && accepting_[q]; }

  int next(int q, LabelId label) const {
    if (q == kDead || label.index() >= label_slot_.size()) return kDead;
    int slot = label_slot_[label.index()];
    return slot < 0 ? kDead : next_[q * width_ + slot];
  }

  /// No non-empty word is accepted.
  bool empty() const noexcept { return empty_; }

  /// Non-empty words accepted are exactly A+ for the label set A of
  /// `admissible()`. Then the product with the graph collapses onto the
  /// graph restricted to admissible relations.
  bool uniform() const noexcept { return uniform_; }

  /// Whether `label` occurs on any live transition.
  bool admissible(LabelId label) const {
    if (label.index() >= label_slot_.size()) return false;
    int slot = label_slot_[label.index()];
    return slot >= 0 && usable_[slot];
  }

 private:
  void analyse(const std::vector<char>& live) {
    usable_.assign(width_, 0);
    std::vector<char> reach(state_count_, 0);
    std::vector<int> stack;
    if (start_ != kDead) {
      reach[start_] = 1;
      stack.push_back(start_);
    }
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      for (std::size_t i = 0; i < width_; ++i) {
        int to = next_[q * width_ + i];
        if (to == kDead) continue;
        usable_[i] = 1;
        if (!reach[to]) {
          reach[to] = 1;
          stack.push_back(to);
        }
      }
    }
    empty_ = true;
    for (std::size_t q = 0; q < state_count_; ++q) {
      if (reach[q] && q != static_cast<std::size_t>(start_) && accepting_[q]) {
        empty_ = false;
      }
      // A start state on a cycle can be accepting after >= 1 step as well.
    }
    if (start_ != kDead && accepting_[start_]) {
      for (std::size_t q = 0; q < state_count_ && empty_; ++q) {
        for (std::size_t i = 0; i < width_; ++i) {
          if (reach[q] && next_[q * width_ + i] == start_) empty_ = false;
        }
      }
    }
    uniform_ = !empty_;
    for (std::size_t q = 0; q < state_count_ && uniform_; ++q) {
      if (!reach[q] || !live[q]) continue;
      for (std::size_t i = 0; i < width_; ++i) {
        int to = next_[q * width_ + i];
        if ((to != kDead) != static_cast<bool>(usable_[i]) ||
            (to != kDead && !accepting_[to])) {
          uniform_ = false;
          break;
        }
      }
    }
  }

  std::vector<int> label_slot_;
  std::vector<int> next_;
  std::vector<char> accepting_;
  std::vector<char> usable_;
  std::size_t width_ = 0;
  std::size_t state_count_ = 0;
  int start_ = kDead;
  bool empty_ = true;
  bool uniform_ = false;
};

}  // namespace semsna
