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
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "semsna/error.hpp"
#include "semsna/graph.hpp"
#include "semsna/label.hpp"

namespace semsna {

inline constexpr std::string_view kPersonBase = "http://example.org/person/";

namespace detail {

/// Uniform in [0, n) from raw engine output by rejection. Unlike
/// std::uniform_int_distribution the sequence is fixed across standard
/// libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

}  // namespace detail

inline std::string person_iri(std::uint64_t i, std::uint64_t count) {
  std::size_t width = std::max<std::size_t>(4, std::to_string(count - 1).size());
  std::string digits = std::to_string(i);
  return std::string(kPersonBase) + std::string(width - digits.size(), '0') +
         digits;
}

/// Directed preferential attachment labelled foaf:knows. The first m + 1
/// nodes form a directed cycle; each later node links to m distinct earlier
/// nodes drawn with probability proportional to degree, each link oriented
/// by a fair coin. Same arguments, same graph.
inline ERGraph generate_graph(std::uint64_t seed, std::uint64_t nodes,
                              std::uint64_t edges_per_node) {
  if (nodes < 2) throw InputError("generate needs at least 2 nodes");
  if (edges_per_node < 1) throw InputError("generate needs edges per node >= 1");
  std::mt19937_64 rng(seed);
  ERGraph g;
  const Label knows = Label::iri(std::string(vocab::kFoafKnows));
  std::vector<EntityId> ids;
  ids.reserve(nodes);
  for (std::uint64_t i = 0; i < nodes; ++i) {
    ids.push_back(g.add_entity(Label::iri(person_iri(i, nodes))));
  }
  // Each edge endpoint once: sampling an entry is degree-proportional.
  std::vector<std::uint64_t> ends;
  auto link = [&](std::uint64_t a, std::uint64_t b) {
    const EntityId args[] = {ids[a], ids[b]};
    g.add_relation(knows, args);
    ends.push_back(a);
    ends.push_back(b);
  };
  const std::uint64_t seeds = std::min(edges_per_node + 1, nodes);
  for (std::uint64_t i = 0; i < seeds; ++i) link(i, (i + 1) % seeds);
  std::vector<std::uint64_t> chosen;
  for (std::uint64_t v = seeds; v < nodes; ++v) {
    chosen.clear();
    while (chosen.size() < edges_per_node) {
      std::uint64_t u = ends[detail::uniform_below(rng, ends.size())];
      if (std::find(chosen.begin(), chosen.end(), u) == chosen.end()) {
        chosen.push_back(u);
      }
    }
    for (std::uint64_t u : chosen) {
      if (detail::uniform_below(rng, 2) == 0) {
        link(v, u);
      } else {
        link(u, v);
      }
    }
  }
  return g;
}

}  // namespace semsna
