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
#include <gtest/gtest.h>

#include <map>
#include <random>

#include "semsna/metrics.hpp"
#include "semsna/oracle.hpp"
#include "test_support.hpp"

namespace semsna {
namespace {

using oracle::Rational;
using testing::kBestFriend;
using testing::kKnows;
using testing::kWorksWith;
using testing::node;

const std::string kSubProp = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";

MetricParams params(Direction d, std::optional<std::int64_t> n = {}) {
  MetricParams p;
  p.direction = d;
  p.max_length = n;
  return p;
}

template <class N>
std::map<EntityId, N> values(const MetricReport<N>& r) {
  std::map<EntityId, N> out;
  for (const auto& c : r.results) out.emplace(c.node, c.value);
  return out;
}

template <class N>
N value_of(const MetricReport<N>& r, EntityId e) {
  for (const auto& c : r.results) {
    if (c.node == e) return c.value;
  }
  ADD_FAILURE() << "no result for entity " << e.value;
  return N(-1);
}

RdfDocument chain3() { return testing::load(testing::edges({{"a", "b"}, {"b", "c"}})); }

RdfDocument diamond() {
  return testing::load(
      testing::edges({{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}}));
}

TEST(Degree, ClassicDegreeOnChain) {
  auto d = chain3();
  auto r = degree(d.graph, d.taxonomy, params(Direction::kEither, 1));
  EXPECT_EQ(r.kind, MetricKind::kDegree);
  EXPECT_EQ(value_of(r, node(d, "b")), 2.0);
  EXPECT_EQ(value_of(r, node(d, "a")), 1.0);
}

TEST(Degree, TwoDegreeOutOnChain) {
  auto d = chain3();
  auto r = degree(d.graph, d.taxonomy, params(Direction::kOut, 2));
  EXPECT_EQ(r.kind, MetricKind::kOutDegree);
  EXPECT_EQ(value_of(r, node(d, "a")), 2.0);
  EXPECT_EQ(value_of(r, node(d, "c")), 0.0);
}

TEST(Degree, IsolatedNodeIsZero) {
  auto d = testing::load({{"a", kKnows, "b"}, {"z", kWorksWith, "\"x"}});
  auto r = degree(d.graph, d.taxonomy, params(Direction::kEither));
  EXPECT_EQ(value_of(r, node(d, "z")), 0.0);
  for (const auto& c : r.results) {
    EXPECT_FALSE(d.graph.entity_label(c.node).is_literal());
  }
}

TEST(Closeness, Examples) {
  auto d = chain3();
  auto fwd = closeness<Rational>(d.graph, d.taxonomy, params(Direction::kOut));
  EXPECT_EQ(value_of(fwd, node(d, "a")), Rational(1, 3));
  EXPECT_EQ(fwd.results.size(), 2u);
  auto either = closeness<Rational>(d.graph, d.taxonomy, params(Direction::kEither));
  EXPECT_EQ(value_of(either, node(d, "b")), Rational(1, 2));
  auto pair = testing::load(testing::edges({{"a", "b"}}));
  auto p = closeness(pair.graph, pair.taxonomy, params(Direction::kOut));
  ASSERT_EQ(p.results.size(), 1u);
  EXPECT_EQ(p.results[0].value, 1.0);
  EXPECT_EQ(p.results[0].reachable, 1u);
}

TEST(Geodesics, CountExamples) {
  auto d = diamond();
  auto P = params(Direction::kOut);
  EXPECT_EQ(geodesic_count(d.graph, d.taxonomy, node(d, "a"), node(d, "d"), P), 2u);
  EXPECT_EQ(geodesic_count(d.graph, d.taxonomy, node(d, "a"), node(d, "b"), P), 1u);
  EXPECT_EQ(geodesic_count(d.graph, d.taxonomy, node(d, "d"), node(d, "a"), P), 0u);
  EXPECT_EQ(geodesic_count_through(d.graph, d.taxonomy, node(d, "b"), node(d, "a"),
                                   node(d, "d"), P),
            1u);
  EXPECT_EQ(pair_betweenness(d.graph, d.taxonomy, node(d, "b"), node(d, "a"),
                             node(d, "d"), P),
            0.5);
  auto c = chain3();
  EXPECT_EQ(geodesic_count_through(c.graph, c.taxonomy, node(c, "b"), node(c, "a"),
                                   node(c, "c"), P),
            1u);
  EXPECT_EQ(geodesic_count_through(c.graph, c.taxonomy, node(c, "a"), node(c, "a"),
                                   node(c, "c"), P),
            0u);
  auto tri = testing::load(testing::edges({{"a", "b"}, {"b", "c"}, {"a", "c"}}));
  EXPECT_EQ(geodesic_count_through(tri.graph, tri.taxonomy, node(tri, "b"),
                                   node(tri, "a"), node(tri, "c"), P),
            0u);
}

TEST(Betweenness, Examples) {
  auto c = chain3();
  auto r = betweenness(c.graph, c.taxonomy, params(Direction::kOut));
  EXPECT_EQ(value_of(r, node(c, "b")), 1.0);
  EXPECT_EQ(value_of(r, node(c, "a")), 0.0);

  auto tri = testing::load(testing::edges(
      {{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}, {"a", "c"}, {"c", "a"}}));
  for (const auto& x : betweenness(tri.graph, tri.taxonomy, params(Direction::kOut)).results) {
    EXPECT_EQ(x.value, 0.0);
  }
  auto cyc = testing::load(testing::edges({{"a", "b"}, {"b", "c"}, {"c", "a"}}));
  for (const auto& x : betweenness(cyc.graph, cyc.taxonomy, params(Direction::kEither)).results) {
    EXPECT_EQ(x.value, 0.0);
  }

  auto star = testing::load(
      testing::edges({{"x", "l1"}, {"x", "l2"}, {"x", "l3"}, {"x", "l4"}}));
  auto s = betweenness<Rational>(star.graph, star.taxonomy, params(Direction::kEither));
  EXPECT_EQ(value_of(s, node(star, "x")), Rational(6));
}

TEST(Betweenness, BareTypeMeansItsStar) {
  auto c = chain3();
  MetricParams p = params(Direction::kOut);
  p.type = PathExpr::make_atom(kKnows);
  EXPECT_EQ(value_of(betweenness(c.graph, c.taxonomy, p), node(c, "b")), 1.0);
}

TEST(Oracle, Examples) {
  auto c5 = testing::load(
      testing::edges({{"n0", "n1"}, {"n1", "n2"}, {"n2", "n3"}, {"n3", "n4"}}));
  auto r = oracle::betweenness(c5.graph, c5.taxonomy, params(Direction::kEither));
  EXPECT_EQ(value_of(r, node(c5, "n1")), Rational(3));
  EXPECT_EQ(value_of(r, node(c5, "n2")), Rational(4));
  EXPECT_EQ(value_of(r, node(c5, "n3")), Rational(3));
  ERGraph empty;
  Taxonomy t;
  t.close();
  EXPECT_TRUE(oracle::betweenness(empty, t, params(Direction::kOut)).results.empty());
}

TEST(Oracle, SizeGuard) {
  std::vector<std::pair<std::string, std::string>> es;
  for (std::size_t i = 0; i <= oracle::kMaxNodes; ++i) {
    es.push_back({"n" + std::to_string(i), "n" + std::to_string(i + 1)});
  }
  auto d = testing::load(testing::edges(es));
  EXPECT_THROW(oracle::betweenness(d.graph, d.taxonomy, params(Direction::kOut)),
               InputError);
}

TEST(Oracle, RejectsUnsupportedTypes) {
  auto d = chain3();
  MetricParams p = params(Direction::kOut);
  p.type = PathExpr::seq({PathExpr::make_atom(kKnows), PathExpr::make_atom(kKnows)});
  EXPECT_THROW(oracle::closeness(d.graph, d.taxonomy, p), InputError);
}

TEST(Metrics, BudgetMarksTruncation) {
  auto d = diamond();
  MetricParams p = params(Direction::kOut);
  p.budget = 2;
  auto r = betweenness(d.graph, d.taxonomy, p);
  EXPECT_TRUE(r.truncated);
  EXPECT_LE(r.steps, 2u);
  for (const auto& x : r.results) EXPECT_TRUE(x.truncated);
  p.budget = 0;
  EXPECT_THROW(degree(d.graph, d.taxonomy, p), InputError);
}

struct Graph {
  RdfDocument doc;
  MetricParams params;
};

Graph random_graph(std::mt19937_64& rng, std::size_t max_nodes) {
  const std::size_t n = 1 + testing::below(rng, max_nodes);
  std::uniform_real_distribution<double> density(0.1, 0.7);
  auto triples = testing::random_triples(rng, n, density(rng),
                                         {kKnows, kBestFriend, kWorksWith});
  if (testing::below(rng, 2)) triples.push_back({kBestFriend, kSubProp, kKnows});
  Graph g{testing::load(triples), {}};
  g.params.direction = static_cast<Direction>(testing::below(rng, 3));
  g.params.subsumption = testing::below(rng, 2) == 0;
  switch (testing::below(rng, 3)) {
    case 0: break;
    case 1: g.params.type = PathExpr::make_atom(kKnows); break;
    default:
      g.params.type = PathExpr::star(PathExpr::alt(
          {PathExpr::make_atom(kKnows), PathExpr::make_atom(kWorksWith)}));
  }
  g.params.max_length = static_cast<std::int64_t>(1 + testing::below(rng, 3));
  return g;
}

TEST(MetricsProperty, EngineMatchesOracles) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 300; ++round) {
    Graph g = random_graph(rng, 7);
    const ERGraph& G = g.doc.graph;
    const Taxonomy& T = g.doc.taxonomy;
    ASSERT_EQ(values(betweenness<Rational>(G, T, g.params)),
              values(oracle::betweenness(G, T, g.params)))
        << "round " << round;
    ASSERT_EQ(values(closeness<Rational>(G, T, g.params)),
              values(oracle::closeness(G, T, g.params)));
    ASSERT_EQ(values(degree<Rational>(G, T, g.params)),
              values(oracle::degree(G, T, g.params)));
    auto fl = values(betweenness<double>(G, T, g.params));
    for (const auto& [e, v] : values(oracle::betweenness(G, T, g.params))) {
      ASSERT_NEAR(fl.at(e), static_cast<double>(v), 1e-9);
    }
  }
}

// Expressions the oracle does not cover, checked against brute-force
// elementary paths filtered by the grammar-level acceptor.
TEST(MetricsProperty, GeneralPatternsMatchBruteForce) {
  std::mt19937_64 rng(8);
  const auto k = PathExpr::make_atom(kKnows);
  const auto w = PathExpr::make_atom(kWorksWith);
  const std::vector<PathExpr> types = {
      PathExpr::seq({k, PathExpr::star(w)}),
      PathExpr::seq({k, k}),
      PathExpr::star(PathExpr::seq({k, w})),
      PathExpr::alt({PathExpr::seq({k, k}), w}),
  };
  for (int round = 0; round < 200; ++round) {
    Graph g = random_graph(rng, 6);
    g.params.type = types[testing::below(rng, types.size())];
    const ERGraph& G = g.doc.graph;
    const PathPattern pat = g.params.pattern();
    std::map<EntityId, Rational> bw, deg;
    for (std::uint32_t s = 0; s < G.entity_count(); ++s) {
      if (G.entity_label(EntityId(s)).is_literal()) continue;
      bw[EntityId(s)] = 0;
      deg[EntityId(s)] = 0;
    }
    const std::size_t n_max = static_cast<std::size_t>(*g.params.max_length);
    for (const auto& [s, _] : bw) {
      std::map<EntityId, std::vector<Path>> by_target;
      for (const auto& p : testing::brute_paths(
               G, s, g.params.direction, [](LabelId) { return true; })) {
        if (testing::accepts(pat, testing::word_of(G, p), g.doc.taxonomy)) {
          by_target[p.target()].push_back(p);
        }
      }
      for (const auto& p : testing::brute_paths(G, s, Direction::kOut,
                                                [](LabelId) { return true; },
                                                n_max)) {
        if (!testing::accepts(pat, testing::word_of(G, p), g.doc.taxonomy)) continue;
        if (g.params.direction != Direction::kIn) deg[p.source()] += 1;
        if (g.params.direction != Direction::kOut) deg[p.target()] += 1;
      }
      for (const auto& [t, ps] : by_target) {
        if (g.params.direction == Direction::kEither && t < s) continue;
        std::size_t best = SIZE_MAX;
        for (const auto& p : ps) best = std::min(best, p.length());
        if (best < 2) continue;
        std::map<EntityId, int> through;
        int total = 0;
        for (const auto& p : ps) {
          if (p.length() != best) continue;
          ++total;
          for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) ++through[p.nodes[i]];
        }
        for (const auto& [b, c] : through) bw[b] += Rational(c, total);
      }
    }
    ASSERT_EQ(values(betweenness<Rational>(G, g.doc.taxonomy, g.params)), bw)
        << "round " << round << " " << to_string(g.params.type);
    ASSERT_EQ(values(degree<Rational>(G, g.doc.taxonomy, g.params)), deg)
        << "round " << round << " " << to_string(g.params.type);
  }
}

TEST(MetricsProperty, OneDegreeCountsIncidentRelations) {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 200; ++round) {
    Graph g = random_graph(rng, 8);
    g.params.max_length = 1;
    g.params.type = default_type();
    const ERGraph& G = g.doc.graph;
    auto ok = testing::admits(g.doc, {kKnows}, g.params.subsumption);
    for (const auto& r : degree(G, g.doc.taxonomy, g.params).results) {
      double want = 0;
      for (const Step& s : G.out_steps(r.node)) {
        if (g.params.direction != Direction::kIn && s.other != r.node &&
            ok(G.relation_label_id(s.relation)) &&
            !G.entity_label(s.other).is_literal()) {
          ++want;
        }
      }
      for (const Step& s : G.in_steps(r.node)) {
        if (g.params.direction != Direction::kOut && s.other != r.node &&
            ok(G.relation_label_id(s.relation))) {
          ++want;
        }
      }
      ASSERT_EQ(r.value, want);
    }
  }
}

TEST(MetricsProperty, ClosenessBounds) {
  std::mt19937_64 rng(10);
  for (int round = 0; round < 200; ++round) {
    Graph g = random_graph(rng, 8);
    const ERGraph& G = g.doc.graph;
    auto r = closeness<Rational>(G, g.doc.taxonomy, g.params);
    for (const auto& c : r.results) {
      ASSERT_GT(c.reachable, 0u);
      ASSERT_GT(c.value, 0);
      ASSERT_LE(c.value, 1);
      ASSERT_GE(c.value * c.reachable, Rational(1, c.reachable));
      PathMode m;
      m.direction = g.params.direction;
      auto dist = shortest_distance(G, g.doc.taxonomy, c.node, g.params.pattern(), m);
      bool all_adjacent = std::all_of(dist.begin(), dist.end(),
                                      [](const auto& kv) { return kv.second == 1; });
      ASSERT_EQ(c.value * c.reachable == 1, all_adjacent);
    }
  }
}

TEST(MetricsProperty, SubsumptionNeverLowersDegree) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    Graph g = random_graph(rng, 7);
    g.params.subsumption = false;
    auto off = values(degree(g.doc.graph, g.doc.taxonomy, g.params));
    g.params.subsumption = true;
    auto on = values(degree(g.doc.graph, g.doc.taxonomy, g.params));
    for (const auto& [e, v] : off) ASSERT_GE(on.at(e), v);
  }
}

TEST(MetricsProperty, PairsSumToTotals) {
  std::mt19937_64 rng(12);
  MetricOptions o;
  o.pairs = true;
  for (int round = 0; round < 200; ++round) {
    Graph g = random_graph(rng, 7);
    auto r = betweenness<Rational>(g.doc.graph, g.doc.taxonomy, g.params, o);
    std::map<EntityId, Rational> sum;
    for (const auto& p : r.pairs) {
      ASSERT_GT(p.value, 0);
      ASSERT_LE(p.value, 1);
      ASSERT_EQ(p.value, pair_betweenness<Rational>(g.doc.graph, g.doc.taxonomy,
                                                    p.broker, p.from, p.to,
                                                    g.params));
      sum[p.broker] += p.value;
    }
    for (const auto& c : r.results) {
      ASSERT_EQ(c.value, sum.count(c.node) ? sum[c.node] : Rational(0));
    }
    auto oracle_pairs = oracle::betweenness(g.doc.graph, g.doc.taxonomy, g.params, true);
    ASSERT_EQ(r.pairs, oracle_pairs.pairs);
  }
}

TEST(MetricsProperty, ThreadCountDoesNotChangeResults) {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 60; ++round) {
    Graph g = random_graph(rng, 12);
    MetricOptions one, many;
    many.threads = 4;
    many.pairs = one.pairs = true;
    if (testing::below(rng, 2)) g.params.budget = static_cast<std::int64_t>(1 + testing::below(rng, 60));
    auto a = betweenness<Rational>(g.doc.graph, g.doc.taxonomy, g.params, one);
    auto b = betweenness<Rational>(g.doc.graph, g.doc.taxonomy, g.params, many);
    ASSERT_EQ(values(a), values(b));
    ASSERT_EQ(a.pairs, b.pairs);
    ASSERT_EQ(a.truncated, b.truncated);
    ASSERT_EQ(a.steps, b.steps);
    ASSERT_EQ(values(closeness<Rational>(g.doc.graph, g.doc.taxonomy, g.params, one)),
              values(closeness<Rational>(g.doc.graph, g.doc.taxonomy, g.params, many)));
    ASSERT_EQ(values(degree<Rational>(g.doc.graph, g.doc.taxonomy, g.params, one)),
              values(degree<Rational>(g.doc.graph, g.doc.taxonomy, g.params, many)));
  }
}

}  // namespace
}  // namespace semsna
