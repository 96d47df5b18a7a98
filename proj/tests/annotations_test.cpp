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

#include <random>

#include "semsna/annotations.hpp"
#include "semsna/decimal.hpp"
#include "semsna/metrics.hpp"
#include "semsna/oracle.hpp"
#include "semsna/rdf_io.hpp"
#include "semsna/turtle.hpp"
#include "test_support.hpp"

namespace semsna {
namespace {

using testing::kKnows;
using testing::node;

std::size_t count_with(const ERGraph& g, std::string_view local) {
  auto l = g.find_label(voc::term(local));
  if (!l) return 0;
  std::size_t n = 0;
  for (std::uint32_t i = 0; i < g.relation_count(); ++i) {
    n += g.relation_label_id(RelationId(i)) == *l;
  }
  return n;
}

RdfDocument chain3() { return testing::load(testing::edges({{"a", "b"}, {"b", "c"}})); }

TEST(Decimal, Formatting) {
  EXPECT_EQ(format_decimal(0.0), "0.0");
  EXPECT_EQ(format_decimal(1.0), "1.0");
  EXPECT_EQ(format_decimal(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_decimal(2.0 / 3.0), "0.666666666667");
  EXPECT_EQ(format_decimal(123456789012345.0), "123456789012000.0");
  EXPECT_EQ(format_decimal(1e-7), "0.0000001");
  EXPECT_EQ(format_decimal(-0.25), "-0.25");
  EXPECT_EQ(format_decimal(oracle::Rational(7, 2)), "3.5");
  EXPECT_THROW(format_decimal(std::numeric_limits<double>::infinity()),
               ContractViolation);
}

TEST(Annotate, DegreeResultGivesFiveTriples) {
  auto d = chain3();
  MetricParams p;
  p.direction = Direction::kEither;
  p.max_length = 1;
  auto r = degree(d.graph, d.taxonomy, p);
  std::vector<CentralityResult<double>> one;
  for (const auto& x : r.results) {
    if (x.node == node(d, "b")) one.push_back(x);
  }
  ERGraph a = annotate(d.graph, one);
  EXPECT_EQ(a.relation_count(), 5u);
  std::string nt = serialize_ntriples(a);
  EXPECT_NE(nt.find("\"2.0\"^^<http://www.w3.org/2001/XMLSchema#decimal>"),
            std::string::npos);
  EXPECT_NE(nt.find("#Degree>"), std::string::npos);
  EXPECT_NE(nt.find("\"1\"^^<http://www.w3.org/2001/XMLSchema#integer>"),
            std::string::npos);
}

TEST(Annotate, EmptyListGivesEmptyGraph) {
  ERGraph g;
  EXPECT_EQ(annotate(g, std::vector<CentralityResult<double>>{}).relation_count(), 0u);
  EXPECT_EQ(annotate_pair_betweenness(g, std::vector<PairBetweenness<double>>{},
                                      MetricParams{})
                .relation_count(),
            0u);
}

TEST(Annotate, ClosenessHasNoDistance) {
  auto d = chain3();
  auto r = closeness(d.graph, d.taxonomy, MetricParams{});
  ERGraph a = annotate(d.graph, r);
  EXPECT_EQ(a.relation_count(), 4 * r.results.size());
  EXPECT_EQ(count_with(a, voc::kHasDistance), 0u);
}

TEST(Annotate, MixedParamsRejected) {
  auto d = chain3();
  auto r1 = betweenness(d.graph, d.taxonomy, MetricParams{});
  MetricParams other;
  other.subsumption = false;
  auto r2 = betweenness(d.graph, d.taxonomy, other);
  auto mixed = r1.results;
  mixed.push_back(r2.results.front());
  EXPECT_THROW(annotate(d.graph, mixed), InputError);
}

TEST(Annotate, DefinedForUsesTheAtomOrTheExpression) {
  EXPECT_EQ(defined_for(default_type()), Label::iri(kKnows));
  EXPECT_EQ(defined_for(PathExpr::make_atom(kKnows)), Label::iri(kKnows));
  auto seq = PathExpr::seq({PathExpr::make_atom(kKnows), PathExpr::make_atom(kKnows)});
  EXPECT_TRUE(defined_for(seq).is_literal());
}

TEST(AnnotatePairs, ChainRecord) {
  auto d = chain3();
  MetricOptions o;
  o.pairs = true;
  auto r = betweenness(d.graph, d.taxonomy, MetricParams{}, o);
  ASSERT_EQ(r.pairs.size(), 1u);
  ERGraph a = annotate_pair_betweenness(d.graph, r.pairs, r.params);
  EXPECT_EQ(a.relation_count(), 6u);
  auto from = a.find_label(voc::term(voc::kFrom));
  auto between = a.find_label(voc::term(voc::kHasBetween));
  for (std::uint32_t i = 0; i < a.relation_count(); ++i) {
    RelationId rel(i);
    const Label& object = a.entity_label(a.args(rel)[1]);
    if (a.relation_label_id(rel) == *from) {
      EXPECT_EQ(object, testing::ex("a"));
    } else if (a.relation_label_id(rel) == *between) {
      EXPECT_EQ(object, testing::ex("b"));
    }
  }
  std::string nt = serialize_ntriples(a);
  EXPECT_NE(nt.find("\"1.0\"^^"), std::string::npos);
  EXPECT_EQ(serialize_ntriples(parse_ntriples(nt).graph), nt);
}

TEST(AnnotateGeodesics, PathNodes) {
  auto d = testing::load(testing::edges({{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}}));
  PathMode m;
  m.shortest = ShortestMode::kAll;
  auto ps = find_paths(d.graph, d.taxonomy, node(d, "a"), node(d, "d"),
                       MetricParams{}.pattern(), m);
  ERGraph a = annotate_geodesics(d.graph, ps.paths, MetricParams{});
  EXPECT_EQ(count_with(a, voc::kHasBetween), 2u);
  EXPECT_EQ(count_with(a, voc::kHasLength), 2u);
  EXPECT_EQ(a.relation_count(), 2u * 7u);
}

TEST(ReadAnnotations, NoVocabularyGivesNothing) {
  auto d = chain3();
  auto r = read_annotations(d.graph);
  EXPECT_TRUE(r.annotations.empty());
  EXPECT_TRUE(r.warnings.empty());
}

TEST(ReadAnnotations, MissingValueAndUnknownClassWarn) {
  const std::string ns(kSemSnaNamespace);
  auto d = parse_ntriples(
      "<http://e/a> <" + ns + "hasSNAIndice> _:x .\n"
      "_:x <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <" + ns + "Degree> .\n"
      "_:x <" + ns + "isDefinedForProperty> <http://xmlns.com/foaf/0.1/knows> .\n"
      "_:x <" + ns + "hasDistance> \"1\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n"
      "<http://e/a> <" + ns + "hasSNAIndice> _:y .\n"
      "_:y <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <" + ns + "Mystery> .\n"
      "_:y <" + ns + "hasValue> \"1.0\" .\n"
      "<http://e/a> <" + ns + "hasSNAIndice> _:z .\n"
      "_:z <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <" + ns + "InDegree> .\n"
      "_:z <" + ns + "hasValue> \"1.0\" .\n"
      "_:z <" + ns + "isDefinedForProperty> <http://xmlns.com/foaf/0.1/knows> .\n"
      "_:z <" + ns + "hasDistance> \"two\" .\n");
  auto r = read_annotations(d.graph);
  EXPECT_TRUE(r.annotations.empty());
  EXPECT_EQ(r.warnings.size(), 3u);
}

TEST(Schema, SubPropertyLinksSurviveReload) {
  std::string nt = serialize_ntriples(schema_graph());
  auto d = parse_ntriples(nt);
  EXPECT_TRUE(d.taxonomy.subsumes(voc::term(voc::kHasSNAConcept),
                                  voc::term(voc::kHasSNAIndice),
                                  TermKind::kProperty));
  EXPECT_TRUE(d.taxonomy.subsumes(voc::term(voc::kPathExtremity),
                                  voc::term(voc::kFrom), TermKind::kProperty));
  EXPECT_TRUE(d.taxonomy.subsumes(voc::term(voc::kSNAConcept),
                                  voc::term(voc::kDegree), TermKind::kClass));
  EXPECT_TRUE(d.taxonomy.subsumes(voc::term(voc::kPath),
                                  voc::term(voc::kGeodesicPath), TermKind::kClass));
}

std::vector<SemSnaAnnotation> expected(const ERGraph& g,
                                       const MetricReport<double>& r) {
  std::vector<SemSnaAnnotation> out;
  for (const auto& c : r.results) {
    SemSnaAnnotation a;
    a.subject = g.entity_label(c.node);
    a.kind = c.kind;
    a.value = format_decimal(c.value);
    a.defined_for = defined_for(c.params.type);
    if (degree_family(c.kind)) a.distance = c.params.max_length.value_or(1);
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tuple(x.subject.canonical(), x.kind, x.defined_for.canonical(),
                      x.distance) < std::tuple(y.subject.canonical(), y.kind,
                                               y.defined_for.canonical(),
                                               y.distance);
  });
  return out;
}

MetricReport<double> random_report(std::mt19937_64& rng, const RdfDocument& d) {
  MetricParams p;
  p.direction = static_cast<Direction>(testing::below(rng, 3));
  if (testing::below(rng, 2)) {
    p.max_length = static_cast<std::int64_t>(1 + testing::below(rng, 3));
  }
  if (testing::below(rng, 3) == 0) {
    p.type = PathExpr::seq({PathExpr::make_atom(kKnows),
                            PathExpr::star(PathExpr::make_atom(kKnows))});
  }
  switch (testing::below(rng, 3)) {
    case 0: return degree(d.graph, d.taxonomy, p);
    case 1: return closeness(d.graph, d.taxonomy, p);
    default: return betweenness(d.graph, d.taxonomy, p);
  }
}

TEST(AnnotationProperty, RoundTripThroughBothSyntaxes) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 200; ++round) {
    auto d = testing::load(testing::random_triples(
        rng, 1 + testing::below(rng, 8), 0.3, {kKnows}));
    auto r = random_report(rng, d);
    ERGraph a = annotate(d.graph, r);
    auto want = expected(d.graph, r);
    auto nt = parse_ntriples(serialize_ntriples(a));
    auto got = read_annotations(nt.graph);
    ASSERT_TRUE(got.warnings.empty());
    ASSERT_EQ(got.annotations, want) << "round " << round;
    auto ttl = parse_turtle(serialize_turtle(a, PrefixMap::defaults()));
    ASSERT_EQ(read_annotations(ttl.graph).annotations, want);
  }
}

TEST(AnnotationProperty, MergeIsIdempotent) {
  std::mt19937_64 rng(32);
  for (int round = 0; round < 100; ++round) {
    auto d = testing::load(testing::random_triples(
        rng, 1 + testing::below(rng, 8), 0.3, {kKnows}));
    auto r = random_report(rng, d);
    ERGraph once = merge_graphs(d.graph, annotate(d.graph, r)).graph;
    ERGraph twice = merge_graphs(once, annotate(d.graph, r)).graph;
    ASSERT_EQ(once.relation_count(), twice.relation_count());
    ASSERT_EQ(serialize_ntriples(once), serialize_ntriples(twice));
    // Blank-node labels are a function of the result key.
    ASSERT_EQ(serialize_ntriples(annotate(d.graph, r)),
              serialize_ntriples(annotate(d.graph, r)));
  }
}

}  // namespace
}  // namespace semsna
