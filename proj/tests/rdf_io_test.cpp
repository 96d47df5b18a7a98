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

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "semsna/rdf_io.hpp"
#include "semsna/turtle.hpp"
#include "test_support.hpp"

namespace semsna {
namespace {

namespace fs = std::filesystem;

const Label kKnows = Label::iri(std::string(vocab::kFoafKnows));

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

RdfDocument parse_file(const fs::path& p, ParseOptions o = {}) {
  std::string text = slurp(p);
  return p.extension() == ".ttl" ? parse_turtle(text, o)
                                 : parse_ntriples(text, o);
}

std::size_t expected_error_line(const std::string& text) {
  const std::string tag = "# expect-error-line: ";
  EXPECT_EQ(text.rfind(tag, 0), 0u);
  return std::stoul(text.substr(tag.size()));
}

std::vector<fs::path> corpus(const char* dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(fs::path(SEMSNA_TEST_DATA) / dir)) {
    out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(NTriples, MinimalTriple) {
  auto d = parse_ntriples("<a> <knows> <b> .\n");
  EXPECT_TRUE(d.diagnostics.empty());
  ASSERT_EQ(d.graph.relation_count(), 1u);
  EXPECT_EQ(d.graph.relation_label(RelationId(0)), Label::iri("knows"));
}

TEST(NTriples, DuplicateLineCollapses) {
  auto d = parse_ntriples("<a> <knows> <b> .\n<a> <knows> <b> .\n");
  EXPECT_EQ(d.graph.relation_count(), 1u);
  EXPECT_EQ(d.duplicates, 1u);
}

TEST(NTriples, SubPropertyFeedsTaxonomy) {
  auto d = parse_ntriples(
      "<bf> <http://www.w3.org/2000/01/rdf-schema#subPropertyOf> <knows> .\n");
  EXPECT_TRUE(d.taxonomy.subsumes(Label::iri("knows"), Label::iri("bf"),
                                  TermKind::kProperty));
}

TEST(NTriples, BestEffortSkipsBadLines) {
  auto d = parse_ntriples("<a> <k> <b> .\n<a> <k> .\n<b> <k> <c> .\n");
  EXPECT_EQ(d.graph.relation_count(), 2u);
  ASSERT_EQ(d.error_count(), 1u);
  EXPECT_EQ(d.diagnostics[0].line, 2u);
  EXPECT_EQ(d.diagnostics[0].column, 9u);
}

TEST(NTriples, StrictAbortsOnFirstError) {
  try {
    parse_ntriples("<a> <k> <b> .\n\"x\" <k> <b> .\n<a> <k> .\n",
                   ParseOptions{.strict = true});
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 1u);
  }
}

TEST(NTriples, LiteralForms) {
  auto d = parse_ntriples(
      "<a> <p> \"x\\ty\"@EN .\n"
      "<a> <p> \"1\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n"
      "<a> <p> \"\\u00e9\" .\n");
  ASSERT_TRUE(d.diagnostics.empty());
  const ERGraph& g = d.graph;
  EXPECT_EQ(g.entity_label(g.args(RelationId(0))[1]),
            Label::literal("x\ty", "", "en"));
  EXPECT_EQ(g.entity_label(g.args(RelationId(1))[1]),
            Label::literal("1", std::string(vocab::kXsdInteger)));
  EXPECT_EQ(g.entity_label(g.args(RelationId(2))[1]),
            Label::literal("\xC3\xA9"));
}

TEST(NTriples, BlankNodesScopedPerDocument) {
  RdfLoader loader;
  load_ntriples(loader, "_:x <k> <a> .\n");
  load_ntriples(loader, "_:x <k> <a> .\n");
  auto d = std::move(loader).finish();
  EXPECT_EQ(d.graph.relation_count(), 2u);
  EXPECT_EQ(d.graph.entity_count(), 3u);
}

TEST(Turtle, PrefixExpansion) {
  auto d = parse_turtle(
      "@prefix foaf: <http://xmlns.com/foaf/0.1/> . <a> foaf:knows <b> .");
  ASSERT_TRUE(d.diagnostics.empty());
  ASSERT_EQ(d.graph.relation_count(), 1u);
  EXPECT_EQ(d.graph.relation_label(RelationId(0)), kKnows);
}

TEST(Turtle, ObjectList) {
  auto d = parse_turtle(
      "@prefix foaf: <http://xmlns.com/foaf/0.1/> .\n"
      "<a> foaf:knows <b>, <c> .");
  EXPECT_EQ(d.graph.relation_count(), 2u);
}

TEST(Turtle, AnonymousBlankNodeIsDiagnosed) {
  auto d = parse_turtle(
      "@prefix foaf: <http://xmlns.com/foaf/0.1/> .\n"
      "<a> foaf:knows [ foaf:name \"B\" ] .\n<a> foaf:knows <c> .\n");
  ASSERT_EQ(d.error_count(), 1u);
  EXPECT_EQ(d.diagnostics[0].line, 2u);
  EXPECT_EQ(d.graph.relation_count(), 1u);
}

TEST(Turtle, UnknownPrefixIsDiagnosed) {
  auto d = parse_turtle("<a> zz:p <b> .\n");
  ASSERT_EQ(d.error_count(), 1u);
  EXPECT_EQ(d.diagnostics[0].column, 5u);
  EXPECT_EQ(d.graph.relation_count(), 0u);
}

TEST(Turtle, UnterminatedStatementIsDiagnosed) {
  auto d = parse_turtle("<a> <p> <b>");
  EXPECT_EQ(d.error_count(), 1u);
  EXPECT_EQ(d.graph.relation_count(), 0u);
}

TEST(Turtle, KeywordAndNumbers) {
  auto d = parse_turtle("<a> a <T> ; <n> 3, 2.5, 1e2, true .");
  ASSERT_TRUE(d.diagnostics.empty());
  const ERGraph& g = d.graph;
  ASSERT_EQ(g.relation_count(), 5u);
  EXPECT_EQ(g.relation_label(RelationId(0)).value(), vocab::kRdfType);
  EXPECT_EQ(g.entity_label(g.args(RelationId(1))[1]),
            Label::literal("3", std::string(vocab::kXsdInteger)));
}

TEST(Serialize, EmptyGraphGivesEmptyOutput) {
  EXPECT_EQ(serialize_ntriples(ERGraph{}), "");
}

TEST(Serialize, OneRelationOneLine) {
  auto d = parse_ntriples("<a> <knows> <b> .");
  EXPECT_EQ(serialize_ntriples(d.graph), "<a> <knows> <b> .\n");
}

TEST(Serialize, NonBinaryRelationRejected) {
  ERGraph g;
  EntityId a = g.add_entity(Label::iri("a"));
  const EntityId args[] = {a, a, a};
  g.add_relation(Label::iri("p"), args);
  EXPECT_THROW(serialize_ntriples(g), SerializationError);
  EXPECT_THROW(serialize_turtle(g, PrefixMap::defaults()), SerializationError);
}

TEST(Serialize, TurtleUsesPrefixesAndReparses) {
  auto d = parse_ntriples(
      "<http://example.org/a> <http://xmlns.com/foaf/0.1/knows> "
      "<http://example.org/b> .\n"
      "<http://example.org/a> <http://xmlns.com/foaf/0.1/knows> "
      "<http://example.org/c> .\n");
  std::string ttl = serialize_turtle(d.graph, PrefixMap::defaults());
  EXPECT_NE(ttl.find("foaf:knows"), std::string::npos);
  auto back = parse_turtle(ttl);
  EXPECT_TRUE(back.diagnostics.empty());
  EXPECT_EQ(serialize_ntriples(back.graph), serialize_ntriples(d.graph));
}

TEST(Merge, UnionCollapsesDuplicates) {
  auto a = parse_ntriples("<a> <k> <b> .\n<b> <k> <c> .\n");
  auto b = parse_ntriples("<b> <k> <c> .\n<c> <k> <d> .\n");
  auto m = merge_graphs(a.graph, b.graph);
  EXPECT_EQ(m.graph.relation_count(), 3u);
}

// Random graphs over awkward labels: escapes, control characters, non-ASCII,
// language tags and datatypes.
Label random_term(std::mt19937_64& rng, bool literal_ok) {
  static const char* const kIris[] = {
      "http://example.org/a", "http://example.org/caf\xC3\xA9",
      "urn:x:1", "rel", "http://example.org/q?x=1#f"};
  static const char* const kValues[] = {"", "plain", "tab\there",
                                        "q\"uote", "back\\slash",
                                        "nl\nx", "\x01\x1f", "\xE2\x82\xAC"};
  switch (testing::below(rng, literal_ok ? 4 : 2)) {
    case 0: return Label::iri(kIris[testing::below(rng, 5)]);
    case 1: return Label::blank("b" + std::to_string(testing::below(rng, 3)));
    case 2: return Label::literal(kValues[testing::below(rng, 8)]);
    default:
      return testing::below(rng, 2)
                 ? Label::literal(kValues[testing::below(rng, 8)], "", "en-US")
                 : Label::literal("7", std::string(vocab::kXsdInteger));
  }
}

TEST(RdfIoProperty, ParseSerializeFixpoint) {
  std::mt19937_64 rng(2026);
  for (int round = 0; round < 300; ++round) {
    ERGraph g;
    const int m = static_cast<int>(testing::below(rng, 12));
    for (int i = 0; i < m; ++i) {
      g.add_triple(random_term(rng, false),
                   Label::iri(testing::below(rng, 2) ? "p" : "http://e.org/q"),
                   random_term(rng, true));
    }
    std::string once = serialize_ntriples(g);
    auto parsed = parse_ntriples(once);
    ASSERT_TRUE(parsed.diagnostics.empty()) << once;
    ASSERT_EQ(serialize_ntriples(parsed.graph), once);
    auto via_turtle = parse_turtle(serialize_turtle(g, PrefixMap::defaults()));
    ASSERT_TRUE(via_turtle.diagnostics.empty());
    ASSERT_EQ(serialize_ntriples(via_turtle.graph), once);
  }
}

TEST(RdfIoProperty, SelfConcatenationChangesNothing) {
  for (const auto& p : corpus("positive")) {
    std::string text = slurp(p);
    if (!text.empty() && text.back() != '\n') text += '\n';
    auto once = p.extension() == ".ttl" ? parse_turtle(text)
                                        : parse_ntriples(text);
    auto twice = p.extension() == ".ttl" ? parse_turtle(text + text)
                                         : parse_ntriples(text + text);
    EXPECT_EQ(serialize_ntriples(once.graph), serialize_ntriples(twice.graph))
        << p;
  }
}

// Every non-comment N-Triples line either lands in the graph, is a
// duplicate, or produces an error diagnostic.
TEST(RdfIoProperty, LineAccounting) {
  std::mt19937_64 rng(8);
  const char* const kLines[] = {"<a> <k> <b> .", "<a> <k> .", "\"x\" <k> <b> .",
                                "<b> <k> \"v\"@en .", "<c> <k> <a> .",
                                "<a> <k> <b> . junk", "_:z <k> <a> ."};
  for (int round = 0; round < 200; ++round) {
    std::string text;
    const std::size_t lines = testing::below(rng, 10);
    for (std::size_t i = 0; i < lines; ++i) {
      text += kLines[testing::below(rng, 7)];
      text += '\n';
    }
    auto d = parse_ntriples(text);
    ASSERT_EQ(d.accepted + d.duplicates + d.error_count(), lines) << text;
  }
}

TEST(Corpus, PositiveFilesReachCanonicalFixpoint) {
  auto files = corpus("positive");
  EXPECT_GE(files.size(), 40u);
  for (const auto& p : files) {
    auto d = parse_file(p);
    EXPECT_TRUE(d.diagnostics.empty()) << p;
    std::string canon = serialize_ntriples(d.graph);
    EXPECT_EQ(serialize_ntriples(parse_ntriples(canon).graph), canon) << p;
  }
}

TEST(Corpus, NegativeFilesReportTheExpectedLine) {
  auto files = corpus("negative");
  EXPECT_GE(files.size(), 20u);
  for (const auto& p : files) {
    std::size_t line = expected_error_line(slurp(p));
    auto d = parse_file(p);
    ASSERT_GE(d.error_count(), 1u) << p;
    EXPECT_EQ(d.diagnostics.front().line, line) << p;
    try {
      parse_file(p, ParseOptions{.strict = true});
      ADD_FAILURE() << p << ": strict mode did not throw";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << p;
    }
  }
}

}  // namespace
}  // namespace semsna
