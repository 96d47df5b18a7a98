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
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "semsna/cli.hpp"

namespace {

using semsna::Command;
using semsna::Direction;
using semsna::MetricKind;
using semsna::OutputFormat;
using semsna::RunConfig;

const std::map<std::string, Direction> kDirections{
    {"out", Direction::kOut},
    {"in", Direction::kIn},
    {"either", Direction::kEither},
};

const std::map<std::string, OutputFormat> kFormats{
    {"tsv", OutputFormat::kTsv},
    {"json", OutputFormat::kJson},
    {"ntriples", OutputFormat::kNTriples},
    {"turtle", OutputFormat::kTurtle},
};

const std::map<std::string, MetricKind> kMetrics{
    {"degree", MetricKind::kDegree},
    {"closeness", MetricKind::kCloseness},
    {"betweenness", MetricKind::kBetweenness},
};

void add_output(CLI::App* sub, RunConfig& c) {
  sub->add_option("--format", c.format, "tsv, json, ntriples or turtle")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case).description(""))
      ->option_text("FORMAT");
  sub->add_option("--prefix", c.prefixes, "name=iri binding (repeatable)");
  sub->add_option("--prefix-file", c.prefix_file,
                  "prefix bindings, one per line (default $SEMSNA_PREFIXES)");
}

void add_metric(CLI::App* sub, RunConfig& c, bool inputs = true) {
  sub->add_option("--type", c.type,
                  "path pattern, e.g. foaf:knows or star(foaf:knows)");
  sub->add_option("--max-length", c.max_length, "degree path length bound");
  sub->add_option("--direction", c.direction, "out, in or either")
      ->transform(CLI::CheckedTransformer(kDirections, CLI::ignore_case).description(""))
      ->option_text("DIR");
  sub->add_flag("--no-subsumption{false}", c.subsumption,
                "match property atoms exactly");
  sub->add_option("--budget", c.budget, "matching step budget");
  sub->add_option("--top", c.top, "keep the K highest rows");
  sub->add_option("--threads", c.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--exact", c.exact, "rational arithmetic");
  sub->add_flag("--strict", c.strict, "abort on the first malformed statement");
  add_output(sub, c);
  if (inputs) sub->add_option("inputs", c.inputs, "N-Triples or Turtle files")->required();
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Parameterized centralities over typed RDF social graphs"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "print the version to stderr");

  auto* degree = app.add_subcommand("degree", "n-degree per node");
  add_metric(degree, c);
  auto* closeness = app.add_subcommand("closeness", "closeness per node");
  add_metric(closeness, c);
  auto* betweenness =
      app.add_subcommand("betweenness", "betweenness per node");
  add_metric(betweenness, c);
  betweenness->add_flag("--pairs", c.pairs, "also compute pair records");

  auto* annotate = app.add_subcommand(
      "annotate", "write the input graph with SemSNA annotations");
  add_metric(annotate, c);
  annotate->add_option("--metric", c.metric, "degree, closeness or betweenness")
      ->transform(CLI::CheckedTransformer(kMetrics, CLI::ignore_case).description(""))
      ->option_text("METRIC");
  annotate->add_flag("--pairs", c.pairs,
                     "add per-pair Betweenness nodes (betweenness only)");

  auto* report = app.add_subcommand(
      "report", "ranking of positive values with a log2 histogram");
  add_metric(report, c);
  report->add_option("--metric", c.metric, "degree, closeness or betweenness")
      ->transform(CLI::CheckedTransformer(kMetrics, CLI::ignore_case).description(""))
      ->option_text("METRIC");

  auto* oracle = app.add_subcommand(
      "oracle", "reference computation by exhaustive enumeration");
  oracle->add_option("metric", c.metric, "degree, closeness or betweenness")
      ->required()
      ->transform(CLI::CheckedTransformer(kMetrics, CLI::ignore_case).description(""))
      ->option_text("METRIC");
  add_metric(oracle, c);

  auto* generate =
      app.add_subcommand("generate", "seeded preferential-attachment graph");
  generate->add_option("--seed", c.seed)->required();
  generate->add_option("--nodes", c.nodes)->required();
  generate->add_option("--edges-per-node", c.edges_per_node)->required();
  add_output(generate, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, std::cout, std::cerr);
    return code == 0 ? 0 : 1;
  }
  if (version) std::cerr << "semsna " << semsna::kVersion << '\n';
  if (app.get_subcommands().empty()) {
    if (version) return 0;
    std::cerr << app.help();
    return 1;
  }

  const std::pair<CLI::App*, Command> commands[] = {
      {degree, Command::kDegree},       {closeness, Command::kCloseness},
      {betweenness, Command::kBetweenness}, {annotate, Command::kAnnotate},
      {report, Command::kReport},       {oracle, Command::kOracle},
      {generate, Command::kGenerate},
  };
  for (auto [sub, cmd] : commands) {
    if (sub->parsed()) c.command = cmd;
  }
  return semsna::run(c, std::cout, std::cerr);
}
