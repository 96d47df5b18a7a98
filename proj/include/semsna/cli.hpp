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
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "semsna/annotations.hpp"
#include "semsna/error.hpp"
#include "semsna/generator.hpp"
#include "semsna/metrics.hpp"
#include "semsna/oracle.hpp"
#include "semsna/path_pattern.hpp"
#include "semsna/prefix_map.hpp"
#include "semsna/rdf_io.hpp"
#include "semsna/report.hpp"
#include "semsna/turtle.hpp"

namespace semsna {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr const char* kPrefixEnv = "SEMSNA_PREFIXES";

enum class Command : std::uint8_t {
  kDegree,
  kCloseness,
  kBetweenness,
  kAnnotate,
  kReport,
  kGenerate,
  kOracle,
};

enum class OutputFormat : std::uint8_t { kTsv, kJson, kNTriples, kTurtle };

struct RunConfig {
  Command command = Command::kDegree;
  std::vector<std::string> inputs;
  /// Metric behind annotate, report and oracle.
  MetricKind metric = MetricKind::kBetweenness;
  std::string type = "star(foaf:knows)";
  Direction direction = Direction::kOut;
  bool subsumption = true;
  std::optional<std::int64_t> max_length;
  std::optional<std::int64_t> budget;
  /// Defaults to N-Triples for annotate and generate, TSV otherwise.
  std::optional<OutputFormat> format;
  std::optional<std::size_t> top;
  std::vector<std::string> prefixes;
  /// Prefix file; defaults to $SEMSNA_PREFIXES.
  std::optional<std::string> prefix_file;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> nodes;
  std::optional<std::uint64_t> edges_per_node;
  bool pairs = false;
  bool exact = false;
  bool strict = false;
};

namespace detail {

using Rational = boost::multiprecision::cpp_rational;

inline PrefixMap cli_prefixes(const RunConfig& c) {
  PrefixMap m = PrefixMap::defaults();
  std::optional<std::string> file = c.prefix_file;
  if (!file) {
    if (const char* env = std::getenv(kPrefixEnv); env && *env) file = env;
  }
  if (file) {
    std::ifstream in(*file);
    if (!in) throw InputError("cannot read prefix file " + *file);
    m.load(in);
  }
  for (const auto& b : c.prefixes) m.set_from_binding(b);
  return m;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline bool is_turtle(const std::string& path) {
  return path.ends_with(".ttl") || path.ends_with(".turtle");
}

/// Best-effort diagnostics go to `err` as `path:line:col: severity: text`.
inline RdfDocument load_inputs(const RunConfig& c, const PrefixMap& prefixes,
                               std::ostream& err) {
  RdfLoader loader(ParseOptions{c.strict});
  for (const auto& path : c.inputs) {
    std::string text = read_file(path);
    const std::size_t before = loader.diagnostics().size();
    try {
      if (is_turtle(path)) {
        load_turtle(loader, text, prefixes);
      } else {
        load_ntriples(loader, text);
      }
    } catch (const ParseError& e) {
      throw InputError(path + ":" + e.what());
    }
    const auto& diags = loader.diagnostics();
    for (std::size_t i = before; i < diags.size(); ++i) {
      err << path << ':' << diags[i].line << ':' << diags[i].column << ": "
          << (diags[i].severity == Severity::kError ? "error" : "warning")
          << ": " << diags[i].message << '\n';
    }
  }
  RdfDocument doc = std::move(loader).finish();
  doc.graph.freeze();
  return doc;
}

inline MetricKind command_metric(const RunConfig& c) {
  switch (c.command) {
    case Command::kDegree: return degree_kind(c.direction);
    case Command::kCloseness: return MetricKind::kCloseness;
    case Command::kBetweenness: return MetricKind::kBetweenness;
    default:
      return c.metric == MetricKind::kDegree ||
                     c.metric == MetricKind::kInDegree ||
                     c.metric == MetricKind::kOutDegree
                 ? degree_kind(c.direction)
                 : c.metric;
  }
}

template <class Number>
MetricReport<Number> compute(const RdfDocument& doc, MetricKind kind,
                             const MetricParams& params,
                             const MetricOptions& options) {
  switch (kind) {
    case MetricKind::kCloseness:
      return closeness<Number>(doc.graph, doc.taxonomy, params, options);
    case MetricKind::kBetweenness:
      return betweenness<Number>(doc.graph, doc.taxonomy, params, options);
    default:
      return degree<Number>(doc.graph, doc.taxonomy, params, options);
  }
}

inline MetricReport<Rational> compute_oracle(const RdfDocument& doc,
                                             MetricKind kind,
                                             const MetricParams& params,
                                             bool pairs) {
  switch (kind) {
    case MetricKind::kCloseness:
      return oracle::closeness(doc.graph, doc.taxonomy, params);
    case MetricKind::kBetweenness:
      return oracle::betweenness(doc.graph, doc.taxonomy, params, pairs);
    default:
      return oracle::degree(doc.graph, doc.taxonomy, params);
  }
}

inline void write_graph(std::ostream& out, const ERGraph& g,
                        OutputFormat format, const PrefixMap& prefixes) {
  if (format == OutputFormat::kTurtle) {
    out << serialize_turtle(g, prefixes);
  } else if (format == OutputFormat::kNTriples) {
    out << serialize_ntriples(g);
  } else {
    throw InputError("graph output needs --format ntriples or turtle");
  }
}

template <class Number>
int emit(const RunConfig& c, const RdfDocument& doc,
         const MetricReport<Number>& report, const PrefixMap& prefixes,
         std::ostream& out, std::ostream& err) {
  if (report.truncated) {
    err << "warning: budget exhausted after " << report.steps
        << " steps; results are partial\n";
  }
  const bool ranking = c.command == Command::kReport;
  if (c.command == Command::kAnnotate) {
    ERGraph notes = annotate(doc.graph, report);
    RdfDocument merged = merge_graphs(doc.graph, schema_graph());
    merged = merge_graphs(merged.graph, notes);
    if (c.pairs) {
      merged = merge_graphs(
          merged.graph,
          annotate_pair_betweenness(doc.graph, report.pairs, report.params));
    }
    write_graph(out, merged.graph, c.format.value_or(OutputFormat::kNTriples),
                prefixes);
    return 0;
  }
  const OutputFormat format = c.format.value_or(OutputFormat::kTsv);
  if (format == OutputFormat::kNTriples || format == OutputFormat::kTurtle) {
    if (ranking) throw InputError("report writes tsv or json");
    write_graph(out, annotate(doc.graph, report), format, prefixes);
    return 0;
  }
  RankedReport ranked = rank(doc.graph, report, c.top, ranking);
  if (ranking) {
    std::vector<double> values;
    for (const auto& r : report.results) {
      values.push_back(parse_double(format_decimal(r.value)));
    }
    add_histogram(ranked, values);
  }
  if (format == OutputFormat::kJson) {
    out << to_json(ranked).dump(2) << '\n';
  } else {
    write_tsv(out, ranked, c.budget.has_value(), ranking);
  }
  return 0;
}

inline int run_unchecked(const RunConfig& c, std::ostream& out,
                         std::ostream& err) {
  const PrefixMap prefixes = cli_prefixes(c);
  if (c.command == Command::kGenerate) {
    if (!c.seed || !c.nodes || !c.edges_per_node) {
      throw InputError("generate needs --seed, --nodes and --edges-per-node");
    }
    ERGraph g = generate_graph(*c.seed, *c.nodes, *c.edges_per_node);
    write_graph(out, g, c.format.value_or(OutputFormat::kNTriples), prefixes);
    return 0;
  }
  if (c.inputs.empty()) throw InputError("no input files");
  if (c.threads == 0) throw InputError("--threads must be positive");
  if (c.top && *c.top == 0) throw InputError("--top must be positive");

  MetricParams params;
  params.type = parse_path_pattern(c.type, prefixes).expr;
  params.direction = c.direction;
  params.subsumption = c.subsumption;
  params.max_length = c.max_length;
  params.budget = c.budget;
  length_bound(params.max_length);
  MatchBudget::from_option(params.budget);

  const RdfDocument doc = load_inputs(c, prefixes, err);
  const MetricKind kind = command_metric(c);
  if (kind != MetricKind::kBetweenness && c.pairs) {
    throw InputError("--pairs applies to betweenness only");
  }
  MetricOptions options{c.threads, c.pairs};
  if (c.command == Command::kOracle) {
    return emit(c, doc, compute_oracle(doc, kind, params, c.pairs), prefixes,
                out, err);
  }
  if (c.exact) {
    return emit(c, doc, compute<Rational>(doc, kind, params, options),
                prefixes, out, err);
  }
  return emit(c, doc, compute<double>(doc, kind, params, options), prefixes,
              out, err);
}

}  // namespace detail

/// Exit status: 0 success, 1 bad input (diagnostics on `err`), 2 internal
/// invariant failure.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return detail::run_unchecked(config, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace semsna
