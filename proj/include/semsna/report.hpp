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
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semsna/decimal.hpp"
#include "semsna/graph.hpp"
#include "semsna/metrics.hpp"
#include "semsna/path_pattern.hpp"
#include "semsna/prefix_map.hpp"

namespace semsna {

inline std::string_view metric_name(MetricKind k) {
  switch (k) {
    case MetricKind::kDegree: return "degree";
    case MetricKind::kInDegree: return "in-degree";
    case MetricKind::kOutDegree: return "out-degree";
    case MetricKind::kCloseness: return "closeness";
    case MetricKind::kBetweenness: return "betweenness";
  }
  return "";
}

inline std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::kOut: return "out";
    case Direction::kIn: return "in";
    case Direction::kEither: return "either";
  }
  return "";
}

/// IRIs bare, other labels in N-Triples form.
inline std::string node_name(const ERGraph& g, EntityId e) {
  const Label& l = g.entity_label(e);
  return l.is_iri() ? l.value() : l.canonical();
}

struct RankedRow {
  std::size_t rank = 0;
  std::string node;
  /// Rounded decimal text and its value; ranking uses the rounded value so
  /// that equal quantities computed along different routes tie.
  std::string text;
  double value = 0;
  std::size_t reachable = 0;
};

struct HistogramBin {
  double low = 0;
  double high = 0;
  std::size_t count = 0;
};

struct RankedReport {
  MetricKind kind = MetricKind::kDegree;
  MetricParams params;
  bool truncated = false;
  std::uint64_t steps = 0;
  std::vector<RankedRow> rows;
  std::vector<HistogramBin> histogram;
};

inline double parse_double(const std::string& text) {
  double v = 0;
  std::from_chars(text.data(), text.data() + text.size(), v);
  return v;
}

/// Rows sorted by value descending, ties by node name; competition ranks
/// (1, 2, 2, 4). `top` truncates after ranking.
template <class Number>
RankedReport rank(const ERGraph& g, const MetricReport<Number>& report,
                  std::optional<std::size_t> top = std::nullopt,
                  bool positive_only = false) {
  RankedReport out;
  out.kind = report.kind;
  out.params = report.params;
  out.truncated = report.truncated;
  out.steps = report.steps;
  for (const auto& r : report.results) {
    RankedRow row;
    row.node = node_name(g, r.node);
    row.text = format_decimal(r.value);
    row.value = parse_double(row.text);
    row.reachable = r.reachable;
    if (positive_only && !(row.value > 0)) continue;
    out.rows.push_back(std::move(row));
  }
  std::sort(out.rows.begin(), out.rows.end(),
            [](const RankedRow& a, const RankedRow& b) {
              if (a.value != b.value) return a.value > b.value;
              return a.node < b.node;
            });
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    out.rows[i].rank = i > 0 && out.rows[i].value == out.rows[i - 1].value
                           ? out.rows[i - 1].rank
                           : i + 1;
  }
  if (top && out.rows.size() > *top) out.rows.resize(*top);
  return out;
}

/// Base-2 logarithmic bins [2^k, 2^(k+1)) over the positive values.
inline std::vector<HistogramBin> log2_histogram(
    const std::vector<double>& values) {
  std::map<int, std::size_t> bins;
  for (double v : values) {
    if (!(v > 0)) continue;
    int e = 0;
    std::frexp(v, &e);  // v = m * 2^e, m in [0.5, 1)
    ++bins[e - 1];
  }
  std::vector<HistogramBin> out;
  for (auto [k, count] : bins) {
    out.push_back({std::ldexp(1.0, k), std::ldexp(1.0, k + 1), count});
  }
  return out;
}

inline void add_histogram(RankedReport& r, const std::vector<double>& values) {
  r.histogram = log2_histogram(values);
}

/// With `show_budget` a leading comment states whether the budget cut the
/// run short.
inline void write_tsv(std::ostream& out, const RankedReport& r,
                      bool show_budget, bool with_rank) {
  if (show_budget) {
    out << "# truncated=" << (r.truncated ? "true" : "false")
        << " steps=" << r.steps << '\n';
  }
  const bool closeness = r.kind == MetricKind::kCloseness;
  if (with_rank) out << "rank\t";
  out << "node\tvalue" << (closeness ? "\treachable" : "") << '\n';
  for (const auto& row : r.rows) {
    if (with_rank) out << row.rank << '\t';
    out << row.node << '\t' << row.text;
    if (closeness) out << '\t' << row.reachable;
    out << '\n';
  }
  if (!r.histogram.empty()) {
    out << "\nbin_low\tbin_high\tcount\n";
    for (const auto& b : r.histogram) {
      out << format_decimal(b.low) << '\t' << format_decimal(b.high) << '\t'
          << b.count << '\n';
    }
  }
}

inline nlohmann::ordered_json to_json(const RankedReport& r) {
  using nlohmann::ordered_json;
  ordered_json params;
  params["type"] = to_string(r.params.type, nullptr);
  params["direction"] = direction_name(r.params.direction);
  params["subsumption"] = r.params.subsumption;
  params["max_length"] =
      r.params.max_length ? ordered_json(*r.params.max_length) : ordered_json();
  params["budget"] =
      r.params.budget ? ordered_json(*r.params.budget) : ordered_json();
  ordered_json j;
  j["metric"] = metric_name(r.kind);
  j["params"] = params;
  j["truncated"] = r.truncated;
  j["steps"] = r.steps;
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json o;
    o["rank"] = row.rank;
    o["node"] = row.node;
    o["value"] = row.value;
    if (r.kind == MetricKind::kCloseness) o["reachable"] = row.reachable;
    rows.push_back(std::move(o));
  }
  j["results"] = std::move(rows);
  ordered_json bins = ordered_json::array();
  for (const auto& b : r.histogram) {
    bins.push_back({{"low", b.low}, {"high", b.high}, {"count", b.count}});
  }
  j["histogram"] = std::move(bins);
  return j;
}

}  // namespace semsna
