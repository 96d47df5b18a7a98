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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "semsna/decimal.hpp"
#include "semsna/error.hpp"
#include "semsna/graph.hpp"
#include "semsna/label.hpp"
#include "semsna/metrics.hpp"
#include "semsna/path_engine.hpp"
#include "semsna/prefix_map.hpp"

namespace semsna {

/// SemSNA terms, as local names under kSemSnaNamespace.
namespace voc {
inline constexpr std::string_view kSNAConcept = "SNAConcept";
inline constexpr std::string_view kSNAIndice = "SNAIndice";
inline constexpr std::string_view kDegree = "Degree";
inline constexpr std::string_view kInDegree = "InDegree";
inline constexpr std::string_view kOutDegree = "OutDegree";
inline constexpr std::string_view kClosenessCentrality = "ClosenessCentrality";
inline constexpr std::string_view kBetweennessCentrality =
    "BetweennessCentrality";
inline constexpr std::string_view kBetweenness = "Betweenness";
inline constexpr std::string_view kPath = "Path";
inline constexpr std::string_view kDirectedPath = "DirectedPath";
inline constexpr std::string_view kGeodesicPath = "GeodesicPath";
inline constexpr std::string_view kCyclicPath = "CyclicPath";

inline constexpr std::string_view kHasSNAConcept = "hasSNAConcept";
inline constexpr std::string_view kHasSNAIndice = "hasSNAIndice";
inline constexpr std::string_view kHasValue = "hasValue";
inline constexpr std::string_view kIsDefinedForProperty =
    "isDefinedForProperty";
inline constexpr std::string_view kHasDistance = "hasDistance";
inline constexpr std::string_view kHasLength = "hasLength";
inline constexpr std::string_view kPathExtremity = "pathExtremity";
inline constexpr std::string_view kHasBetween = "hasBetween";
inline constexpr std::string_view kFrom = "from";
inline constexpr std::string_view kTo = "to";

inline std::string iri(std::string_view local) {
  return std::string(kSemSnaNamespace) + std::string(local);
}
inline Label term(std::string_view local) { return Label::iri(iri(local)); }
}  // namespace voc

inline std::string_view index_class(MetricKind kind) {
  switch (kind) {
    case MetricKind::kDegree: return voc::kDegree;
    case MetricKind::kInDegree: return voc::kInDegree;
    case MetricKind::kOutDegree: return voc::kOutDegree;
    case MetricKind::kCloseness: return voc::kClosenessCentrality;
    case MetricKind::kBetweenness: return voc::kBetweennessCentrality;
  }
  return voc::kSNAIndice;
}

inline std::optional<MetricKind> kind_of_class(std::string_view iri) {
  for (MetricKind k : {MetricKind::kDegree, MetricKind::kInDegree,
                       MetricKind::kOutDegree, MetricKind::kCloseness,
                       MetricKind::kBetweenness}) {
    if (iri == voc::iri(index_class(k))) return k;
  }
  return std::nullopt;
}

inline bool degree_family(MetricKind k) {
  return k == MetricKind::kDegree || k == MetricKind::kInDegree ||
         k == MetricKind::kOutDegree;
}

/// The property an index is defined for: the atom of `p` or `star(p)`,
/// otherwise a plain literal of the whole pattern.
inline Label defined_for(const PathExpr& type) {
  const PathExpr* e = &type;
  if (e->kind == PathExpr::Kind::kStar) e = &e->children[0];
  if (e->kind == PathExpr::Kind::kAtom) return e->atom;
  return Label::literal(to_string(type));
}

struct SemSnaAnnotation {
  Label subject;
  MetricKind kind = MetricKind::kDegree;
  /// xsd:decimal lexical form.
  std::string value;
  Label defined_for;
  /// Present exactly for the degree family.
  std::optional<std::int64_t> distance;

  friend bool operator==(const SemSnaAnnotation&,
                         const SemSnaAnnotation&) = default;
};

struct AnnotationRead {
  std::vector<SemSnaAnnotation> annotations;
  std::vector<std::string> warnings;
};

/// Class and property hierarchy of the vocabulary.
inline ERGraph schema_graph() {
  ERGraph g;
  const Label sub_class = Label::iri(std::string(vocab::kSubClassOf));
  const Label sub_prop = Label::iri(std::string(vocab::kSubPropertyOf));
  auto cls = [&](std::string_view sub, std::string_view super) {
    g.add_triple(voc::term(sub), sub_class, voc::term(super));
  };
  auto prop = [&](std::string_view sub, std::string_view super) {
    g.add_triple(voc::term(sub), sub_prop, voc::term(super));
  };
  cls(voc::kSNAIndice, voc::kSNAConcept);
  for (auto c : {voc::kDegree, voc::kInDegree, voc::kOutDegree,
                 voc::kClosenessCentrality, voc::kBetweennessCentrality,
                 voc::kBetweenness}) {
    cls(c, voc::kSNAIndice);
  }
  cls(voc::kPath, voc::kSNAConcept);
  for (auto c : {voc::kDirectedPath, voc::kGeodesicPath, voc::kCyclicPath}) {
    cls(c, voc::kPath);
  }
  prop(voc::kHasSNAIndice, voc::kHasSNAConcept);
  prop(voc::kFrom, voc::kPathExtremity);
  prop(voc::kTo, voc::kPathExtremity);
  return g;
}

namespace detail {

inline std::uint64_t fnv1a(std::string_view text,
                           std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Same key, same blank node: annotating twice rewrites rather than adds.
template <class... Parts>
Label stable_blank(std::string_view prefix, const Parts&... parts) {
  std::uint64_t h = fnv1a(prefix);
  ((h = fnv1a(std::string_view(parts), fnv1a("\x1f", h))), ...);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id(prefix);
  for (int shift = 60; shift >= 0; shift -= 4) id += kHex[(h >> shift) & 0xF];
  return Label::blank(std::move(id));
}

inline Label decimal_literal(std::string lexical) {
  return Label::literal(std::move(lexical), std::string(vocab::kXsdDecimal));
}

inline Label integer_literal(std::int64_t v) {
  return Label::literal(std::to_string(v), std::string(vocab::kXsdInteger));
}

}  // namespace detail

/// One blank node per result, keyed by (subject, index class, property,
/// distance). All results must share one parameter set.
template <class Number>
ERGraph annotate(const ERGraph& g,
                 const std::vector<CentralityResult<Number>>& results) {
  ERGraph out;
  if (results.empty()) return out;
  const MetricParams& params = results.front().params;
  const Label property = defined_for(params.type);
  const std::string property_key = property.canonical();
  const Label has_indice = voc::term(voc::kHasSNAIndice);
  const Label rdf_type = Label::iri(std::string(vocab::kRdfType));
  const Label has_value = voc::term(voc::kHasValue);
  const Label defined = voc::term(voc::kIsDefinedForProperty);
  const Label has_distance = voc::term(voc::kHasDistance);
  for (const auto& r : results) {
    if (!(r.params == params) || r.kind != results.front().kind) {
      throw InputError("annotation batch mixes metric parameters");
    }
    const Label& subject = g.entity_label(r.node);
    const auto cls = index_class(r.kind);
    std::optional<std::int64_t> distance;
    if (degree_family(r.kind)) distance = params.max_length.value_or(1);
    Label b = detail::stable_blank(
        "sna", subject.canonical(), cls, property_key,
        distance ? std::to_string(*distance) : std::string());
    out.add_triple(subject, has_indice, b);
    out.add_triple(b, rdf_type, voc::term(cls));
    out.add_triple(b, has_value,
                   detail::decimal_literal(format_decimal(r.value)));
    out.add_triple(b, defined, property);
    if (distance) {
      out.add_triple(b, has_distance, detail::integer_literal(*distance));
    }
  }
  return out;
}

template <class Number>
ERGraph annotate(const ERGraph& g, const MetricReport<Number>& report) {
  return annotate(g, report.results);
}

/// One Betweenness node per (broker, from, to) record.
template <class Number>
ERGraph annotate_pair_betweenness(
    const ERGraph& g, const std::vector<PairBetweenness<Number>>& pairs,
    const MetricParams& params) {
  ERGraph out;
  const Label property = defined_for(params.type);
  const Label rdf_type = Label::iri(std::string(vocab::kRdfType));
  for (const auto& p : pairs) {
    const Label& broker = g.entity_label(p.broker);
    const Label& from = g.entity_label(p.from);
    const Label& to = g.entity_label(p.to);
    Label b = detail::stable_blank("bw", broker.canonical(), from.canonical(),
                                   to.canonical(), property.canonical());
    out.add_triple(b, rdf_type, voc::term(voc::kBetweenness));
    out.add_triple(b, voc::term(voc::kHasValue),
                   detail::decimal_literal(format_decimal(p.value)));
    out.add_triple(b, voc::term(voc::kIsDefinedForProperty), property);
    out.add_triple(b, voc::term(voc::kFrom), from);
    out.add_triple(b, voc::term(voc::kTo), to);
    out.add_triple(b, voc::term(voc::kHasBetween), broker);
  }
  return out;
}

/// GeodesicPath nodes for chosen paths; DirectedPath as well unless the
/// paths were found with Direction::kEither. Interior nodes are hasBetween.
inline ERGraph annotate_geodesics(const ERGraph& g,
                                  const std::vector<Path>& paths,
                                  const MetricParams& params) {
  ERGraph out;
  const Label property = defined_for(params.type);
  const Label rdf_type = Label::iri(std::string(vocab::kRdfType));
  for (const Path& p : paths) {
    std::string key;
    for (EntityId e : p.nodes) key += g.entity_label(e).canonical() + ' ';
    Label b = detail::stable_blank("path", key, property.canonical());
    out.add_triple(b, rdf_type, voc::term(voc::kGeodesicPath));
    if (params.direction != Direction::kEither) {
      out.add_triple(b, rdf_type, voc::term(voc::kDirectedPath));
    }
    out.add_triple(b, voc::term(voc::kIsDefinedForProperty), property);
    out.add_triple(b, voc::term(voc::kHasLength),
                   detail::integer_literal(
                       static_cast<std::int64_t>(p.length())));
    out.add_triple(b, voc::term(voc::kFrom), g.entity_label(p.source()));
    out.add_triple(b, voc::term(voc::kTo), g.entity_label(p.target()));
    for (std::size_t k = 1; k + 1 < p.nodes.size(); ++k) {
      out.add_triple(b, voc::term(voc::kHasBetween),
                     g.entity_label(p.nodes[k]));
    }
  }
  return out;
}

/// Inverse of annotate(). Index nodes with an unknown class or without a
/// value are skipped with a warning. Sorted by subject, then class.
inline AnnotationRead read_annotations(const ERGraph& g) {
  AnnotationRead out;
  auto id = [&](std::string_view local) {
    return g.find_label(voc::term(local));
  };
  auto has_indice = id(voc::kHasSNAIndice);
  if (!has_indice) return out;
  auto rdf_type = g.find_label(Label::iri(std::string(vocab::kRdfType)));
  auto has_value = id(voc::kHasValue);
  auto defined = id(voc::kIsDefinedForProperty);
  auto has_distance = id(voc::kHasDistance);
  for (std::uint32_t i = 0; i < g.relation_count(); ++i) {
    RelationId r(i);
    if (g.relation_label_id(r) != *has_indice || g.args(r).size() != 2) {
      continue;
    }
    EntityId subject = g.args(r)[0];
    EntityId node = g.args(r)[1];
    std::optional<MetricKind> kind;
    std::optional<Label> value, property, distance;
    bool unknown_class = false;
    for (const Step& st : g.out_steps(node)) {
      LabelId p = g.relation_label_id(st.relation);
      const Label& o = g.entity_label(st.other);
      if (rdf_type && p == *rdf_type) {
        if (auto k = kind_of_class(o.value())) {
          kind = k;
        } else {
          unknown_class = true;
        }
      } else if (has_value && p == *has_value) {
        value = o;
      } else if (defined && p == *defined) {
        property = o;
      } else if (has_distance && p == *has_distance) {
        distance = o;
      }
    }
    const std::string where = g.entity_label(node).canonical();
    if (!kind) {
      out.warnings.push_back(where + (unknown_class ? ": unknown index class"
                                                    : ": no index class"));
      continue;
    }
    if (!value || !value->is_literal()) {
      out.warnings.push_back(where + ": missing hasValue");
      continue;
    }
    if (!property) {
      out.warnings.push_back(where + ": missing isDefinedForProperty");
      continue;
    }
    SemSnaAnnotation a;
    a.subject = g.entity_label(subject);
    a.kind = *kind;
    a.value = value->value();
    a.defined_for = *property;
    if (degree_family(*kind)) {
      std::int64_t n = 0;
      const std::string& text = distance ? distance->value() : where;
      auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
      if (!distance || !distance->is_literal() || ec != std::errc() ||
          end != text.data() + text.size()) {
        out.warnings.push_back(where + ": degree without valid hasDistance");
        continue;
      }
      a.distance = n;
    }
    out.annotations.push_back(std::move(a));
  }
  std::sort(out.annotations.begin(), out.annotations.end(),
            [](const SemSnaAnnotation& x, const SemSnaAnnotation& y) {
              return std::tuple(x.subject.canonical(), x.kind,
                                x.defined_for.canonical(), x.distance) <
                     std::tuple(y.subject.canonical(), y.kind,
                                y.defined_for.canonical(), y.distance);
            });
  return out;
}

}  // namespace semsna
