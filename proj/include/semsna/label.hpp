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
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>

#include "semsna/error.hpp"

namespace semsna {

namespace vocab {
inline constexpr std::string_view kRdf =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs =
    "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kFoaf = "http://xmlns.com/foaf/0.1/";
inline constexpr std::string_view kRel = "http://purl.org/vocab/relationship/";

inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
inline constexpr std::string_view kSubPropertyOf =
    "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
inline constexpr std::string_view kSubClassOf =
    "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kXsdString =
    "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdInteger =
    "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kXsdDecimal =
    "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kXsdDouble =
    "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kXsdBoolean =
    "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view kFoafKnows = "http://xmlns.com/foaf/0.1/knows";
inline constexpr std::string_view kFoafPerson =
    "http://xmlns.com/foaf/0.1/Person";
}  // namespace vocab

enum class LabelKind : std::uint8_t { kIri, kBlank, kLiteral, kVariable };

namespace detail {

inline void append_uchar(std::string& out, unsigned char c) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  out += "\\u00";
  out += kHex[c >> 4];
  out += kHex[c & 0xF];
}

// IRIREF forbids these characters unescaped.
inline void append_escaped_iri(std::string& out, std::string_view iri) {
  for (char ch : iri) {
    auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20 || ch == '<' || ch == '>' || ch == '"' || ch == '{' ||
        ch == '}' || ch == '|' || ch == '^' || ch == '`' || ch == '\\') {
      append_uchar(out, c);
    } else {
      out += ch;
    }
  }
}

inline void append_escaped_string(std::string& out, std::string_view lexical) {
  for (char ch : lexical) {
    auto c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          append_uchar(out, c);
        } else {
          out += ch;
        }
    }
  }
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

}  // namespace detail

/// A node or edge label: IRI, blank-node id, literal, or (in patterns only)
/// a variable. Literals are normalized on construction so that member-wise
/// equality coincides with equality of the canonical N-Triples form:
/// `^^xsd:string` is dropped and language tags are lower-cased.
class Label {
 public:
  Label() = default;

  static Label iri(std::string value) {
    if (value.empty()) throw InputError("empty IRI");
    return Label(LabelKind::kIri, std::move(value));
  }

  static Label blank(std::string id) {
    if (id.empty()) throw InputError("empty blank node id");
    return Label(LabelKind::kBlank, std::move(id));
  }

  static Label literal(std::string lexical, std::string datatype = {},
                       std::string language = {}) {
    Label l(LabelKind::kLiteral, std::move(lexical));
    if (!language.empty()) {
      l.language_ = detail::ascii_lower(language);
    } else if (datatype != vocab::kXsdString &&
               datatype != vocab::kRdfLangString) {
      l.datatype_ = std::move(datatype);
    }
    return l;
  }

  static Label variable(std::string name) {
    if (name.empty()) throw InputError("empty variable name");
    return Label(LabelKind::kVariable, std::move(name));
  }

  LabelKind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == LabelKind::kIri; }
  bool is_blank() const noexcept { return kind_ == LabelKind::kBlank; }
  bool is_literal() const noexcept { return kind_ == LabelKind::kLiteral; }
  bool is_variable() const noexcept { return kind_ == LabelKind::kVariable; }
  /// IRI or blank node: the entities the SNA layer may traverse.
  bool is_resource() const noexcept { return is_iri() || is_blank(); }

  /// IRI text, blank id (without `_:`), literal lexical form, or variable name.
  const std::string& value() const noexcept { return value_; }
  const std::string& datatype() const noexcept { return datatype_; }
  const std::string& language() const noexcept { return language_; }

  /// N-Triples term syntax; `?name` for variables.
  std::string canonical() const {
    std::string out;
    switch (kind_) {
      case LabelKind::kIri:
        out += '<';
        detail::append_escaped_iri(out, value_);
        out += '>';
        break;
      case LabelKind::kBlank:
        out += "_:";
        out += value_;
        break;
      case LabelKind::kLiteral:
        out += '"';
        detail::append_escaped_string(out, value_);
        out += '"';
        if (!language_.empty()) {
          out += '@';
          out += language_;
        } else if (!datatype_.empty()) {
          out += "^^<";
          detail::append_escaped_iri(out, datatype_);
          out += '>';
        }
        break;
      case LabelKind::kVariable:
        out += '?';
        out += value_;
        break;
    }
    return out;
  }

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label& a, const Label& b) {
    return a.canonical() <=> b.canonical();
  }

 private:
  Label(LabelKind kind, std::string value)
      : kind_(kind), value_(std::move(value)) {}

  LabelKind kind_ = LabelKind::kIri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

/// True when `iri` starts with a URI scheme (`scheme:`).
inline bool is_absolute_iri(std::string_view iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) {
    return false;
  }
  for (std::size_t i = 1; i < iri.size(); ++i) {
    auto c = static_cast<unsigned char>(iri[i]);
    if (c == ':') return true;
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

}  // namespace semsna

template <>
struct std::hash<semsna::Label> {
  std::size_t operator()(const semsna::Label& l) const {
    return std::hash<std::string>{}(l.canonical());
  }
};
