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
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semsna/error.hpp"
#include "semsna/label.hpp"
#include "semsna/prefix_map.hpp"

namespace semsna {

/// Regular expression over property IRIs:
///   expr := atom | star(expr) | seq(expr, ...) | alt(expr, ...)
struct PathExpr {
  enum class Kind : std::uint8_t { kAtom, kStar, kSeq, kAlt };

  Kind kind = Kind::kAtom;
  Label atom;
  std::vector<PathExpr> children;

  static PathExpr make_atom(Label property) {
    if (!property.is_iri()) throw InputError("path atoms must be IRIs");
    PathExpr e;
    e.kind = Kind::kAtom;
    e.atom = std::move(property);
    return e;
  }

  static PathExpr make_atom(std::string iri) {
    return make_atom(Label::iri(std::move(iri)));
  }

  /// star(star(x)) collapses to star(x).
  static PathExpr star(PathExpr inner) {
    if (inner.kind == Kind::kStar) return inner;
    PathExpr e;
    e.kind = Kind::kStar;
    e.children.push_back(std::move(inner));
    return e;
  }

  static PathExpr seq(std::vector<PathExpr> parts) {
    return group(Kind::kSeq, std::move(parts));
  }

  static PathExpr alt(std::vector<PathExpr> parts) {
    return group(Kind::kAlt, std::move(parts));
  }

  friend bool operator==(const PathExpr&, const PathExpr&) = default;

 private:
  static PathExpr group(Kind kind, std::vector<PathExpr> parts) {
    if (parts.empty()) throw InputError("empty seq/alt");
    PathExpr e;
    e.kind = kind;
    e.children = std::move(parts);
    return e;
  }
};

struct PathPattern {
  PathExpr expr;
  /// Admit sub-properties of each atom.
  bool subsumption = true;
};

/// Expression accepting the mirror image of every word `e` accepts.
inline PathExpr reversed(const PathExpr& e) {
  PathExpr out = e;
  for (auto& c : out.children) c = reversed(c);
  if (out.kind == PathExpr::Kind::kSeq) {
    std::reverse(out.children.begin(), out.children.end());
  }
  return out;
}

inline void collect_atoms(const PathExpr& e, std::vector<Label>& out) {
  if (e.kind == PathExpr::Kind::kAtom) {
    if (std::find(out.begin(), out.end(), e.atom) == out.end()) {
      out.push_back(e.atom);
    }
    return;
  }
  for (const auto& c : e.children) collect_atoms(c, out);
}

inline std::vector<Label> atoms(const PathExpr& e) {
  std::vector<Label> out;
  collect_atoms(e, out);
  return out;
}

/// Surface syntax; atoms are compacted with `prefixes` when given.
inline std::string to_string(const PathExpr& e,
                             const PrefixMap* prefixes = nullptr) {
  switch (e.kind) {
    case PathExpr::Kind::kAtom:
      if (prefixes) {
        if (auto pn = prefixes->compact(e.atom.value())) return *pn;
      }
      return e.atom.canonical();
    case PathExpr::Kind::kStar:
      return "star(" + to_string(e.children[0], prefixes) + ")";
    case PathExpr::Kind::kSeq:
    case PathExpr::Kind::kAlt: {
      std::string out = e.kind == PathExpr::Kind::kSeq ? "seq(" : "alt(";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += ", ";
        out += to_string(e.children[i], prefixes);
      }
      return out + ")";
    }
  }
  return {};
}

namespace detail {

class PathPatternParser {
 public:
  PathPatternParser(std::string_view text, const PrefixMap& prefixes)
      : text_(text), prefixes_(prefixes) {}

  PathExpr parse() {
    PathExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, 1, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    skip_ws();
    if (peek() != c) {
      fail(peek() == '\0' ? std::string("unbalanced parentheses: expected '") +
                                c + "'"
                          : std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  static bool name_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '-' || c == '.' || u >= 0x80;
  }

  PathExpr expr() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '<') return iri_atom();
    if (peek() == ')' || peek() == ',' || peek() == '\0') fail("empty atom");
    std::string word;
    while (name_char(peek())) word += text_[pos_++];
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      if (word == "star") {
        PathExpr inner = expr();
        expect(')');
        return PathExpr::star(std::move(inner));
      }
      if (word == "seq" || word == "alt") {
        std::vector<PathExpr> parts;
        parts.push_back(expr());
        skip_ws();
        while (peek() == ',') {
          ++pos_;
          parts.push_back(expr());
          skip_ws();
        }
        expect(')');
        return word == "seq" ? PathExpr::seq(std::move(parts))
                             : PathExpr::alt(std::move(parts));
      }
      pos_ = start;
      fail("unknown operator '" + word + "'");
    }
    pos_ = start + word.size();
    if (peek() != ':') {
      pos_ = start;
      fail(word.empty() ? "empty atom" : "expected prefixed name or <IRI>");
    }
    ++pos_;
    std::string local;
    while (name_char(peek())) local += text_[pos_++];
    auto ns = prefixes_.namespace_of(word);
    if (!ns) {
      pos_ = start;
      fail("unknown prefix '" + word + ":'");
    }
    if (ns->empty() && local.empty()) {
      pos_ = start;
      fail("empty atom");
    }
    return PathExpr::make_atom(*ns + local);
  }

  PathExpr iri_atom() {
    std::size_t start = pos_;
    auto close = text_.find('>', pos_);
    if (close == std::string_view::npos) fail("unterminated IRI");
    std::string iri(text_.substr(pos_ + 1, close - pos_ - 1));
    if (iri.empty()) {
      pos_ = start;
      fail("empty atom");
    }
    pos_ = close + 1;
    return PathExpr::make_atom(std::move(iri));
  }

  std::string_view text_;
  const PrefixMap& prefixes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the surface grammar. Errors carry the 1-based column.
inline PathPattern parse_path_pattern(
    std::string_view text, const PrefixMap& prefixes = PrefixMap::defaults()) {
  return PathPattern{detail::PathPatternParser(text, prefixes).parse(), true};
}

}  // namespace semsna
