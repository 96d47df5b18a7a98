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
#include <istream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "semsna/error.hpp"
#include "semsna/graph.hpp"
#include "semsna/label.hpp"
#include "semsna/taxonomy.hpp"

namespace semsna {

enum class Severity : std::uint8_t { kError, kWarning };

struct ParseDiagnostic {
  std::size_t line = 0;  // 1-based
  std::size_t column = 0;
  std::string message;
  Severity severity = Severity::kError;
};

struct ParseOptions {
  /// Abort on the first malformed statement instead of skipping it.
  bool strict = false;
};

/// Result of loading one or more RDF documents.
struct RdfDocument {
  ERGraph graph;
  Taxonomy taxonomy;
  std::vector<ParseDiagnostic> diagnostics;
  std::size_t accepted = 0;
  std::size_t duplicates = 0;

  std::size_t error_count() const {
    return static_cast<std::size_t>(
        std::count_if(diagnostics.begin(), diagnostics.end(),
                      [](const ParseDiagnostic& d) {
                        return d.severity == Severity::kError;
                      }));
  }
};

/// Accumulates triples from any number of documents into one graph, keeping
/// triple-set semantics and feeding schema triples to the taxonomy. Blank
/// node ids are scoped per document: from the second document on they are
/// prefixed so that `_:x` in two files stays two nodes.
class RdfLoader {
 public:
  explicit RdfLoader(ParseOptions options = {}) : options_(options) {}

  const ParseOptions& options() const noexcept { return options_; }

  void begin_document() { ++documents_; }

  Label blank(std::string id) const {
    if (documents_ > 1) id = "d" + std::to_string(documents_) + "_" + id;
    return Label::blank(std::move(id));
  }

  /// Returns false when the triple was already present.
  bool add(const Label& s, const Label& p, const Label& o) {
    ERGraph& g = doc_.graph;
    EntityId se = g.add_entity(s);
    EntityId oe = g.add_entity(o);
    LabelId pl = g.intern(p);
    if (!seen_.insert(Key{se.value, pl.value, oe.value}).second) {
      ++doc_.duplicates;
      return false;
    }
    const EntityId args[] = {se, oe};
    g.add_relation(p, args);
    doc_.taxonomy.observe(s, p, o);
    ++doc_.accepted;
    return true;
  }

  void report(ParseDiagnostic d) { doc_.diagnostics.push_back(std::move(d)); }

  const std::vector<ParseDiagnostic>& diagnostics() const noexcept {
    return doc_.diagnostics;
  }

  void report(const ParseError& e) {
    report({e.line(), e.column(), e.message(), Severity::kError});
  }

  RdfDocument finish() && {
    doc_.taxonomy.close();
    return std::move(doc_);
  }

 private:
  struct Key {
    std::uint32_t s, p, o;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = k.s;
      h = h * 0x9E3779B97F4A7C15ULL ^ k.p;
      h = h * 0x9E3779B97F4A7C15ULL ^ k.o;
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };

  ParseOptions options_;
  RdfDocument doc_;
  std::unordered_set<Key, KeyHash> seen_;
  int documents_ = 0;
};

namespace detail {

/// Character cursor with 1-based line/column bookkeeping.
class Cursor {
 public:
  explicit Cursor(std::string_view text, std::size_t line = 1)
      : text_(text), line_(line) {}

  bool eof() const noexcept { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const noexcept {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  bool starts_with(std::string_view s) const noexcept {
    return text_.substr(pos_).starts_with(s);
  }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && !eof(); ++i) get();
  }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  std::size_t offset() const noexcept { return pos_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }
  [[noreturn]] void fail_at(const std::string& message, std::size_t line,
                            std::size_t column) const {
    throw ParseError(message, line, column);
  }

  void skip_blanks() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) get();
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_ = 1;
};

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Cursor sits on the 'u' / 'U' of a UCHAR escape.
inline void read_uchar(Cursor& c, std::string& out) {
  int digits = c.peek() == 'u' ? 4 : 8;
  c.get();
  std::uint32_t cp = 0;
  for (int i = 0; i < digits; ++i) {
    char h = c.peek();
    int v;
    if (h >= '0' && h <= '9') v = h - '0';
    else if (h >= 'a' && h <= 'f') v = h - 'a' + 10;
    else if (h >= 'A' && h <= 'F') v = h - 'A' + 10;
    else c.fail("bad hex digit in \\u escape");
    c.get();
    cp = cp * 16 + static_cast<std::uint32_t>(v);
  }
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    c.fail("escape is not a Unicode scalar value");
  }
  append_utf8(out, cp);
}

// `<...>`; the cursor is on '<'.
inline std::string read_iri_ref(Cursor& c) {
  std::size_t line = c.line(), column = c.column();
  c.get();
  std::string iri;
  for (;;) {
    if (c.eof() || c.peek() == '\n') c.fail_at("unterminated IRI", line, column);
    char ch = c.peek();
    if (ch == '>') {
      c.get();
      break;
    }
    if (ch == '\\') {
      c.get();
      if (c.peek() != 'u' && c.peek() != 'U') c.fail("bad escape in IRI");
      read_uchar(c, iri);
      continue;
    }
    if (static_cast<unsigned char>(ch) <= 0x20 || ch == '<' || ch == '"' ||
        ch == '{' || ch == '}' || ch == '|' || ch == '^' || ch == '`') {
      c.fail(std::string("character not allowed in IRI: '") +
             (static_cast<unsigned char>(ch) < 0x20 ? '?' : ch) + "'");
    }
    iri += c.get();
  }
  if (iri.empty()) c.fail_at("empty IRI", line, column);
  return iri;
}

inline bool is_name_start(char ch) {
  auto c = static_cast<unsigned char>(ch);
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

inline bool is_name_char(char ch) {
  auto c = static_cast<unsigned char>(ch);
  return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80;
}

// `_:label`; the cursor is on '_'.
inline std::string read_blank_label(Cursor& c) {
  c.get();
  if (c.peek() != ':') c.fail("expected ':' after '_'");
  c.get();
  std::string id;
  if (!is_name_start(c.peek()) &&
      !std::isdigit(static_cast<unsigned char>(c.peek()))) {
    c.fail("empty blank node label");
  }
  while (!c.eof() && (is_name_char(c.peek()) || c.peek() == '.')) {
    // A trailing '.' ends the statement instead.
    if (c.peek() == '.' && !is_name_char(c.peek(1)) && c.peek(1) != '.') break;
    id += c.get();
  }
  return id;
}

inline char unescape_echar(Cursor& c) {
  char e = c.get();
  switch (e) {
    case 't': return '\t';
    case 'b': return '\b';
    case 'n': return '\n';
    case 'r': return '\r';
    case 'f': return '\f';
    case '"': return '"';
    case '\'': return '\'';
    case '\\': return '\\';
    default: c.fail(std::string("bad string escape '\\") + e + "'");
  }
}

// Quoted string body; the cursor is on the opening quote. `long_form` reads
// the triple-quoted Turtle variant, which may span lines.
inline std::string read_quoted(Cursor& c, char quote, bool long_form) {
  std::size_t line = c.line(), column = c.column();
  c.advance(long_form ? 3 : 1);
  std::string out;
  for (;;) {
    if (c.eof()) c.fail_at("unterminated string literal", line, column);
    char ch = c.peek();
    if (!long_form && (ch == '\n' || ch == '\r')) {
      c.fail_at("unterminated string literal", line, column);
    }
    if (ch == quote) {
      if (!long_form) {
        c.get();
        return out;
      }
      if (c.peek(1) == quote && c.peek(2) == quote) {
        c.advance(3);
        return out;
      }
      out += c.get();
      continue;
    }
    if (ch == '\\') {
      c.get();
      if (c.peek() == 'u' || c.peek() == 'U') {
        read_uchar(c, out);
      } else {
        out += unescape_echar(c);
      }
      continue;
    }
    out += c.get();
  }
}

// After '@'.
inline std::string read_langtag(Cursor& c) {
  std::string tag;
  while (std::isalpha(static_cast<unsigned char>(c.peek()))) tag += c.get();
  if (tag.empty()) c.fail("empty language tag");
  while (c.peek() == '-') {
    tag += c.get();
    std::size_t n = 0;
    while (std::isalnum(static_cast<unsigned char>(c.peek()))) {
      tag += c.get();
      ++n;
    }
    if (n == 0) c.fail("bad language tag");
  }
  return tag;
}

inline Label read_nt_term(Cursor& c, const RdfLoader& loader,
                          bool allow_literal) {
  char ch = c.peek();
  if (ch == '<') return Label::iri(read_iri_ref(c));
  if (ch == '_') return loader.blank(read_blank_label(c));
  if (ch == '"' && allow_literal) {
    std::string lexical = read_quoted(c, '"', false);
    if (c.peek() == '@') {
      c.get();
      return Label::literal(std::move(lexical), {}, read_langtag(c));
    }
    if (c.peek() == '^') {
      c.get();
      if (c.peek() != '^') c.fail("expected '^^'");
      c.get();
      if (c.peek() != '<') c.fail("expected datatype IRI");
      return Label::literal(std::move(lexical), read_iri_ref(c));
    }
    return Label::literal(std::move(lexical));
  }
  if (c.eof()) c.fail("unexpected end of line");
  c.fail(allow_literal ? "expected IRI, blank node or literal"
                       : "expected IRI or blank node");
}

inline void parse_ntriples_line(RdfLoader& loader, std::string_view line,
                                std::size_t line_no) {
  Cursor c(line, line_no);
  c.skip_blanks();
  if (c.eof() || c.peek() == '#') return;
  Label s = read_nt_term(c, loader, false);
  c.skip_blanks();
  if (c.peek() != '<') c.fail("predicate must be an IRI");
  Label p = Label::iri(read_iri_ref(c));
  c.skip_blanks();
  Label o = read_nt_term(c, loader, true);
  c.skip_blanks();
  if (c.peek() != '.') c.fail("expected '.' at end of triple");
  c.get();
  c.skip_blanks();
  if (!c.eof() && c.peek() != '#') c.fail("trailing content after '.'");
  loader.add(s, p, o);
}

inline std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace detail

/// Feeds one N-Triples document into `loader`. Malformed lines are reported
/// and skipped, or rethrown in strict mode.
inline void load_ntriples(RdfLoader& loader, std::string_view text) {
  loader.begin_document();
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    try {
      detail::parse_ntriples_line(loader, line, line_no);
    } catch (const ParseError& e) {
      if (loader.options().strict) throw;
      loader.report(e);
    }
    start = end + 1;
  }
}

inline RdfDocument parse_ntriples(std::string_view text,
                                  ParseOptions options = {}) {
  RdfLoader loader(options);
  load_ntriples(loader, text);
  return std::move(loader).finish();
}

inline RdfDocument parse_ntriples(std::istream& in, ParseOptions options = {}) {
  return parse_ntriples(detail::read_all(in), options);
}

/// Canonical N-Triples: one line per distinct binary relation, sorted
/// bytewise, LF endings.
inline std::string serialize_ntriples(const ERGraph& g) {
  std::vector<std::string> lines;
  lines.reserve(g.relation_count());
  for (std::uint32_t i = 0; i < g.relation_count(); ++i) {
    RelationId r(i);
    auto args = g.args(r);
    if (args.size() != 2) {
      throw SerializationError("relation " + std::to_string(i) +
                               " has arity " + std::to_string(args.size()) +
                               "; N-Triples needs arity 2");
    }
    const Label& s = g.entity_label(args[0]);
    const Label& p = g.relation_label(r);
    const Label& o = g.entity_label(args[1]);
    if (!s.is_resource() || !p.is_iri() || o.is_variable()) {
      throw SerializationError("not an RDF triple: " + s.canonical() + " " +
                               p.canonical() + " " + o.canonical());
    }
    lines.push_back(s.canonical() + " " + p.canonical() + " " +
                    o.canonical() + " .\n");
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::string out;
  for (const auto& l : lines) out += l;
  return out;
}

/// Union of the binary relations of `a` and `b` with duplicates collapsed;
/// the taxonomy is rebuilt from the merged triples.
inline RdfDocument merge_graphs(const ERGraph& a, const ERGraph& b) {
  RdfLoader loader;
  loader.begin_document();
  for (const ERGraph* g : {&a, &b}) {
    for (std::uint32_t i = 0; i < g->relation_count(); ++i) {
      RelationId r(i);
      auto args = g->args(r);
      if (args.size() != 2) {
        throw InputError("cannot merge relation of arity " +
                         std::to_string(args.size()));
      }
      loader.add(g->entity_label(args[0]), g->relation_label(r),
                 g->entity_label(args[1]));
    }
  }
  return std::move(loader).finish();
}

}  // namespace semsna
