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

// Turtle subset: @prefix/PREFIX, prefixed names, `a`, object and predicate
// lists, labelled blank nodes, string/numeric/boolean literals with language
// tags and datatypes. Anonymous `[ ]` nodes, collections `( )` and base IRIs
// are reported as unsupported.

#pragma once

#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semsna/error.hpp"
#include "semsna/graph.hpp"
#include "semsna/prefix_map.hpp"
#include "semsna/rdf_io.hpp"

namespace semsna {

namespace detail {

enum class TurtleTok : std::uint8_t {
  kIri,
  kPname,
  kBlank,
  kString,
  kLangTag,
  kDatatypeMark,
  kInteger,
  kDecimal,
  kDouble,
  kTrue,
  kFalse,
  kA,
  kAtPrefix,
  kAtBase,
  kSparqlPrefix,
  kSparqlBase,
  kDot,
  kSemicolon,
  kComma,
  kOpenBracket,
  kCloseBracket,
  kOpenParen,
  kCloseParen,
  kEof,
};

struct TurtleToken {
  TurtleTok kind = TurtleTok::kEof;
  std::string text;    // IRI, blank id, string body, number, lang tag, local
  std::string prefix;  // pname prefix
  std::size_t line = 0, column = 0;
  std::size_t end_line = 0, end_column = 0;
};

class TurtleLexer {
 public:
  explicit TurtleLexer(std::string_view text) : c_(text) {}

  TurtleToken next() {
    skip_space_and_comments();
    TurtleToken t;
    t.line = c_.line();
    t.column = c_.column();
    if (c_.eof()) {
      t.kind = TurtleTok::kEof;
    } else {
      scan(t);
    }
    t.end_line = c_.line();
    t.end_column = c_.column();
    return t;
  }

  /// Guarantees progress after a lexical error.
  void skip_char() {
    if (!c_.eof()) c_.get();
  }

 private:
  void skip_space_and_comments() {
    while (!c_.eof()) {
      char ch = c_.peek();
      if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
        c_.get();
      } else if (ch == '#') {
        while (!c_.eof() && c_.peek() != '\n') c_.get();
      } else {
        break;
      }
    }
  }

  void scan(TurtleToken& t) {
    char ch = c_.peek();
    switch (ch) {
      case '<':
        t.kind = TurtleTok::kIri;
        t.text = read_iri_ref(c_);
        return;
      case '"':
      case '\'': {
        bool long_form = c_.peek(1) == ch && c_.peek(2) == ch;
        t.kind = TurtleTok::kString;
        t.text = read_quoted(c_, ch, long_form);
        return;
      }
      case '.':
        if (std::isdigit(static_cast<unsigned char>(c_.peek(1)))) break;
        c_.get();
        t.kind = TurtleTok::kDot;
        return;
      case ';': c_.get(); t.kind = TurtleTok::kSemicolon; return;
      case ',': c_.get(); t.kind = TurtleTok::kComma; return;
      case '[': c_.get(); t.kind = TurtleTok::kOpenBracket; return;
      case ']': c_.get(); t.kind = TurtleTok::kCloseBracket; return;
      case '(': c_.get(); t.kind = TurtleTok::kOpenParen; return;
      case ')': c_.get(); t.kind = TurtleTok::kCloseParen; return;
      case '^':
        c_.get();
        if (c_.peek() != '^') c_.fail("expected '^^'");
        c_.get();
        t.kind = TurtleTok::kDatatypeMark;
        return;
      case '@': {
        c_.get();
        std::string tag = read_langtag(c_);
        if (tag == "prefix") t.kind = TurtleTok::kAtPrefix;
        else if (tag == "base") t.kind = TurtleTok::kAtBase;
        else t.kind = TurtleTok::kLangTag;
        t.text = std::move(tag);
        return;
      }
      case '_':
        if (c_.peek(1) == ':') {
          t.kind = TurtleTok::kBlank;
          t.text = read_blank_label(c_);
          return;
        }
        break;
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '+' ||
        ch == '-' || ch == '.') {
      scan_number(t);
      return;
    }
    if (is_name_start(ch) || ch == ':') {
      scan_name(t);
      return;
    }
    c_.fail(std::string("unexpected character '") + ch + "'");
  }

  void scan_number(TurtleToken& t) {
    std::string s;
    if (c_.peek() == '+' || c_.peek() == '-') s += c_.get();
    auto digits = [&] {
      std::size_t n = 0;
      while (std::isdigit(static_cast<unsigned char>(c_.peek()))) {
        s += c_.get();
        ++n;
      }
      return n;
    };
    std::size_t whole = digits();
    std::size_t frac = 0;
    bool has_dot = false;
    if (c_.peek() == '.' &&
        std::isdigit(static_cast<unsigned char>(c_.peek(1)))) {
      has_dot = true;
      s += c_.get();
      frac = digits();
    }
    if (whole + frac == 0) c_.fail("malformed number");
    t.kind = has_dot ? TurtleTok::kDecimal : TurtleTok::kInteger;
    if (c_.peek() == 'e' || c_.peek() == 'E') {
      s += c_.get();
      if (c_.peek() == '+' || c_.peek() == '-') s += c_.get();
      if (digits() == 0) c_.fail("malformed exponent");
      t.kind = TurtleTok::kDouble;
    }
    t.text = std::move(s);
  }

  // Prefixed name or bare keyword. A trailing '.' belongs to the statement.
  void scan_name(TurtleToken& t) {
    std::string prefix;
    while (is_name_char(c_.peek()) ||
           (c_.peek() == '.' && (is_name_char(c_.peek(1)) ||
                                 c_.peek(1) == '.' || c_.peek(1) == ':'))) {
      prefix += c_.get();
    }
    if (c_.peek() != ':') {
      if (prefix == "a") t.kind = TurtleTok::kA;
      else if (prefix == "true") t.kind = TurtleTok::kTrue;
      else if (prefix == "false") t.kind = TurtleTok::kFalse;
      else if (ascii_lower(prefix) == "prefix") t.kind = TurtleTok::kSparqlPrefix;
      else if (ascii_lower(prefix) == "base") t.kind = TurtleTok::kSparqlBase;
      else c_.fail("unexpected bare word '" + prefix + "'");
      return;
    }
    c_.get();
    std::string local;
    for (;;) {
      char ch = c_.peek();
      if (is_name_char(ch) || ch == ':' || ch == '%') {
        local += c_.get();
      } else if (ch == '.' && (is_name_char(c_.peek(1)) || c_.peek(1) == ':' ||
                               c_.peek(1) == '%' || c_.peek(1) == '\\')) {
        local += c_.get();
      } else if (ch == '\\') {
        c_.get();
        char e = c_.peek();
        if (std::string_view("_~.-!$&'()*+,;=/?#@%").find(e) ==
                std::string_view::npos ||
            e == '\0') {
          c_.fail("bad escape in local name");
        }
        local += c_.get();
      } else {
        break;
      }
    }
    t.kind = TurtleTok::kPname;
    t.prefix = std::move(prefix);
    t.text = std::move(local);
  }

  Cursor c_;
};

class TurtleParser {
 public:
  TurtleParser(RdfLoader& loader, std::string_view text, PrefixMap prefixes)
      : loader_(loader), lexer_(text), prefixes_(std::move(prefixes)) {}

  void run() {
    for (;;) {
      try {
        if (peek().kind == TurtleTok::kEof) return;
        statement();
        for (const auto& [s, p, o] : pending_) loader_.add(s, p, o);
      } catch (const ParseError& e) {
        if (loader_.options().strict) throw;
        loader_.report(e);
        recover();
      }
      pending_.clear();
    }
  }

 private:
  const TurtleToken& peek() {
    if (!lookahead_) lookahead_ = lexer_.next();
    return *lookahead_;
  }

  TurtleToken take() {
    TurtleToken t = peek();
    lookahead_.reset();
    last_line_ = t.end_line;
    last_column_ = t.end_column;
    return t;
  }

  [[noreturn]] void fail(const std::string& message, const TurtleToken& at) {
    if (at.kind == TurtleTok::kEof) {
      throw ParseError("unterminated statement: " + message, last_line_,
                       last_column_);
    }
    throw ParseError(message, at.line, at.column);
  }

  void expect(TurtleTok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what, peek());
    take();
  }

  // Skip to the end of the broken statement.
  void recover() {
    for (;;) {
      try {
        TurtleToken t = take();
        if (t.kind == TurtleTok::kDot || t.kind == TurtleTok::kEof) return;
      } catch (const ParseError&) {
        lookahead_.reset();
        lexer_.skip_char();
      }
    }
  }

  void statement() {
    switch (peek().kind) {
      case TurtleTok::kAtPrefix:
        take();
        prefix_binding();
        expect(TurtleTok::kDot, "'.' after @prefix");
        return;
      case TurtleTok::kSparqlPrefix:
        take();
        prefix_binding();
        return;
      case TurtleTok::kAtBase:
      case TurtleTok::kSparqlBase:
        fail("base IRI directives are not supported", peek());
      default:
        break;
    }
    Label s = subject();
    predicate_object_list(s);
    expect(TurtleTok::kDot, "'.' at end of statement");
  }

  void prefix_binding() {
    const TurtleToken& t = peek();
    if (t.kind != TurtleTok::kPname || !t.text.empty()) {
      fail("expected prefix name ending in ':'", t);
    }
    std::string name = take().prefix;
    if (peek().kind != TurtleTok::kIri) fail("expected namespace IRI", peek());
    prefixes_.set(std::move(name), take().text);
  }

  Label expand(const TurtleToken& t) {
    auto ns = prefixes_.namespace_of(t.prefix);
    if (!ns) fail("unknown prefix '" + t.prefix + ":'", t);
    return Label::iri(*ns + t.text);
  }

  [[noreturn]] void unsupported(const TurtleToken& t) {
    fail(t.kind == TurtleTok::kOpenBracket
             ? "anonymous blank nodes '[ ]' are not supported"
             : "collections '( )' are not supported",
         t);
  }

  Label subject() {
    const TurtleToken& t = peek();
    switch (t.kind) {
      case TurtleTok::kIri: return Label::iri(take().text);
      case TurtleTok::kPname: return expand(take());
      case TurtleTok::kBlank: return loader_.blank(take().text);
      case TurtleTok::kOpenBracket:
      case TurtleTok::kOpenParen: unsupported(t);
      default: fail("expected subject", t);
    }
  }

  Label verb() {
    const TurtleToken& t = peek();
    switch (t.kind) {
      case TurtleTok::kA:
        take();
        return Label::iri(std::string(vocab::kRdfType));
      case TurtleTok::kIri: return Label::iri(take().text);
      case TurtleTok::kPname: return expand(take());
      default: fail("expected predicate", t);
    }
  }

  Label object() {
    const TurtleToken& t = peek();
    switch (t.kind) {
      case TurtleTok::kIri: return Label::iri(take().text);
      case TurtleTok::kPname: return expand(take());
      case TurtleTok::kBlank: return loader_.blank(take().text);
      case TurtleTok::kString: {
        std::string lexical = take().text;
        if (peek().kind == TurtleTok::kLangTag) {
          return Label::literal(std::move(lexical), {}, take().text);
        }
        if (peek().kind == TurtleTok::kDatatypeMark) {
          take();
          const TurtleToken& dt = peek();
          if (dt.kind == TurtleTok::kIri) {
            return Label::literal(std::move(lexical), take().text);
          }
          if (dt.kind == TurtleTok::kPname) {
            return Label::literal(std::move(lexical), expand(take()).value());
          }
          fail("expected datatype IRI", dt);
        }
        return Label::literal(std::move(lexical));
      }
      case TurtleTok::kInteger:
        return Label::literal(take().text, std::string(vocab::kXsdInteger));
      case TurtleTok::kDecimal:
        return Label::literal(take().text, std::string(vocab::kXsdDecimal));
      case TurtleTok::kDouble:
        return Label::literal(take().text, std::string(vocab::kXsdDouble));
      case TurtleTok::kTrue:
      case TurtleTok::kFalse:
        return Label::literal(take().kind == TurtleTok::kTrue ? "true" : "false",
                              std::string(vocab::kXsdBoolean));
      case TurtleTok::kOpenBracket:
      case TurtleTok::kOpenParen: unsupported(t);
      default: fail("expected object", t);
    }
  }

  void predicate_object_list(const Label& s) {
    for (;;) {
      Label p = verb();
      for (;;) {
        pending_.push_back({s, p, object()});
        if (peek().kind != TurtleTok::kComma) break;
        take();
      }
      if (peek().kind != TurtleTok::kSemicolon) return;
      while (peek().kind == TurtleTok::kSemicolon) take();
      if (peek().kind == TurtleTok::kDot) return;
    }
  }

  RdfLoader& loader_;
  TurtleLexer lexer_;
  PrefixMap prefixes_;
  std::optional<TurtleToken> lookahead_;
  std::size_t last_line_ = 1, last_column_ = 1;
  std::vector<std::array<Label, 3>> pending_;
};

}  // namespace detail

/// Feeds one Turtle document into `loader`. A statement is committed only
/// when it parses completely; a broken statement yields one diagnostic and
/// parsing resumes after its terminating '.'.
inline void load_turtle(RdfLoader& loader, std::string_view text,
                        PrefixMap prefixes = {}) {
  loader.begin_document();
  detail::TurtleParser(loader, text, std::move(prefixes)).run();
}

inline RdfDocument parse_turtle(std::string_view text,
                                ParseOptions options = {}) {
  RdfLoader loader(options);
  load_turtle(loader, text);
  return std::move(loader).finish();
}

inline RdfDocument parse_turtle(std::istream& in, ParseOptions options = {}) {
  return parse_turtle(detail::read_all(in), options);
}

/// Turtle rendering grouped by subject, using `prefixes` where the local part
/// needs no escaping. Statement order follows canonical N-Triples order.
inline std::string serialize_turtle(const ERGraph& g,
                                    const PrefixMap& prefixes) {
  struct Row {
    std::string s, p, o;
  };
  std::map<std::string, bool> used;
  auto term = [&](const Label& l) {
    if (l.is_iri()) {
      if (auto pn = prefixes.compact(l.value())) {
        used[pn->substr(0, pn->find(':'))] = true;
        return *pn;
      }
    }
    return l.canonical();
  };
  // Sort on canonical forms so that output order is independent of prefixes.
  std::vector<std::pair<std::array<std::string, 3>, Row>> items;
  for (std::uint32_t i = 0; i < g.relation_count(); ++i) {
    RelationId r(i);
    auto args = g.args(r);
    if (args.size() != 2) {
      throw SerializationError("Turtle output needs arity-2 relations");
    }
    const Label& s = g.entity_label(args[0]);
    const Label& p = g.relation_label(r);
    const Label& o = g.entity_label(args[1]);
    std::string pt = p.value() == vocab::kRdfType ? "a" : term(p);
    items.push_back({{s.canonical(), p.canonical(), o.canonical()},
                     Row{term(s), std::move(pt), term(o)}});
  }
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  items.erase(std::unique(items.begin(), items.end(),
                          [](const auto& a, const auto& b) {
                            return a.first == b.first;
                          }),
              items.end());

  std::string out;
  for (const auto& [prefix, _] : used) {
    out += "@prefix " + prefix + ": <" + *prefixes.namespace_of(prefix) +
           "> .\n";
  }
  if (!used.empty() && !items.empty()) out += "\n";
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Row& row = items[i].second;
    bool same_subject = i > 0 && items[i - 1].first[0] == items[i].first[0];
    bool same_predicate =
        same_subject && items[i - 1].first[1] == items[i].first[1];
    if (!same_subject) {
      out += row.s + " " + row.p + " " + row.o;
    } else if (same_predicate) {
      out += ", " + row.o;
    } else {
      out += " ;\n    " + row.p + " " + row.o;
    }
    bool last_of_subject =
        i + 1 == items.size() || items[i + 1].first[0] != items[i].first[0];
    if (last_of_subject) out += " .\n";
  }
  return out;
}

}  // namespace semsna
