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

#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "semsna/error.hpp"
#include "semsna/label.hpp"

namespace semsna {

inline constexpr std::string_view kSemSnaNamespace =
    "http://ns.inria.fr/semsna/2008/11/02/voc#";

class PrefixMap {
 public:
  /// rdf, rdfs, xsd, foaf, rel and semsna.
  static PrefixMap defaults() {
    PrefixMap m;
    m.set("rdf", std::string(vocab::kRdf));
    m.set("rdfs", std::string(vocab::kRdfs));
    m.set("xsd", std::string(vocab::kXsd));
    m.set("foaf", std::string(vocab::kFoaf));
    m.set("rel", std::string(vocab::kRel));
    m.set("semsna", std::string(kSemSnaNamespace));
    return m;
  }

  void set(std::string prefix, std::string iri) {
    entries_[std::move(prefix)] = std::move(iri);
  }

  std::optional<std::string> namespace_of(std::string_view prefix) const {
    if (auto it = entries_.find(std::string(prefix)); it != entries_.end()) {
      return it->second;
    }
    return std::nullopt;
  }

  /// Parses `name=iri` (the CLI --prefix form).
  void set_from_binding(std::string_view binding) {
    auto eq = binding.find('=');
    if (eq == std::string_view::npos || eq == binding.size() - 1) {
      throw InputError("prefix binding must look like name=iri: " +
                       std::string(binding));
    }
    std::string iri(binding.substr(eq + 1));
    if (iri.size() >= 2 && iri.front() == '<' && iri.back() == '>') {
      iri = iri.substr(1, iri.size() - 2);
    }
    set(std::string(binding.substr(0, eq)), std::move(iri));
  }

  /// One binding per line (`name=iri` or `name iri`); `#` lines are comments.
  void load(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      auto last = line.find_last_not_of(" \t\r");
      std::string body = line.substr(first, last - first + 1);
      if (body.find('=') == std::string::npos) {
        auto sp = body.find_first_of(" \t");
        if (sp == std::string::npos) {
          throw InputError("bad prefix line: " + body);
        }
        auto rest = body.find_first_not_of(" \t", sp);
        body = body.substr(0, sp) + "=" + body.substr(rest);
      }
      set_from_binding(body);
    }
  }

  /// Shortest `prefix:local` form whose local part needs no escaping.
  std::optional<std::string> compact(std::string_view iri) const {
    std::optional<std::string> best;
    for (const auto& [prefix, ns] : entries_) {
      if (ns.empty() || !iri.starts_with(ns)) continue;
      std::string_view local = iri.substr(ns.size());
      if (!is_simple_local(local)) continue;
      std::string candidate = prefix + ":" + std::string(local);
      if (!best || candidate.size() < best->size()) best = candidate;
    }
    return best;
  }

  const std::map<std::string, std::string>& entries() const noexcept {
    return entries_;
  }

 private:
  static bool is_simple_local(std::string_view local) {
    if (local.empty()) return true;
    auto ok_first = [](unsigned char c) {
      return std::isalpha(c) || c == '_';
    };
    if (!ok_first(static_cast<unsigned char>(local[0]))) return false;
    for (char ch : local) {
      auto c = static_cast<unsigned char>(ch);
      if (!std::isalnum(c) && c != '_' && c != '-') return false;
    }
    return true;
  }

  std::map<std::string, std::string> entries_;
};

}  // namespace semsna
