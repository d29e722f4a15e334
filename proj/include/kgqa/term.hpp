// Copyright 2026 The kgqa Authors.
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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace kgqa {

// Dense identifier of a term inside one TripleStore dictionary.
struct TermId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(TermId, TermId) = default;
};

enum class TermKind : std::uint8_t { kIri, kBlank, kLiteral };

// An RDF term. For literals `language` and `datatype` are mutually exclusive;
// for IRIs and blank nodes both are empty.
struct Term {
  TermKind kind = TermKind::kIri;
  std::string value;
  std::string language;
  std::string datatype;

  static Term iri(std::string v) { return {TermKind::kIri, std::move(v), {}, {}}; }
  static Term blank(std::string label) {
    return {TermKind::kBlank, std::move(label), {}, {}};
  }
  static Term literal(std::string v, std::string lang = {}, std::string datatype = {}) {
    return {TermKind::kLiteral, std::move(v), std::move(lang), std::move(datatype)};
  }

  bool is_iri() const { return kind == TermKind::kIri; }
  bool is_literal() const { return kind == TermKind::kLiteral; }

  // Canonical N-Triples spelling; also the dictionary key.
  std::string to_ntriples() const;

  friend auto operator<=>(const Term&, const Term&) = default;
};

// Parses one N-Triples term starting at `pos`; advances `pos` past it.
// Returns nullopt on malformed input (pos is then unspecified).
std::optional<Term> parse_ntriples_term(std::string_view line, std::size_t& pos);

}  // namespace kgqa

template <>
struct std::hash<kgqa::TermId> {
  std::size_t operator()(kgqa::TermId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
