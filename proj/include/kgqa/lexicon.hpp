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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kgqa/language_pack.hpp"
#include "kgqa/triple_store.hpp"

namespace kgqa {

enum class Role : std::uint8_t { kEntity, kProperty, kClass };

const char* to_string(Role role);
std::optional<Role> parse_role(std::string_view s);

// An IRI located in a named store.
struct IriRef {
  std::string kb;
  TermId id;
  std::string iri;

  friend bool operator==(const IriRef& a, const IriRef& b) { return a.kb == b.kb && a.id == b.id; }
  friend auto operator<=>(const IriRef& a, const IriRef& b) {
    if (auto c = a.kb <=> b.kb; c != 0) return c;
    return a.id <=> b.id;
  }
};

inline constexpr std::string_view kSourceSameAs = "sameas";
inline constexpr std::string_view kSourceMined = "mined";
inline constexpr std::string_view kSourceManual = "manual";

struct LexiconEntry {
  std::string surface_stemmed;  // stemmed tokens joined by ' '
  IriRef iri;
  Role role = Role::kEntity;
  std::string language;
  double relevance = 0;
  std::string source;  // label predicate IRI, "sameas", "mined" or "manual"
  std::string label;   // surface form before normalization
};

struct LabelPredicate {
  std::string iri;
  std::vector<std::string> languages;
};

struct LabelConfig {
  std::vector<LabelPredicate> label_predicates;
  std::vector<std::string> type_predicates{"http://www.w3.org/1999/02/22-rdf-syntax-ns#type"};
};

// Inverted index from (language, stemmed surface) to entries. Entries are
// unique on (surface, iri, language); later duplicates are dropped.
class Lexicon {
 public:
  bool add(LexiconEntry entry);
  void merge(const Lexicon& other);

  std::span<const LexiconEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<const LexiconEntry*> find(std::string_view key, std::string_view language) const;

 private:
  static std::string posting_key(std::string_view language, std::string_view key);

  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> postings_;
  std::unordered_set<std::string> unique_;
};

struct BuildOutcome {
  Lexicon lexicon;
  std::vector<std::string> warnings;
};

// One entry per (subject, label predicate, literal) and declared language.
// Literals with a language tag only feed that language; untagged literals
// feed every declared language. Throws ConfigError without label
// predicates and BuildError when nothing gets indexed.
BuildOutcome build_lexicon(const TripleStore& store, const LabelConfig& config,
                           const LanguagePacks& packs);

// Role rules: predicate position -> property, object of a type predicate ->
// class, otherwise entity (first matching rule wins).
Role infer_role(const TripleStore& store, TermId id, std::span<const TermId> type_predicates);

using SameAsLink = std::pair<std::string, std::string>;

// Gives every IRI in a sameAs-connected component the surfaces of all its
// members. Idempotent. Endpoints found in no store are skipped with a warning.
Lexicon transfer_via_sameas(const Lexicon& lexicon, std::span<const SameAsLink> links,
                            std::span<const TripleStore* const> stores,
                            std::vector<std::string>* warnings = nullptr);

struct CorpusDocument {
  TermId entity;
  std::string text;
};

struct MinedSegment {
  std::string text;
  std::size_t frequency = 0;

  friend bool operator==(const MinedSegment&, const MinedSegment&) = default;
};

// Text found between label(x) and label(y) (either order) in corpus
// sentences, for every (x, p, y) in the store. Ranked by frequency, ties by
// shorter segment then lexicographically.
std::vector<MinedSegment> mine_property_lexicalizations(const TripleStore& store, TermId property,
                                                        std::span<const CorpusDocument> corpus,
                                                        std::size_t top_k,
                                                        const LabelConfig& config);

void add_mined(Lexicon& lexicon, const TripleStore& store, TermId property,
               std::span<const MinedSegment> segments, const LanguagePack& pack);

struct LexiconHit {
  IriRef iri;
  Role role = Role::kEntity;
  double relevance = 0;
  std::string label;
};

std::vector<LexiconHit> lookup(const Lexicon& lexicon, std::span<const std::string> ngram,
                               const LanguagePack& pack);

// Tab-separated: surface, kb, iri, role, language, relevance, source, label.
void write_snapshot(const Lexicon& lexicon, std::ostream& out);
// Resolves IRIs against `stores` by kb name; throws ParseError on bad rows.
Lexicon read_snapshot(std::istream& in, std::span<const TripleStore* const> stores);

}  // namespace kgqa
