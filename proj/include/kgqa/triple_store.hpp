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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgqa/term.hpp"

namespace kgqa {

struct Triple {
  TermId subject;
  TermId predicate;
  TermId object;

  friend constexpr auto operator<=>(const Triple&, const Triple&) = default;
};

// One adjacency entry: the edge label plus the vertex at the other end.
struct Edge {
  TermId predicate;
  TermId other;

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

// Subject/object pair stored under a predicate.
struct Arc {
  TermId subject;
  TermId object;

  friend constexpr auto operator<=>(const Arc&, const Arc&) = default;
};

struct Degree {
  std::size_t inlinks = 0;
  std::size_t outlinks = 0;
};

class TripleStoreBuilder;

// Dictionary-encoded, immutable RDF graph. Adjacency is kept in three
// compressed-row layouts: subject -> (p, o), object -> (p, s) and
// predicate -> (s, o). All spans are sorted.
class TripleStore {
 public:
  TripleStore() = default;

  const std::string& name() const { return name_; }
  std::size_t term_count() const { return terms_.size(); }
  std::size_t triple_count() const { return triples_.size(); }

  // Throws LookupError for ids outside the dictionary.
  const Term& term(TermId id) const;
  bool contains_term(TermId id) const { return id.value < terms_.size(); }
  std::optional<TermId> find(const Term& t) const;
  std::optional<TermId> find_iri(std::string_view iri) const;

  // Sorted by (s, p, o); duplicates removed.
  std::span<const Triple> triples() const { return triples_; }
  bool contains(const Triple& t) const;

  std::span<const Edge> out_edges(TermId subject) const;
  std::span<const Edge> in_edges(TermId object) const;
  std::span<const Arc> predicate_arcs(TermId predicate) const;

  Degree degree(TermId id) const;
  bool is_vertex(TermId id) const;
  bool is_predicate(TermId id) const;

 private:
  friend class TripleStoreBuilder;

  static std::span<const Edge> row(const std::vector<std::uint32_t>& offsets,
                                   const std::vector<Edge>& edges, TermId id);

  std::string name_;
  std::vector<Term> terms_;
  std::unordered_map<std::string, TermId> dictionary_;
  std::vector<Triple> triples_;
  std::vector<std::uint32_t> out_offsets_;
  std::vector<Edge> out_edges_;
  std::vector<std::uint32_t> in_offsets_;
  std::vector<Edge> in_edges_;
  std::vector<std::uint32_t> pred_offsets_;
  std::vector<Arc> pred_arcs_;
};

// Single-writer construction. Terms are interned in first-seen order.
class TripleStoreBuilder {
 public:
  explicit TripleStoreBuilder(std::string kb_name);

  TermId intern(const Term& t);
  void add(const Term& s, const Term& p, const Term& o);
  void add(TermId s, TermId p, TermId o);
  std::size_t pending_triples() const { return triples_.size(); }

  TripleStore build() &&;

 private:
  TripleStore store_;
  std::vector<Triple> triples_;
};

struct IngestResult {
  TripleStore store;
  std::size_t triples_loaded = 0;
  std::size_t lines_skipped = 0;
};

// Parses one N-Triples statement. Blank and comment lines yield nullopt with
// `blank` set; malformed lines yield nullopt with `blank` cleared.
struct ParsedStatement {
  Term subject, predicate, object;
};
std::optional<ParsedStatement> parse_ntriples_line(std::string_view line, bool& blank);

// Reads N-Triples. Malformed lines are counted and skipped. Throws
// IngestError when the stream is unreadable and EmptyStoreError when no
// statement parses.
IngestResult ingest_ntriples(std::istream& source, std::string kb_name);
IngestResult ingest_ntriples(const std::vector<std::filesystem::path>& files,
                             std::string kb_name);

void write_ntriples(const TripleStore& store, std::ostream& out);

// KB-independent relevance: inlinks + outlinks. Throws LookupError.
double relevance(const TripleStore& store, TermId t);

}  // namespace kgqa
