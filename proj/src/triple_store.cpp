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

#include "kgqa/triple_store.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "kgqa/errors.hpp"

namespace kgqa {
namespace {

template <class Entry, class Key>
void build_rows(std::size_t n, const std::vector<Triple>& triples, Key key,
                std::vector<std::uint32_t>& offsets, std::vector<Entry>& entries,
                Entry (*make)(const Triple&)) {
  offsets.assign(n + 1, 0);
  for (const Triple& t : triples) ++offsets[key(t).value + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  entries.resize(triples.size());
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Triple& t : triples) entries[cursor[key(t).value]++] = make(t);
  for (std::size_t i = 0; i < n; ++i)
    std::sort(entries.begin() + offsets[i], entries.begin() + offsets[i + 1]);
}

void skip_ws(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}

}  // namespace

const Term& TripleStore::term(TermId id) const {
  if (!contains_term(id))
    throw LookupError("term id " + std::to_string(id.value) + " not in store '" + name_ + "'");
  return terms_[id.value];
}

std::optional<TermId> TripleStore::find(const Term& t) const {
  auto it = dictionary_.find(t.to_ntriples());
  if (it == dictionary_.end()) return std::nullopt;
  return it->second;
}

std::optional<TermId> TripleStore::find_iri(std::string_view iri) const {
  return find(Term::iri(std::string(iri)));
}

bool TripleStore::contains(const Triple& t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

std::span<const Edge> TripleStore::row(const std::vector<std::uint32_t>& offsets,
                                       const std::vector<Edge>& edges, TermId id) {
  if (id.value + 1 >= offsets.size()) return {};
  return std::span<const Edge>(edges.data() + offsets[id.value],
                               offsets[id.value + 1] - offsets[id.value]);
}

std::span<const Edge> TripleStore::out_edges(TermId subject) const {
  return row(out_offsets_, out_edges_, subject);
}

std::span<const Edge> TripleStore::in_edges(TermId object) const {
  return row(in_offsets_, in_edges_, object);
}

std::span<const Arc> TripleStore::predicate_arcs(TermId predicate) const {
  if (predicate.value + 1 >= pred_offsets_.size()) return {};
  return std::span<const Arc>(pred_arcs_.data() + pred_offsets_[predicate.value],
                              pred_offsets_[predicate.value + 1] - pred_offsets_[predicate.value]);
}

Degree TripleStore::degree(TermId id) const {
  term(id);
  return {in_edges(id).size(), out_edges(id).size()};
}

bool TripleStore::is_vertex(TermId id) const {
  return !in_edges(id).empty() || !out_edges(id).empty();
}

bool TripleStore::is_predicate(TermId id) const { return !predicate_arcs(id).empty(); }

TripleStoreBuilder::TripleStoreBuilder(std::string kb_name) {
  store_.name_ = std::move(kb_name);
}

TermId TripleStoreBuilder::intern(const Term& t) {
  auto [it, inserted] = store_.dictionary_.try_emplace(
      t.to_ntriples(), TermId{static_cast<std::uint32_t>(store_.terms_.size())});
  if (inserted) store_.terms_.push_back(t);
  return it->second;
}

void TripleStoreBuilder::add(const Term& s, const Term& p, const Term& o) {
  add(intern(s), intern(p), intern(o));
}

void TripleStoreBuilder::add(TermId s, TermId p, TermId o) { triples_.push_back({s, p, o}); }

TripleStore TripleStoreBuilder::build() && {
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
  TripleStore& s = store_;
  s.triples_ = std::move(triples_);
  const std::size_t n = s.terms_.size();
  build_rows<Edge>(
      n, s.triples_, [](const Triple& t) { return t.subject; }, s.out_offsets_, s.out_edges_,
      [](const Triple& t) { return Edge{t.predicate, t.object}; });
  build_rows<Edge>(
      n, s.triples_, [](const Triple& t) { return t.object; }, s.in_offsets_, s.in_edges_,
      [](const Triple& t) { return Edge{t.predicate, t.subject}; });
  build_rows<Arc>(
      n, s.triples_, [](const Triple& t) { return t.predicate; }, s.pred_offsets_, s.pred_arcs_,
      [](const Triple& t) { return Arc{t.subject, t.object}; });
  return std::move(store_);
}

std::optional<ParsedStatement> parse_ntriples_line(std::string_view line, bool& blank) {
  std::size_t pos = 0;
  skip_ws(line, pos);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  blank = pos >= line.size() || line[pos] == '#';
  if (blank) return std::nullopt;

  auto s = parse_ntriples_term(line, pos);
  if (!s || s->is_literal()) return std::nullopt;
  skip_ws(line, pos);
  auto p = parse_ntriples_term(line, pos);
  if (!p || !p->is_iri()) return std::nullopt;
  skip_ws(line, pos);
  auto o = parse_ntriples_term(line, pos);
  if (!o) return std::nullopt;
  skip_ws(line, pos);
  if (pos >= line.size() || line[pos] != '.') return std::nullopt;
  ++pos;
  skip_ws(line, pos);
  if (pos < line.size() && line[pos] != '#') return std::nullopt;
  return ParsedStatement{std::move(*s), std::move(*p), std::move(*o)};
}

namespace {

std::size_t ingest_into(std::istream& in, TripleStoreBuilder& builder) {
  std::size_t skipped = 0;
  std::string line;
  while (std::getline(in, line)) {
    bool blank = false;
    auto st = parse_ntriples_line(line, blank);
    if (st) builder.add(st->subject, st->predicate, st->object);
    else if (!blank) ++skipped;
  }
  if (in.bad()) throw IngestError("read failure while ingesting N-Triples");
  return skipped;
}

IngestResult finish(TripleStoreBuilder&& builder, std::size_t skipped, const std::string& name) {
  if (builder.pending_triples() == 0)
    throw EmptyStoreError("no valid triples for knowledge base '" + name + "'");
  IngestResult r;
  r.store = std::move(builder).build();
  r.triples_loaded = r.store.triple_count();
  r.lines_skipped = skipped;
  return r;
}

}  // namespace

IngestResult ingest_ntriples(std::istream& source, std::string kb_name) {
  if (!source) throw IngestError("unreadable source for knowledge base '" + kb_name + "'");
  TripleStoreBuilder builder(kb_name);
  std::size_t skipped = ingest_into(source, builder);
  return finish(std::move(builder), skipped, kb_name);
}

IngestResult ingest_ntriples(const std::vector<std::filesystem::path>& files,
                             std::string kb_name) {
  TripleStoreBuilder builder(kb_name);
  std::size_t skipped = 0;
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open '" + path.string() + "'");
    skipped += ingest_into(in, builder);
  }
  return finish(std::move(builder), skipped, kb_name);
}

void write_ntriples(const TripleStore& store, std::ostream& out) {
  for (const Triple& t : store.triples()) {
    out << store.term(t.subject).to_ntriples() << ' ' << store.term(t.predicate).to_ntriples()
        << ' ' << store.term(t.object).to_ntriples() << " .\n";
  }
}

double relevance(const TripleStore& store, TermId t) {
  Degree d = store.degree(t);
  return static_cast<double>(d.inlinks + d.outlinks);
}

}  // namespace kgqa
