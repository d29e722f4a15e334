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

#include "kgqa/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "kgqa/errors.hpp"
#include "kgqa/text.hpp"

namespace kgqa {

const char* to_string(Role role) {
  switch (role) {
    case Role::kEntity: return "entity";
    case Role::kProperty: return "property";
    case Role::kClass: return "class";
  }
  return "entity";
}

std::optional<Role> parse_role(std::string_view s) {
  if (s == "entity") return Role::kEntity;
  if (s == "property") return Role::kProperty;
  if (s == "class") return Role::kClass;
  return std::nullopt;
}

std::string Lexicon::posting_key(std::string_view language, std::string_view key) {
  std::string out(language);
  out.push_back('\t');
  out.append(key);
  return out;
}

bool Lexicon::add(LexiconEntry entry) {
  if (entry.surface_stemmed.empty()) return false;
  std::string unique = posting_key(entry.language, entry.surface_stemmed) + '\t' + entry.iri.kb +
                       '\t' + std::to_string(entry.iri.id.value);
  if (!unique_.insert(std::move(unique)).second) return false;
  postings_[posting_key(entry.language, entry.surface_stemmed)].push_back(
      static_cast<std::uint32_t>(entries_.size()));
  entries_.push_back(std::move(entry));
  return true;
}

void Lexicon::merge(const Lexicon& other) {
  for (const auto& e : other.entries_) add(e);
}

std::vector<const LexiconEntry*> Lexicon::find(std::string_view key,
                                               std::string_view language) const {
  std::vector<const LexiconEntry*> out;
  auto it = postings_.find(posting_key(language, key));
  if (it == postings_.end()) return out;
  for (std::uint32_t i : it->second) out.push_back(&entries_[i]);
  return out;
}

namespace {

std::vector<TermId> resolve_all(const TripleStore& store, std::span<const std::string> iris) {
  std::vector<TermId> out;
  for (const auto& iri : iris)
    if (auto id = store.find_iri(iri)) out.push_back(*id);
  return out;
}

bool declares(const LabelPredicate& lp, std::string_view language) {
  return std::find(lp.languages.begin(), lp.languages.end(), language) != lp.languages.end();
}

}  // namespace

Role infer_role(const TripleStore& store, TermId id, std::span<const TermId> type_predicates) {
  if (store.is_predicate(id)) return Role::kProperty;
  for (const Edge& e : store.in_edges(id))
    if (std::find(type_predicates.begin(), type_predicates.end(), e.predicate) !=
        type_predicates.end())
      return Role::kClass;
  return Role::kEntity;
}

BuildOutcome build_lexicon(const TripleStore& store, const LabelConfig& config,
                           const LanguagePacks& packs) {
  if (config.label_predicates.empty())
    throw ConfigError("no label predicate configured for knowledge base '" + store.name() + "'");
  BuildOutcome out;
  auto types = resolve_all(store, config.type_predicates);
  for (const LabelPredicate& lp : config.label_predicates) {
    auto pid = store.find_iri(lp.iri);
    if (!pid || !store.is_predicate(*pid)) {
      out.warnings.push_back("label predicate <" + lp.iri + "> absent from '" + store.name() + "'");
      continue;
    }
    for (const std::string& lang : lp.languages) {
      if (packs.find(lang) == packs.end())
        throw ConfigError("label predicate <" + lp.iri + "> declares unknown language '" + lang +
                          "'");
    }
    for (const Arc& arc : store.predicate_arcs(*pid)) {
      const Term& subject = store.term(arc.subject);
      const Term& label = store.term(arc.object);
      if (!subject.is_iri() || !label.is_literal()) continue;
      auto tokens = tokenize(label.value);
      if (tokens.empty()) continue;
      Role role = infer_role(store, arc.subject, types);
      double rel = relevance(store, arc.subject);
      auto emit = [&](const std::string& lang) {
        const LanguagePack& pack = packs.find(lang)->second;
        out.lexicon.add({pack.key(tokens), IriRef{store.name(), arc.subject, subject.value}, role,
                         lang, rel, lp.iri, label.value});
      };
      if (!label.language.empty()) {
        // "en-gb" feeds "en".
        std::string primary = label.language.substr(0, label.language.find('-'));
        if (declares(lp, primary)) emit(primary);
      } else {
        for (const std::string& lang : lp.languages) emit(lang);
      }
    }
  }
  if (out.lexicon.empty())
    throw BuildError("lexicon for knowledge base '" + store.name() + "' is empty");
  return out;
}

namespace {

class DisjointSets {
 public:
  std::size_t make() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Lexicon transfer_via_sameas(const Lexicon& lexicon, std::span<const SameAsLink> links,
                            std::span<const TripleStore* const> stores,
                            std::vector<std::string>* warnings) {
  Lexicon out = lexicon;
  if (links.empty()) return out;

  std::map<IriRef, std::size_t> node_of;
  std::vector<IriRef> nodes;
  DisjointSets sets;
  auto refs_for = [&](const std::string& iri) {
    std::vector<std::size_t> ids;
    for (const TripleStore* s : stores) {
      auto id = s->find_iri(iri);
      if (!id) continue;
      IriRef ref{s->name(), *id, iri};
      auto [it, inserted] = node_of.try_emplace(ref, nodes.size());
      if (inserted) {
        nodes.push_back(ref);
        sets.make();
      }
      ids.push_back(it->second);
    }
    return ids;
  };
  for (const auto& [a, b] : links) {
    auto ra = refs_for(a), rb = refs_for(b);
    if (ra.empty() || rb.empty()) {
      if (warnings)
        warnings->push_back("sameAs link <" + a + "> <" + b + "> has a dangling endpoint");
      continue;
    }
    for (std::size_t x : ra)
      for (std::size_t y : rb) sets.unite(x, y);
    for (std::size_t x : ra) sets.unite(x, ra.front());
  }
  if (nodes.empty()) return out;

  // Surfaces per component, collected from the original lexicon only.
  std::map<std::size_t, std::vector<const LexiconEntry*>> by_component;
  for (const LexiconEntry& e : lexicon.entries()) {
    auto it = node_of.find(e.iri);
    if (it != node_of.end()) by_component[sets.find(it->second)].push_back(&e);
  }
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    auto comp = by_component.find(sets.find(n));
    if (comp == by_component.end()) continue;
    const IriRef& target = nodes[n];
    const TripleStore* store = nullptr;
    for (const TripleStore* s : stores)
      if (s->name() == target.kb) store = s;
    double rel = relevance(*store, target.id);
    for (const LexiconEntry* e : comp->second) {
      if (e->iri == target) continue;
      out.add({e->surface_stemmed, target, e->role, e->language, rel, std::string(kSourceSameAs),
               e->label});
    }
  }
  return out;
}

namespace {

std::vector<std::string_view> sentences(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool end = (c == '.' || c == '!' || c == '?') &&
               (i + 1 == text.size() || text[i + 1] == ' ' || text[i + 1] == '\n');
    if (end || c == '\n') {
      if (i > start) out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (start < text.size()) out.push_back(text.substr(start));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> labels_of(const TripleStore& store, TermId id,
                                   std::span<const TermId> label_predicates) {
  std::set<std::string> out;
  for (const Edge& e : store.out_edges(id)) {
    if (std::find(label_predicates.begin(), label_predicates.end(), e.predicate) ==
        label_predicates.end())
      continue;
    const Term& t = store.term(e.other);
    if (t.is_literal() && !t.value.empty()) out.insert(t.value);
  }
  return {out.begin(), out.end()};
}

}  // namespace

std::vector<MinedSegment> mine_property_lexicalizations(const TripleStore& store, TermId property,
                                                        std::span<const CorpusDocument> corpus,
                                                        std::size_t top_k,
                                                        const LabelConfig& config) {
  std::vector<MinedSegment> ranked;
  if (corpus.empty() || top_k == 0) return ranked;
  std::vector<std::string> label_iris;
  for (const auto& lp : config.label_predicates) label_iris.push_back(lp.iri);
  auto label_preds = resolve_all(store, label_iris);

  std::vector<std::string_view> all_sentences;
  for (const auto& doc : corpus)
    for (auto s : sentences(doc.text)) all_sentences.push_back(s);

  std::vector<std::set<std::string>> found(all_sentences.size());
  for (const Arc& arc : store.predicate_arcs(property)) {
    auto lx = labels_of(store, arc.subject, label_preds);
    auto ly = labels_of(store, arc.object, label_preds);
    if (store.term(arc.object).is_literal()) ly.push_back(store.term(arc.object).value);
    for (std::size_t si = 0; si < all_sentences.size(); ++si) {
      std::string_view sentence = all_sentences[si];
      for (const auto& x : lx) {
        auto i = sentence.find(x);
        if (i == std::string_view::npos) continue;
        for (const auto& y : ly) {
          auto j = sentence.find(y);
          if (j == std::string_view::npos) continue;
          std::string_view seg;
          if (i + x.size() <= j) seg = sentence.substr(i + x.size(), j - i - x.size());
          else if (j + y.size() <= i) seg = sentence.substr(j + y.size(), i - j - y.size());
          seg = trim(seg);
          if (!seg.empty()) found[si].insert(std::string(seg));
        }
      }
    }
  }
  std::map<std::string, std::size_t> freq;
  for (const auto& segs : found)
    for (const auto& s : segs) ++freq[s];
  for (auto& [text, n] : freq) ranked.push_back({text, n});
  std::sort(ranked.begin(), ranked.end(), [](const MinedSegment& a, const MinedSegment& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    if (a.text.size() != b.text.size()) return a.text.size() < b.text.size();
    return a.text < b.text;
  });
  if (ranked.size() > top_k) ranked.resize(top_k);
  return ranked;
}

void add_mined(Lexicon& lexicon, const TripleStore& store, TermId property,
               std::span<const MinedSegment> segments, const LanguagePack& pack) {
  const Term& p = store.term(property);
  double rel = relevance(store, property);
  for (const auto& seg : segments) {
    auto tokens = tokenize(seg.text);
    if (tokens.empty()) continue;
    lexicon.add({pack.key(tokens), IriRef{store.name(), property, p.value}, Role::kProperty,
                 pack.language, rel, std::string(kSourceMined), seg.text});
  }
}

std::vector<LexiconHit> lookup(const Lexicon& lexicon, std::span<const std::string> ngram,
                               const LanguagePack& pack) {
  std::vector<LexiconHit> out;
  if (ngram.empty()) return out;
  std::vector<std::string> tokens;
  for (const auto& t : ngram)
    for (auto& piece : tokenize(t)) tokens.push_back(std::move(piece));
  if (tokens.empty()) return out;
  for (const LexiconEntry* e : lexicon.find(pack.key(tokens), pack.language))
    out.push_back({e->iri, e->role, e->relevance, e->label});
  return out;
}

namespace {

std::string escape_field(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '\t') out += "\\t";
    else if (c == '\n') out += "\\n";
    else if (c == '\\') out += "\\\\";
    else out.push_back(c);
  }
  return out;
}

std::string unescape_field(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      char n = s[++i];
      out.push_back(n == 't' ? '\t' : n == 'n' ? '\n' : n);
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? line.npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace

void write_snapshot(const Lexicon& lexicon, std::ostream& out) {
  char rel[64];
  for (const LexiconEntry& e : lexicon.entries()) {
    std::snprintf(rel, sizeof rel, "%.17g", e.relevance);
    out << escape_field(e.surface_stemmed) << '\t' << escape_field(e.iri.kb) << '\t'
        << escape_field(e.iri.iri) << '\t' << to_string(e.role) << '\t' << e.language << '\t'
        << rel << '\t' << escape_field(e.source) << '\t' << escape_field(e.label) << '\n';
  }
}

Lexicon read_snapshot(std::istream& in, std::span<const TripleStore* const> stores) {
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = split_tabs(line);
    auto fail = [&](const std::string& why) {
      return ParseError("lexicon snapshot line " + std::to_string(line_no) + ": " + why);
    };
    if (f.size() < 7 || f.size() > 8) throw fail("expected 7 or 8 fields");
    std::string kb = unescape_field(f[1]);
    std::string iri = unescape_field(f[2]);
    const TripleStore* store = nullptr;
    for (const TripleStore* s : stores)
      if (s->name() == kb) store = s;
    if (!store) throw fail("unknown knowledge base '" + kb + "'");
    auto id = store->find_iri(iri);
    if (!id) throw fail("IRI <" + iri + "> not in '" + kb + "'");
    auto role = parse_role(f[3]);
    if (!role) throw fail("bad role");
    double rel = 0;
    try {
      rel = std::stod(std::string(f[5]));
    } catch (const std::exception&) {
      throw fail("bad relevance");
    }
    lex.add({unescape_field(f[0]), IriRef{kb, *id, iri}, *role, std::string(f[4]), rel,
             unescape_field(f[6]), f.size() == 8 ? unescape_field(f[7]) : std::string()});
  }
  return lex;
}

}  // namespace kgqa
