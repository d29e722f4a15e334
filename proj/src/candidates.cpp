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

#include "kgqa/candidates.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <set>

namespace kgqa {
namespace {

using SlotT = Slot<TermId>;

std::int64_t encode_slot(const SlotT& s, std::map<std::uint32_t, std::int64_t>& rename) {
  if (auto* v = std::get_if<Variable>(&s)) {
    auto [it, inserted] = rename.try_emplace(v->id, static_cast<std::int64_t>(rename.size()));
    return -(it->second + 1);
  }
  return std::get<TermId>(s).value;
}

std::vector<std::int64_t> encode(const PatternQuery& q, bool swapped) {
  std::map<std::uint32_t, std::int64_t> rename;
  std::vector<std::int64_t> key;
  key.push_back(static_cast<std::int64_t>(q.form));
  if (q.values) {
    key.push_back(encode_slot(q.values->variable, rename));
    key.push_back(q.values->term.value);
  } else {
    key.push_back(std::numeric_limits<std::int64_t>::min());
  }
  key.push_back(static_cast<std::int64_t>(q.triples.size()));
  for (std::size_t k = 0; k < q.triples.size(); ++k) {
    const TriplePattern& t = q.triples[swapped ? q.triples.size() - 1 - k : k];
    key.push_back(encode_slot(t.subject, rename));
    key.push_back(encode_slot(t.predicate, rename));
    key.push_back(encode_slot(t.object, rename));
  }
  key.push_back(q.projection ? encode_slot(*q.projection, rename)
                             : std::numeric_limits<std::int64_t>::min());
  return key;
}

const TermId* constant(const SlotT& s) { return std::get_if<TermId>(&s); }

constexpr DistanceMask kAdjacent = distance_bit(1) | distance_bit(-1);
constexpr DistanceMask kNeighbour = distance_bit(2) | distance_bit(-2);

// Collects, per unordered pair of constants, the codes realized on the
// pattern's own walks (each walk in both orientations).
class TemplateWalks {
 public:
  void add(const std::array<const SlotT*, 5>& w, std::size_t len, int sign1, int sign2) {
    visit(w, len, sign1, sign2);
    std::array<const SlotT*, 5> r{};
    for (std::size_t i = 0; i < len; ++i) r[i] = w[len - 1 - i];
    if (len == 3) visit(r, len, -sign1, 0);
    else visit(r, len, -sign2, -sign1);
  }

  bool satisfied_by(const DistanceTable& table) const {
    for (const auto& [pair, mask] : need_)
      if (!table.intersects(pair.first, pair.second, mask)) return false;
    return true;
  }

 private:
  void visit(const std::array<const SlotT*, 5>& w, std::size_t len, int sign1, int sign2) {
    for_each_walk_pair(len, sign1, sign2, [&](std::size_t i, std::size_t j, int code) {
      const TermId* a = constant(*w[i]);
      const TermId* b = constant(*w[j]);
      if (!a || !b || *a == *b) return;
      need_[std::minmax(*a, *b)] |= distance_bit(code);
    });
  }

  std::map<std::pair<TermId, TermId>, DistanceMask> need_;
};

class Generator {
 public:
  Generator(const TripleStore& store, std::span<const TermId> members, const DistanceTable& table,
            const GenerationOptions& options)
      : store_(store), table_(table), options_(options) {
    std::set<TermId> unique(members.begin(), members.end());
    for (TermId t : unique) {
      if (!store.contains_term(t)) continue;
      if (store.is_vertex(t) || store.is_predicate(t)) members_.push_back(t);
      if (store.is_vertex(t)) vertices_.push_back(t);
      if (store.is_predicate(t)) predicates_.push_back(t);
    }
  }

  std::vector<PatternQuery> run(bool* truncated) {
    for (TermId r : members_) {
      PatternQuery q;
      q.values = BasicValuesBinding<TermId>{Variable{0}, r};
      q.projection = Variable{0};
      if (!emit(std::move(q))) return finish(truncated);
    }

    std::vector<TriplePattern> singles;
    for (const SlotT& s : vertex_slots(Variable{0})) {
      for (const SlotT& p : predicate_slots(Variable{1})) {
        if (!pair_ok(s, p, kAdjacent)) continue;
        for (const SlotT& o : vertex_slots(Variable{2})) {
          if (!constant(s) && !constant(p) && !constant(o)) continue;
          if (!pair_ok(s, o, kNeighbour) || !pair_ok(p, o, kAdjacent)) continue;
          TriplePattern t{s, p, o};
          PatternQuery q;
          q.triples = {t};
          if (!store_has(q)) continue;
          singles.push_back(t);
          if (!emit_pattern(std::move(q))) return finish(truncated);
        }
      }
    }

    for (TermId r : vertices_) {
      for (TermId r1 : vertices_) {
        PatternQuery q;
        q.values = BasicValuesBinding<TermId>{Variable{0}, r};
        q.triples = {{r, Variable{1}, r1}};
        q.projection = Variable{0};
        if (!pair_ok(r, r1, kNeighbour) || !has_solution(store_, q)) continue;
        if (!emit(std::move(q))) return finish(truncated);
      }
    }

    if (options_.max_triples >= 2) {
      for (const TriplePattern& first : singles)
        if (!extend(first)) return finish(truncated);
    }
    return finish(truncated);
  }

 private:
  std::vector<PatternQuery> finish(bool* truncated) {
    if (truncated) *truncated = truncated_;
    return std::move(out_);
  }

  std::vector<SlotT> vertex_slots(Variable fresh) const {
    std::vector<SlotT> out(vertices_.begin(), vertices_.end());
    out.push_back(fresh);
    return out;
  }

  std::vector<SlotT> predicate_slots(Variable fresh) const {
    std::vector<SlotT> out(predicates_.begin(), predicates_.end());
    out.push_back(fresh);
    return out;
  }

  bool pair_ok(const SlotT& a, const SlotT& b, DistanceMask mask) const {
    if (!options_.distance_pruning) return true;
    const TermId* x = constant(a);
    const TermId* y = constant(b);
    if (!x || !y || *x == *y) return true;
    return table_.intersects(*x, *y, mask);
  }

  bool store_has(const PatternQuery& q) const { return has_solution(store_, q); }

  bool extend(const TriplePattern& first) {
    std::vector<SlotT> vs(vertices_.begin(), vertices_.end());
    for (const SlotT* s : {&first.subject, &first.object})
      if (is_variable(*s)) vs.push_back(*s);
    std::vector<SlotT> ps(predicates_.begin(), predicates_.end());
    if (is_variable(first.predicate)) ps.push_back(first.predicate);

    std::vector<SlotT> subjects = vs, objects = vs;
    subjects.push_back(Variable{3});
    objects.push_back(Variable{5});
    ps.push_back(Variable{4});

    auto in_first = [&](const SlotT& x) {
      return x == first.subject || x == first.predicate || x == first.object;
    };
    for (const SlotT& s : subjects) {
      for (const SlotT& p : ps) {
        if (!pair_ok(s, p, kAdjacent)) continue;
        for (const SlotT& o : objects) {
          if (!constant(s) && !constant(p) && !constant(o)) continue;
          if (!in_first(s) && !in_first(p) && !in_first(o)) continue;
          if (is_variable(s) && s == o) continue;
          TriplePattern second{s, p, o};
          if (second == first) continue;
          if (!pair_ok(s, o, kNeighbour) || !pair_ok(p, o, kAdjacent)) continue;
          std::array<TriplePattern, 2> both{first, second};
          if (options_.distance_pruning && !distance_consistent(both, table_)) continue;
          PatternQuery q;
          q.triples = {first, second};
          if (!seen_patterns_.insert(canonical_key(q)).second) continue;
          if (!store_has(q)) continue;
          if (!emit_all(std::move(q))) return false;
        }
      }
    }
    return true;
  }

  bool emit_pattern(PatternQuery q) {
    if (!seen_patterns_.insert(canonical_key(q)).second) return true;
    return emit_all(std::move(q));
  }

  // One SELECT per subject/object variable, then the ASK variant.
  bool emit_all(PatternQuery pattern) {
    std::vector<Variable> vars;
    for (const auto& t : pattern.triples)
      for (const SlotT* s : {&t.subject, &t.object})
        if (auto* v = std::get_if<Variable>(s))
          if (std::find(vars.begin(), vars.end(), *v) == vars.end()) vars.push_back(*v);
    for (Variable v : vars) {
      PatternQuery q = pattern;
      q.form = QueryForm::kSelect;
      q.projection = v;
      if (!emit(std::move(q))) return false;
    }
    pattern.form = QueryForm::kAsk;
    pattern.projection.reset();
    return emit(std::move(pattern));
  }

  bool emit(PatternQuery q) {
    if (out_.size() >= options_.cap) {
      truncated_ = true;
      return false;
    }
    if (seen_queries_.insert(canonical_key(q)).second) out_.push_back(std::move(q));
    return true;
  }

  const TripleStore& store_;
  const DistanceTable& table_;
  GenerationOptions options_;
  std::vector<TermId> members_;
  std::vector<TermId> vertices_;
  std::vector<TermId> predicates_;
  std::set<std::vector<std::int64_t>> seen_patterns_;
  std::set<std::vector<std::int64_t>> seen_queries_;
  std::vector<PatternQuery> out_;
  bool truncated_ = false;
};

}  // namespace

std::vector<std::int64_t> canonical_key(const PatternQuery& q) {
  auto key = encode(q, false);
  if (q.triples.size() == 2) key = std::min(key, encode(q, true));
  return key;
}

bool distance_consistent(std::span<const TriplePattern> triples, const DistanceTable& table) {
  TemplateWalks walks;
  for (const TriplePattern& t : triples)
    walks.add({&t.subject, &t.predicate, &t.object, nullptr, nullptr}, 3, +1, 0);
  for (std::size_t i = 0; i < triples.size(); ++i) {
    for (std::size_t j = i + 1; j < triples.size(); ++j) {
      const TriplePattern& a = triples[i];
      const TriplePattern& b = triples[j];
      for (bool a_ends_at_object : {true, false}) {
        const SlotT& joint = a_ends_at_object ? a.object : a.subject;
        const SlotT& a_far = a_ends_at_object ? a.subject : a.object;
        int sign1 = a_ends_at_object ? +1 : -1;
        for (bool b_starts_at_subject : {true, false}) {
          const SlotT& b_near = b_starts_at_subject ? b.subject : b.object;
          const SlotT& b_far = b_starts_at_subject ? b.object : b.subject;
          if (!(joint == b_near)) continue;
          walks.add({&a_far, &a.predicate, &joint, &b.predicate, &b_far}, 5, sign1,
                    b_starts_at_subject ? +1 : -1);
        }
      }
    }
  }
  return walks.satisfied_by(table);
}

std::vector<PatternQuery> generate_queries(const TripleStore& store, std::span<const TermId> members,
                                           const DistanceTable& table,
                                           const GenerationOptions& options, bool* truncated) {
  return Generator(store, members, table, options).run(truncated);
}

std::vector<std::size_t> consumed_matches(const TripleStore& store, const PatternQuery& q,
                                          std::span<const Match> matches) {
  std::set<TermId> constants;
  for (const auto& t : q.triples)
    for (const SlotT* s : {&t.subject, &t.predicate, &t.object})
      if (const TermId* c = constant(*s)) constants.insert(*c);
  if (q.values) constants.insert(q.values->term);

  std::set<std::size_t> chosen;
  for (TermId c : constants) {
    std::size_t best = matches.size();
    for (std::size_t i = 0; i < matches.size(); ++i) {
      const Match& m = matches[i];
      if (m.iri.kb != store.name() || m.iri.id != c) continue;
      if (best == matches.size()) {
        best = i;
        continue;
      }
      const Match& b = matches[best];
      std::size_t len = m.end - m.start, best_len = b.end - b.start;
      if (len > best_len || (len == best_len && (m.edit_distance < b.edit_distance ||
                                                 (m.edit_distance == b.edit_distance &&
                                                  m.start < b.start))))
        best = i;
    }
    if (best != matches.size()) chosen.insert(best);
  }
  return {chosen.begin(), chosen.end()};
}

CandidateSet generate_candidates(std::span<const TripleStore* const> stores,
                                 std::span<const Match> matches,
                                 std::span<const DistanceTable> tables,
                                 const GenerationOptions& options) {
  CandidateSet out;
  for (std::size_t si = 0; si < stores.size(); ++si) {
    const TripleStore& store = *stores[si];
    std::vector<TermId> members;
    for (const Match& m : matches)
      if (m.iri.kb == store.name()) members.push_back(m.iri.id);
    if (members.empty()) continue;
    GenerationOptions local = options;
    local.cap = options.cap - out.candidates.size();
    bool truncated = false;
    for (auto& q : generate_queries(store, members, tables[si], local, &truncated)) {
      Candidate c;
      c.store = si;
      c.consumed = consumed_matches(store, q, matches);
      c.query = std::move(q);
      out.candidates.push_back(std::move(c));
    }
    if (truncated || out.candidates.size() >= options.cap) {
      out.truncated = truncated;
      if (out.candidates.size() >= options.cap) break;
    }
  }
  return out;
}

}  // namespace kgqa
