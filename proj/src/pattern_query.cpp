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

#include "kgqa/pattern_query.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "kgqa/errors.hpp"

namespace kgqa {

const char* to_string(QueryForm form) {
  switch (form) {
    case QueryForm::kSelect: return "SELECT";
    case QueryForm::kAsk: return "ASK";
    case QueryForm::kCount: return "COUNT";
  }
  return "?";
}

namespace {

template <class C>
bool same_slot(const Slot<C>& a, const Slot<C>& b) {
  return a == b;
}

template <class C>
bool occurs_as_vertex(const BasicTriplePattern<C>& t, Variable v) {
  Slot<C> s = v;
  return same_slot(t.subject, s) || same_slot(t.object, s);
}

template <class C>
bool share_any(const BasicTriplePattern<C>& a, const BasicTriplePattern<C>& b) {
  for (const Slot<C>* x : {&a.subject, &a.predicate, &a.object})
    for (const Slot<C>* y : {&b.subject, &b.predicate, &b.object})
      if (*x == *y) return true;
  return false;
}

}  // namespace

template <class C>
void validate(const BasicPatternQuery<C>& q) {
  const std::size_t n = q.triples.size();
  if (n > 2) throw ContractViolation("query has more than two triple patterns");
  if (n == 0 && !q.values) throw ContractViolation("query has no triple pattern");
  if (n == 2 && !share_any(q.triples[0], q.triples[1]))
    throw ContractViolation("triple patterns are not connected");
  if (q.form == QueryForm::kAsk) {
    if (q.projection) throw ContractViolation("ASK query carries a projection");
    return;
  }
  if (!q.projection) throw ContractViolation("SELECT/COUNT query without projection");
  Variable v = *q.projection;
  bool found = q.values && q.values->variable == v;
  for (const auto& t : q.triples) found = found || occurs_as_vertex(t, v);
  if (!found)
    throw ContractViolation("projection variable does not occur in subject/object position");
}

template <class C>
std::size_t variable_count(const BasicPatternQuery<C>& q) {
  std::set<std::uint32_t> vars;
  for (const auto& t : q.triples)
    for (const Slot<C>* s : {&t.subject, &t.predicate, &t.object})
      if (auto* v = std::get_if<Variable>(s)) vars.insert(v->id);
  if (q.values) vars.insert(q.values->variable.id);
  return vars.size();
}

template void validate(const BasicPatternQuery<TermId>&);
template void validate(const BasicPatternQuery<Term>&);
template std::size_t variable_count(const BasicPatternQuery<TermId>&);
template std::size_t variable_count(const BasicPatternQuery<Term>&);

bool ResultSet::empty() const {
  switch (form) {
    case QueryForm::kAsk: return !truth;
    case QueryForm::kCount: return count == 0;
    case QueryForm::kSelect: return rows.empty();
  }
  return true;
}

namespace {

// Backtracking nested-loop join over at most two patterns using the
// cheapest adjacency available for the already-bound positions.
class Evaluator {
 public:
  Evaluator(const TripleStore& store, const PatternQuery& q) : store_(store), q_(q) {
    std::uint32_t max_id = 0;
    for (const auto& t : q.triples)
      for (const Slot<TermId>* s : {&t.subject, &t.predicate, &t.object})
        if (auto* v = std::get_if<Variable>(s)) max_id = std::max(max_id, v->id + 1);
    if (q.projection) max_id = std::max(max_id, q.projection->id + 1);
    if (q.values) max_id = std::max(max_id, q.values->variable.id + 1);
    binding_.assign(max_id, std::nullopt);
    if (q.values) binding_[q.values->variable.id] = q.values->term;
  }

  // Calls emit for each solution; emit returns false to stop enumeration.
  template <class F>
  bool solve(std::size_t i, F& emit) {
    if (i == q_.triples.size()) return emit(binding_);
    const TriplePattern& t = q_.triples[i];
    auto s = value(t.subject), p = value(t.predicate), o = value(t.object);
    auto visit = [&](TermId vs, TermId vp, TermId vo) {
      std::uint32_t undo[3];
      int n_undo = 0;
      bool ok = bind(t.subject, vs, undo, n_undo) && bind(t.predicate, vp, undo, n_undo) &&
                bind(t.object, vo, undo, n_undo);
      bool keep_going = true;
      if (ok) keep_going = solve(i + 1, emit);
      for (int k = 0; k < n_undo; ++k) binding_[undo[k]].reset();
      return keep_going;
    };
    if (s) {
      for (const Edge& e : with_predicate(store_.out_edges(*s), p))
        if (!o || e.other == *o)
          if (!visit(*s, e.predicate, e.other)) return false;
    } else if (o) {
      for (const Edge& e : with_predicate(store_.in_edges(*o), p))
        if (!visit(e.other, e.predicate, *o)) return false;
    } else if (p) {
      for (const Arc& a : store_.predicate_arcs(*p))
        if (!visit(a.subject, *p, a.object)) return false;
    } else {
      for (const Triple& tr : store_.triples())
        if (!visit(tr.subject, tr.predicate, tr.object)) return false;
    }
    return true;
  }

 private:
  std::optional<TermId> value(const Slot<TermId>& s) const {
    if (auto* v = std::get_if<Variable>(&s)) return binding_[v->id];
    return std::get<TermId>(s);
  }

  bool bind(const Slot<TermId>& s, TermId value, std::uint32_t* undo, int& n_undo) {
    if (auto* v = std::get_if<Variable>(&s)) {
      auto& b = binding_[v->id];
      if (b) return *b == value;
      b = value;
      undo[n_undo++] = v->id;
      return true;
    }
    return std::get<TermId>(s) == value;
  }

  static std::span<const Edge> with_predicate(std::span<const Edge> row,
                                              std::optional<TermId> p) {
    if (!p) return row;
    auto lo = std::lower_bound(row.begin(), row.end(), Edge{*p, TermId{0}});
    auto hi = std::lower_bound(lo, row.end(), Edge{TermId{p->value + 1}, TermId{0}});
    return row.subspan(static_cast<std::size_t>(lo - row.begin()),
                       static_cast<std::size_t>(hi - lo));
  }

  const TripleStore& store_;
  const PatternQuery& q_;
  std::vector<std::optional<TermId>> binding_;
};

}  // namespace

ResultSet execute(const TripleStore& store, const PatternQuery& q, std::size_t limit) {
  validate(q);
  if (limit == 0) throw ContractViolation("limit must be at least 1");
  ResultSet r;
  r.form = q.form;
  Evaluator ev(store, q);
  if (q.form == QueryForm::kAsk) {
    auto emit = [&](const auto&) {
      r.truth = true;
      return false;
    };
    ev.solve(0, emit);
    return r;
  }
  const std::uint32_t proj = q.projection->id;
  std::unordered_set<TermId> seen;
  auto emit = [&](const std::vector<std::optional<TermId>>& b) {
    TermId v = *b[proj];
    if (seen.insert(v).second && q.form == QueryForm::kSelect) {
      r.rows.push_back(v);
      if (r.rows.size() >= limit) return false;
    }
    return true;
  };
  ev.solve(0, emit);
  if (q.form == QueryForm::kCount) r.count = seen.size();
  return r;
}

bool has_solution(const TripleStore& store, const PatternQuery& q) {
  Evaluator ev(store, q);
  bool found = false;
  auto emit = [&](const auto&) {
    found = true;
    return false;
  };
  ev.solve(0, emit);
  return found;
}

namespace {

template <class From, class To, class F>
BasicPatternQuery<To> map_constants(const BasicPatternQuery<From>& q, F&& f, bool& ok) {
  auto slot = [&](const Slot<From>& s) -> Slot<To> {
    if (auto* v = std::get_if<Variable>(&s)) return *v;
    auto mapped = f(std::get<From>(s));
    if (!mapped) {
      ok = false;
      return Variable{0};
    }
    return *mapped;
  };
  BasicPatternQuery<To> out;
  out.form = q.form;
  out.projection = q.projection;
  for (const auto& t : q.triples)
    out.triples.push_back({slot(t.subject), slot(t.predicate), slot(t.object)});
  if (q.values) {
    auto mapped = f(q.values->term);
    if (!mapped) ok = false;
    else out.values = BasicValuesBinding<To>{q.values->variable, *mapped};
  }
  return out;
}

}  // namespace

std::optional<PatternQuery> resolve(const TripleStore& store, const PortableQuery& q) {
  bool ok = true;
  auto out = map_constants<Term, TermId>(q, [&](const Term& t) { return store.find(t); }, ok);
  if (!ok) return std::nullopt;
  return out;
}

PortableQuery to_portable(const TripleStore& store, const PatternQuery& q) {
  bool ok = true;
  return map_constants<TermId, Term>(
      q, [&](TermId id) { return std::optional<Term>(store.term(id)); }, ok);
}

PortableResultSet execute(std::span<const TripleStore* const> stores, const PortableQuery& q,
                          std::size_t limit) {
  validate(q);
  if (limit == 0) throw ContractViolation("limit must be at least 1");
  PortableResultSet out;
  out.form = q.form;
  std::set<std::string> seen;
  for (const TripleStore* store : stores) {
    auto local = resolve(*store, q);
    if (!local) continue;
    const bool counting = q.form == QueryForm::kCount;
    if (counting) local->form = QueryForm::kSelect;
    ResultSet r = execute(*store, *local, counting ? static_cast<std::size_t>(-1) : limit);
    if (q.form == QueryForm::kAsk) {
      out.truth = out.truth || r.truth;
      continue;
    }
    for (TermId id : r.rows) {
      const Term& t = store->term(id);
      if (seen.insert(t.to_ntriples()).second) {
        if (counting || out.rows.size() < limit) out.rows.push_back(t);
      }
    }
  }
  if (q.form == QueryForm::kCount) {
    out.count = out.rows.size();
    out.rows.clear();
  }
  return out;
}

}  // namespace kgqa
