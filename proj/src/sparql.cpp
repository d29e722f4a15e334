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

#include "kgqa/sparql.hpp"

#include <map>

namespace kgqa {
namespace {

class Namer {
 public:
  void note(const Slot<Term>& s, bool predicate) {
    const auto* v = std::get_if<Variable>(&s);
    if (!v || names_.contains(v->id)) return;
    std::size_t& n = predicate ? predicates_ : vertices_;
    static constexpr const char* kVertex[] = {"x", "y", "z", "w"};
    static constexpr const char* kPredicate[] = {"p", "q"};
    std::string name;
    if (predicate && n < 2) name = kPredicate[n];
    else if (!predicate && n < 4) name = kVertex[n];
    else name = std::string(predicate ? "p" : "v") + std::to_string(n);
    ++n;
    names_.emplace(v->id, "?" + name);
  }

  std::string operator()(const Slot<Term>& s) const {
    if (const auto* v = std::get_if<Variable>(&s)) return names_.at(v->id);
    return std::get<Term>(s).to_ntriples();
  }

  std::string operator()(Variable v) const { return names_.at(v.id); }

 private:
  std::map<std::uint32_t, std::string> names_;
  std::size_t vertices_ = 0;
  std::size_t predicates_ = 0;
};

}  // namespace

std::string to_sparql(const PortableQuery& q) {
  Namer name;
  if (q.values) name.note(q.values->variable, false);
  for (const auto& t : q.triples) {
    name.note(t.subject, false);
    name.note(t.predicate, true);
    name.note(t.object, false);
  }

  std::string out;
  switch (q.form) {
    case QueryForm::kAsk:
      out = "ASK WHERE {";
      break;
    case QueryForm::kCount:
      out = "SELECT (COUNT(DISTINCT " + name(*q.projection) + ") AS ?c) WHERE {";
      break;
    case QueryForm::kSelect:
      out = "SELECT DISTINCT " + name(*q.projection) + " WHERE {";
      break;
  }
  if (q.values)
    out += " VALUES " + name(q.values->variable) + " { " + q.values->term.to_ntriples() + " }";
  for (const auto& t : q.triples)
    out += " " + name(t.subject) + " " + name(t.predicate) + " " + name(t.object) + " .";
  out += " }";
  return out;
}

std::string to_sparql(const TripleStore& store, const PatternQuery& q) {
  return to_sparql(to_portable(store, q));
}

}  // namespace kgqa
