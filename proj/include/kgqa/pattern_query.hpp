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
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "kgqa/term.hpp"
#include "kgqa/triple_store.hpp"

namespace kgqa {

struct Variable {
  std::uint32_t id = 0;

  friend constexpr auto operator<=>(Variable, Variable) = default;
};

enum class QueryForm : std::uint8_t { kSelect, kAsk, kCount };

const char* to_string(QueryForm form);

// A triple-pattern position: a variable or a constant of type C. C is TermId
// for store-bound queries and Term for queries portable across stores.
template <class C>
using Slot = std::variant<Variable, C>;

template <class C>
bool is_variable(const Slot<C>& s) {
  return std::holds_alternative<Variable>(s);
}

template <class C>
struct BasicTriplePattern {
  Slot<C> subject;
  Slot<C> predicate;
  Slot<C> object;

  friend bool operator==(const BasicTriplePattern&, const BasicTriplePattern&) = default;
};

template <class C>
struct BasicValuesBinding {
  Variable variable;
  C term;

  friend bool operator==(const BasicValuesBinding&, const BasicValuesBinding&) = default;
};

// The restricted fragment the engine generates: 0..2 triple patterns
// (0 only when a VALUES binding is present), one projection variable unless
// the form is ASK.
template <class C>
struct BasicPatternQuery {
  std::vector<BasicTriplePattern<C>> triples;
  std::optional<Variable> projection;
  QueryForm form = QueryForm::kSelect;
  std::optional<BasicValuesBinding<C>> values;

  friend bool operator==(const BasicPatternQuery&, const BasicPatternQuery&) = default;
};

using TriplePattern = BasicTriplePattern<TermId>;
using PatternQuery = BasicPatternQuery<TermId>;
using PortableTriplePattern = BasicTriplePattern<Term>;
using PortableQuery = BasicPatternQuery<Term>;

// Throws ContractViolation when the query is outside the fragment:
// wrong triple count, two unconnected triples, projection missing from
// subject/object positions, or a projection on an ASK.
template <class C>
void validate(const BasicPatternQuery<C>& q);

// Number of distinct variables (subject, predicate, object and VALUES).
template <class C>
std::size_t variable_count(const BasicPatternQuery<C>& q);

struct ResultSet {
  QueryForm form = QueryForm::kSelect;
  std::vector<TermId> rows;  // SELECT: distinct projection bindings
  bool truth = false;        // ASK
  std::size_t count = 0;     // COUNT: distinct projection cardinality

  bool empty() const;
};

inline constexpr std::size_t kDefaultLimit = 1000;

ResultSet execute(const TripleStore& store, const PatternQuery& q,
                  std::size_t limit = kDefaultLimit);

// True when the triple patterns (with any VALUES binding applied) have at
// least one solution. Shortcut for non-emptiness checks.
bool has_solution(const TripleStore& store, const PatternQuery& q);

// Maps every constant to the store's dictionary; nullopt if one is absent.
std::optional<PatternQuery> resolve(const TripleStore& store, const PortableQuery& q);
PortableQuery to_portable(const TripleStore& store, const PatternQuery& q);

struct PortableResultSet {
  QueryForm form = QueryForm::kSelect;
  std::vector<Term> rows;
  bool truth = false;
  std::size_t count = 0;
};

// Evaluates over several stores as disjoint graph components: the query runs
// in every store that resolves all its constants and results are unioned.
PortableResultSet execute(std::span<const TripleStore* const> stores, const PortableQuery& q,
                          std::size_t limit = kDefaultLimit);

}  // namespace kgqa
