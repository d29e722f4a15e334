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
#include <span>
#include <vector>

#include "kgqa/distance_table.hpp"
#include "kgqa/expansion.hpp"
#include "kgqa/pattern_query.hpp"

namespace kgqa {

struct GenerationOptions {
  std::size_t max_triples = 2;
  std::size_t cap = 10000;
  // Off only in tests comparing against the unpruned search.
  bool distance_pruning = true;
};

// Canonical encoding up to variable renaming and triple order. Two queries
// are the same candidate iff their keys are equal.
std::vector<std::int64_t> canonical_key(const PatternQuery& q);

// Whether the constants in `triples` can co-occur in the store given the
// table. Necessary for a solution to exist: every pair of distinct
// constants on a walk of the pattern must have one of that walk's codes in
// the table.
bool distance_consistent(std::span<const TriplePattern> triples, const DistanceTable& table);

// All one- and two-triple patterns over R in one store that have a
// solution, plus the VALUES forms. Every triple holds at least one member of
// R, variables within a triple are distinct, and two triples share a
// constant or a variable. Each pattern is emitted once per
// subject/object variable as SELECT and once as ASK. Smaller patterns
// come first; at most options.cap queries are returned.
std::vector<PatternQuery> generate_queries(const TripleStore& store, std::span<const TermId> members,
                                           const DistanceTable& table,
                                           const GenerationOptions& options = {},
                                           bool* truncated = nullptr);

struct Candidate {
  std::size_t store = 0;  // index into the store list
  PatternQuery query;
  std::vector<std::size_t> consumed;  // indices into the match list
};

struct CandidateSet {
  std::vector<Candidate> candidates;
  bool truncated = false;
};

// Pools the per-store candidates; stores are unconnected components.
// `tables` is parallel to `stores`. The cap applies to the pooled list.
CandidateSet generate_candidates(std::span<const TripleStore* const> stores,
                                 std::span<const Match> matches,
                                 std::span<const DistanceTable> tables,
                                 const GenerationOptions& options = {});

// Matches a candidate consumes: for every constant, the match on it with
// the longest span (then smaller edit distance, then earlier start).
std::vector<std::size_t> consumed_matches(const TripleStore& store, const PatternQuery& q,
                                          std::span<const Match> matches);

}  // namespace kgqa
