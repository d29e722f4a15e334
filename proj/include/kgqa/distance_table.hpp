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
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "kgqa/lexicon.hpp"
#include "kgqa/triple_store.hpp"

namespace kgqa {

// Signed position codes in {±1, ±2, ±3, ±4} packed into one byte:
// bit v-1 for +v, bit 3+v for -v.
using DistanceMask = std::uint8_t;

constexpr DistanceMask distance_bit(int value) {
  return value > 0 ? DistanceMask(1u << (value - 1)) : DistanceMask(1u << (3 - value));
}

std::vector<int> decode_distances(DistanceMask mask);

// Codes for every pair of elements on an oriented walk of one or two edges.
// `elements` has 3 or 5 entries (vertex, predicate, vertex[, predicate,
// vertex]); sign1/sign2 are +1 when the edge is traversed subject->object.
// For an earlier element at position i and a later one at j the code is
// sign(edge of j) * (j - i). visit(i, j, code) is called for each i < j.
template <class F>
void for_each_walk_pair(std::size_t length, int sign1, int sign2, F&& visit) {
  for (std::size_t i = 0; i < length; ++i)
    for (std::size_t j = i + 1; j < length; ++j)
      visit(i, j, (j <= 2 ? sign1 : sign2) * static_cast<int>(j - i));
}

// Multivalued signed distances between members of a matched set R within
// one store, with symmetric closure D(a, b) = D(b, a).
class DistanceTable {
 public:
  void insert(TermId a, TermId b, int value);
  DistanceMask mask(TermId a, TermId b) const;
  bool contains(TermId a, TermId b, int value) const {
    return (mask(a, b) & distance_bit(value)) != 0;
  }
  bool intersects(TermId a, TermId b, DistanceMask m) const { return (mask(a, b) & m) != 0; }

  const std::map<std::pair<TermId, TermId>, DistanceMask>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const DistanceTable&, const DistanceTable&) = default;

 private:
  std::map<std::pair<TermId, TermId>, DistanceMask> entries_;
};

// Breadth-first search of depth two around every member of R (vertices
// through their incident edges, predicates through their arcs), both edge
// directions. Walks may traverse the same edge twice. Throws
// ResolutionError for ids outside the store.
DistanceTable compute_distances(const TripleStore& store, std::span<const TermId> members);

// One table per store for the members located in it. Throws
// ResolutionError for a member whose kb is not among `stores`.
std::vector<DistanceTable> compute_distances(std::span<const TripleStore* const> stores,
                                             std::span<const IriRef> members);

}  // namespace kgqa
