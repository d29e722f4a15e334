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

#include "kgqa/distance_table.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "kgqa/errors.hpp"

namespace kgqa {

std::vector<int> decode_distances(DistanceMask mask) {
  std::vector<int> out;
  for (int v : {-4, -3, -2, -1, 1, 2, 3, 4})
    if (mask & distance_bit(v)) out.push_back(v);
  return out;
}

void DistanceTable::insert(TermId a, TermId b, int value) {
  entries_[{a, b}] |= distance_bit(value);
  entries_[{b, a}] |= distance_bit(value);
}

DistanceMask DistanceTable::mask(TermId a, TermId b) const {
  auto it = entries_.find({a, b});
  return it == entries_.end() ? DistanceMask{0} : it->second;
}

namespace {

class Recorder {
 public:
  Recorder(const TripleStore& store, std::span<const TermId> members)
      : store_(store), members_(members.begin(), members.end()) {}

  DistanceTable run() {
    std::vector<TermId> sorted(members_.begin(), members_.end());
    std::sort(sorted.begin(), sorted.end());
    for (TermId x : sorted) {
      if (store_.is_vertex(x)) {
        for (const Edge& e : store_.out_edges(x)) extend(x, e.predicate, e.other, +1);
        for (const Edge& e : store_.in_edges(x)) extend(x, e.predicate, e.other, -1);
      }
      if (store_.is_predicate(x)) {
        for (const Arc& a : store_.predicate_arcs(x)) {
          extend(a.subject, x, a.object, +1);
          extend(a.object, x, a.subject, -1);
        }
      }
    }
    return std::move(table_);
  }

 private:
  // Records the one-edge walk start-pred-far, then every two-edge walk
  // continuing from `far`.
  void extend(TermId start, TermId pred, TermId far, int sign1) {
    std::array<TermId, 5> w{start, pred, far, {}, {}};
    record(w, 3, sign1, 0);
    for (const Edge& e : store_.out_edges(far)) {
      w[3] = e.predicate;
      w[4] = e.other;
      record(w, 5, sign1, +1);
    }
    for (const Edge& e : store_.in_edges(far)) {
      w[3] = e.predicate;
      w[4] = e.other;
      record(w, 5, sign1, -1);
    }
  }

  void record(const std::array<TermId, 5>& w, std::size_t len, int sign1, int sign2) {
    for_each_walk_pair(len, sign1, sign2, [&](std::size_t i, std::size_t j, int code) {
      if (w[i] == w[j] || !members_.contains(w[i]) || !members_.contains(w[j])) return;
      table_.insert(w[i], w[j], code);
    });
  }

  const TripleStore& store_;
  std::unordered_set<TermId> members_;
  DistanceTable table_;
};

}  // namespace

DistanceTable compute_distances(const TripleStore& store, std::span<const TermId> members) {
  for (TermId t : members)
    if (!store.contains_term(t))
      throw ResolutionError("term id " + std::to_string(t.value) + " not in store '" +
                            store.name() + "'");
  return Recorder(store, members).run();
}

std::vector<DistanceTable> compute_distances(std::span<const TripleStore* const> stores,
                                             std::span<const IriRef> members) {
  std::vector<std::vector<TermId>> per_store(stores.size());
  for (const IriRef& m : members) {
    auto it = std::find_if(stores.begin(), stores.end(),
                           [&](const TripleStore* s) { return s->name() == m.kb; });
    if (it == stores.end())
      throw ResolutionError("<" + m.iri + "> belongs to no selected knowledge base");
    per_store[static_cast<std::size_t>(it - stores.begin())].push_back(m.id);
  }
  std::vector<DistanceTable> out;
  for (std::size_t i = 0; i < stores.size(); ++i)
    out.push_back(compute_distances(*stores[i], per_store[i]));
  return out;
}

}  // namespace kgqa
