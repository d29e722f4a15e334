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

#include <random>
#include <set>

#include "doctest.h"
#include "kgqa/distance_table.hpp"
#include "oracle.hpp"

using namespace kgqa;

namespace {

std::set<int> codes(const DistanceTable& t, TermId a, TermId b) {
  auto v = decode_distances(t.mask(a, b));
  return {v.begin(), v.end()};
}

bool equals_oracle(const TripleStore& s, const std::set<TermId>& members) {
  std::vector<TermId> r(members.begin(), members.end());
  auto table = compute_distances(s, r);
  std::vector<Triple> triples(s.triples().begin(), s.triples().end());
  auto expect = testing::walk_distances(triples, members);
  std::map<std::pair<TermId, TermId>, std::set<int>> got;
  for (const auto& [pair, mask] : table.entries()) {
    auto v = decode_distances(mask);
    got[pair] = {v.begin(), v.end()};
  }
  return got == expect;
}

}  // namespace

TEST_SUITE("distance") {
  TEST_CASE("mask encoding round trips every code") {
    for (int v : {-4, -3, -2, -1, 1, 2, 3, 4}) {
      CHECK(decode_distances(distance_bit(v)) == std::vector<int>{v});
    }
    DistanceTable t;
    t.insert(TermId{1}, TermId{2}, -3);
    CHECK(t.contains(TermId{1}, TermId{2}, -3));
    CHECK_FALSE(t.contains(TermId{1}, TermId{2}, 3));
    CHECK(t.mask(TermId{5}, TermId{6}) == 0);
  }

  TEST_CASE("forward chain gives +1 to +4") {
    TripleStoreBuilder b("chain");
    b.add(Term::iri("urn:r"), Term::iri("urn:p1"), Term::iri("urn:r1"));
    b.add(Term::iri("urn:r1"), Term::iri("urn:p2"), Term::iri("urn:r2"));
    auto s = std::move(b).build();
    auto id = [&](const char* x) { return *s.find_iri(x); };
    std::vector<TermId> r{id("urn:r"), id("urn:p1"), id("urn:r1"), id("urn:p2"), id("urn:r2")};
    auto t = compute_distances(s, r);
    CHECK(t.contains(id("urn:r"), id("urn:p1"), 1));
    CHECK(t.contains(id("urn:r"), id("urn:r1"), 2));
    CHECK(t.contains(id("urn:r"), id("urn:p2"), 3));
    CHECK(t.contains(id("urn:r"), id("urn:r2"), 4));
    CHECK(t.contains(id("urn:p1"), id("urn:p2"), 2));
    CHECK(t.contains(id("urn:r1"), id("urn:p2"), 1));
    // symmetric closure
    CHECK(t.mask(id("urn:r2"), id("urn:r")) == t.mask(id("urn:r"), id("urn:r2")));
    CHECK(equals_oracle(s, {r.begin(), r.end()}));
  }

  TEST_CASE("opposed second edge gives -3") {
    TripleStoreBuilder b("opposed");
    b.add(Term::iri("urn:r"), Term::iri("urn:p1"), Term::iri("urn:r1"));
    b.add(Term::iri("urn:r2"), Term::iri("urn:p2"), Term::iri("urn:r1"));
    auto s = std::move(b).build();
    auto id = [&](const char* x) { return *s.find_iri(x); };
    std::vector<TermId> r{id("urn:r"), id("urn:p2")};
    auto t = compute_distances(s, r);
    CHECK(t.contains(id("urn:r"), id("urn:p2"), -3));
    CHECK_FALSE(t.contains(id("urn:r"), id("urn:p2"), 3));
    std::vector<TermId> all{id("urn:r"), id("urn:p1"), id("urn:r2"), id("urn:p2")};
    auto u = compute_distances(s, all);
    CHECK(u.contains(id("urn:r"), id("urn:r2"), -4));
    CHECK(u.contains(id("urn:p1"), id("urn:p2"), -2));
    CHECK(u.contains(id("urn:p1"), id("urn:r2"), -3));
  }

  TEST_CASE("predicate pairs are found without any vertex in R") {
    TripleStoreBuilder b("preds");
    b.add(Term::iri("urn:x"), Term::iri("urn:p"), Term::iri("urn:y"));
    b.add(Term::iri("urn:y"), Term::iri("urn:q"), Term::iri("urn:z"));
    auto s = std::move(b).build();
    auto p = *s.find_iri("urn:p"), q = *s.find_iri("urn:q");
    std::vector<TermId> r{p, q};
    auto t = compute_distances(s, r);
    CHECK(t.contains(p, q, 2));
    CHECK(equals_oracle(s, {p, q}));
  }

  TEST_CASE("walk enumeration oracle on random stores") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 150; ++round) {
      testing::RandomStoreShape shape{6 + rng() % 20, 1 + rng() % 5, 5 + rng() % 80, rng() % 2 == 0};
      auto s = testing::random_store(rng, shape);
      auto members = testing::random_members(rng, s, 8);
      CHECK_MESSAGE(equals_oracle(s, members), "round " << round);
    }
  }

  TEST_CASE("each store gets its own table") {
    TripleStoreBuilder b1("one"), b2("two");
    b1.add(Term::iri("urn:a"), Term::iri("urn:p"), Term::iri("urn:b"));
    b2.add(Term::iri("urn:a"), Term::iri("urn:p"), Term::iri("urn:c"));
    b2.add(Term::iri("urn:c"), Term::iri("urn:p"), Term::iri("urn:b"));
    auto s1 = std::move(b1).build();
    auto s2 = std::move(b2).build();
    std::vector<const TripleStore*> stores{&s1, &s2};
    std::vector<IriRef> members;
    for (const auto* s : stores)
      for (const char* iri : {"urn:a", "urn:b"})
        members.push_back({s->name(), *s->find_iri(iri), iri});
    auto tables = compute_distances(stores, members);
    REQUIRE(tables.size() == 2);
    auto a1 = *s1.find_iri("urn:a"), b1id = *s1.find_iri("urn:b");
    auto a2 = *s2.find_iri("urn:a"), b2id = *s2.find_iri("urn:b");
    CHECK(codes(tables[0], a1, b1id) == std::set<int>{-2, 2});
    CHECK(codes(tables[1], a2, b2id) == std::set<int>{-4, 4});
  }
}
