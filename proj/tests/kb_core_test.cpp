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

#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "kgqa/errors.hpp"
#include "kgqa/triple_store.hpp"
#include "oracle.hpp"

using namespace kgqa;

namespace {

TripleStore tiny() {
  TripleStoreBuilder b("tiny");
  b.add(Term::iri("urn:a"), Term::iri("urn:p"), Term::iri("urn:b"));
  b.add(Term::iri("urn:b"), Term::iri("urn:p"), Term::literal("x", "en"));
  b.add(Term::iri("urn:a"), Term::iri("urn:q"), Term::iri("urn:b"));
  b.add(Term::iri("urn:a"), Term::iri("urn:p"), Term::iri("urn:b"));  // duplicate
  return std::move(b).build();
}

}  // namespace

TEST_SUITE("kb_core") {
  TEST_CASE("builder dedupes triples and interns terms once") {
    auto s = tiny();
    CHECK(s.triple_count() == 3);
    CHECK(s.term_count() == 5);
    auto a = s.find_iri("urn:a");
    REQUIRE(a);
    CHECK(s.term(*a) == Term::iri("urn:a"));
    CHECK_FALSE(s.find_iri("urn:missing"));
    CHECK_THROWS_AS(s.term(TermId{999}), LookupError);
  }

  TEST_CASE("roles and degree") {
    auto s = tiny();
    auto a = *s.find_iri("urn:a"), b = *s.find_iri("urn:b"), p = *s.find_iri("urn:p");
    CHECK(s.is_vertex(a));
    CHECK_FALSE(s.is_predicate(a));
    CHECK(s.is_predicate(p));
    CHECK_FALSE(s.is_vertex(p));
    CHECK(s.degree(a).outlinks == 2);
    CHECK(s.degree(b).inlinks == 2);
    CHECK(s.degree(b).outlinks == 1);
    CHECK(relevance(s, b) == 3.0);
  }

  TEST_CASE("N-Triples round trip preserves the triple set") {
    std::string text =
        "<urn:a> <urn:p> <urn:b> .\n"
        "# comment\n"
        "<urn:b> <urn:label> \"Saint-\\u00C9tienne\"@fr .\n"
        "_:n1 <urn:p> \"42\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n"
        "this is not a triple\n";
    std::istringstream in(text);
    auto first = ingest_ntriples(in, "kb");
    CHECK(first.triples_loaded == 3);
    CHECK(first.lines_skipped == 1);
    std::ostringstream out;
    write_ntriples(first.store, out);
    std::istringstream again(out.str());
    auto second = ingest_ntriples(again, "kb");
    REQUIRE(second.store.triple_count() == 3);
    std::vector<std::array<Term, 3>> x, y;
    for (const auto& t : first.store.triples())
      x.push_back({first.store.term(t.subject), first.store.term(t.predicate),
                   first.store.term(t.object)});
    for (const auto& t : second.store.triples())
      y.push_back({second.store.term(t.subject), second.store.term(t.predicate),
                   second.store.term(t.object)});
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    CHECK(x == y);
    auto label = second.store.find(Term::literal("Saint-\xC3\x89tienne", "fr"));
    CHECK(label);
  }

  TEST_CASE("an input with no valid triples is rejected") {
    std::istringstream in("garbage\n\n");
    CHECK_THROWS_AS(ingest_ntriples(in, "empty"), EmptyStoreError);
  }

  TEST_CASE("adjacency lists agree with the triple list") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 20; ++round) {
      auto s = testing::random_store(rng, {12, 3, 40, true});
      std::size_t out = 0, in = 0, arcs = 0;
      for (std::uint32_t i = 0; i < s.term_count(); ++i) {
        TermId t{i};
        for (const Edge& e : s.out_edges(t)) {
          CHECK(s.contains({t, e.predicate, e.other}));
          ++out;
        }
        for (const Edge& e : s.in_edges(t)) {
          CHECK(s.contains({e.other, e.predicate, t}));
          ++in;
        }
        for (const Arc& a : s.predicate_arcs(t)) {
          CHECK(s.contains({a.subject, t, a.object}));
          ++arcs;
        }
      }
      CHECK(out == s.triple_count());
      CHECK(in == s.triple_count());
      CHECK(arcs == s.triple_count());
    }
  }

  TEST_CASE("stores built separately share nothing") {
    TripleStoreBuilder b1("one"), b2("two");
    b1.add(Term::iri("urn:x"), Term::iri("urn:p"), Term::iri("urn:y"));
    b2.add(Term::iri("urn:z"), Term::iri("urn:q"), Term::iri("urn:w"));
    auto s1 = std::move(b1).build();
    auto s2 = std::move(b2).build();
    CHECK(s1.name() == "one");
    CHECK(s2.name() == "two");
    CHECK_FALSE(s1.find_iri("urn:z"));
    CHECK_FALSE(s2.find_iri("urn:x"));
  }
}
