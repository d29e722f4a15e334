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
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgqa/language_pack.hpp"
#include "kgqa/lexicon.hpp"

namespace kgqa {

// A question span [start, end) bound to one candidate IRI.
struct Match {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::string> ngram;
  IriRef iri;
  Role role = Role::kEntity;
  double relevance = 0;
  std::string label;
  std::size_t edit_distance = 0;  // normalized label vs. n-gram
};

inline constexpr std::size_t kDefaultMaxNgram = 4;

// Every n-gram (n <= max_n) that is not made only of stop words is looked up;
// each hit becomes a Match. Overlapping matches are all kept. When several
// labels of one IRI hit the same span, the closest label is kept. Throws
// EmptyQuestionError when the question has no token.
std::vector<Match> expand(std::string_view question, const LanguagePack& pack,
                          const Lexicon& lexicon, std::size_t max_n = kDefaultMaxNgram);

// Debug dump: n, start, end, n-gram, kb, iri, role, relevance, edit distance.
void write_match_table(std::span<const Match> matches, std::ostream& out);

}  // namespace kgqa
