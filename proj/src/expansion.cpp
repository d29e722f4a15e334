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

#include "kgqa/expansion.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <tuple>

#include "kgqa/errors.hpp"
#include "kgqa/text.hpp"

namespace kgqa {

std::vector<Match> expand(std::string_view question, const LanguagePack& pack,
                          const Lexicon& lexicon, std::size_t max_n) {
  if (max_n == 0) throw ContractViolation("max_n must be at least 1");
  const auto tokens = tokenize(question);
  if (tokens.empty()) throw EmptyQuestionError("question has no tokens");

  std::vector<Match> out;
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    for (std::size_t n = 1; n <= max_n && start + n <= tokens.size(); ++n) {
      std::span<const std::string> ngram(tokens.data() + start, n);
      if (std::all_of(ngram.begin(), ngram.end(),
                      [&](const std::string& t) { return pack.is_stopword(t); }))
        continue;
      const std::string surface = join(ngram);
      std::map<IriRef, std::size_t> slot;
      for (LexiconHit& hit : lookup(lexicon, ngram, pack)) {
        std::size_t dist = levenshtein(normalize_phrase(hit.label), surface);
        auto [it, inserted] = slot.try_emplace(hit.iri, out.size());
        if (!inserted) {
          Match& m = out[it->second];
          if (dist < m.edit_distance) {
            m.edit_distance = dist;
            m.label = std::move(hit.label);
          }
          continue;
        }
        out.push_back({start, start + n, {ngram.begin(), ngram.end()}, std::move(hit.iri),
                       hit.role, hit.relevance, std::move(hit.label), dist});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
    return std::tie(a.start, a.end, a.iri.kb, a.iri.iri) <
           std::tie(b.start, b.end, b.iri.kb, b.iri.iri);
  });
  return out;
}

void write_match_table(std::span<const Match> matches, std::ostream& out) {
  out << "n\tstart\tend\tngram\tkb\tiri\trole\trelevance\tedit_distance\n";
  std::size_t n = 0;
  for (const Match& m : matches) {
    out << ++n << '\t' << m.start << '\t' << m.end << '\t' << join(m.ngram) << '\t' << m.iri.kb
        << '\t' << m.iri.iri << '\t' << to_string(m.role) << '\t' << m.relevance << '\t'
        << m.edit_distance << '\n';
  }
}

}  // namespace kgqa
