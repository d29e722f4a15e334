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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kgqa/candidates.hpp"
#include "kgqa/config.hpp"
#include "kgqa/decision.hpp"
#include "kgqa/language_pack.hpp"
#include "kgqa/lexicon.hpp"
#include "kgqa/ranking.hpp"
#include "kgqa/triple_store.hpp"

namespace kgqa {

struct StageTimings {
  double expansion_ms = 0;
  double construction_ms = 0;
  double ranking_ms = 0;
  double execution_ms = 0;
  double total_ms = 0;
};

struct RankedCandidate {
  std::string sparql;
  std::string kb;
  double score = 0;
  FeatureVector features;
};

struct AnswerEnvelope {
  std::string question;
  std::string language;
  bool answered = false;
  double confidence = 0;
  std::string reason;  // set when not answered
  std::vector<std::string> answer_values;
  std::string chosen_query;  // top-ranked candidate, also when refused
  std::string chosen_kb;
  std::vector<RankedCandidate> ranked_candidates;
  std::size_t candidate_count = 0;
  bool truncated = false;
  StageTimings timings;
};

nlohmann::json to_json(const AnswerEnvelope& envelope);

struct AnswerOptions {
  std::size_t top_k = 10;
  std::size_t max_ngram = kDefaultMaxNgram;
  std::size_t limit = kDefaultLimit;
  std::size_t cap = 10000;
  std::optional<double> theta2;  // overrides the decision model
};

// Candidates of one question, best first under the given rank model.
struct Analysis {
  std::vector<const TripleStore*> stores;
  std::vector<std::string> tokens;
  std::vector<bool> countable;
  std::vector<Match> matches;
  QueryForm form = QueryForm::kSelect;
  std::vector<Candidate> candidates;  // in rank order
  std::vector<FeatureVector> features;
  std::vector<std::string> sparql;
  std::vector<double> scores;
  bool truncated = false;
  double expansion_ms = 0;
  double construction_ms = 0;
  double ranking_ms = 0;
};

// Answer values as strings: IRIs and literal lexical forms for SELECT,
// "true"/"false" for ASK, the decimal count for COUNT.
std::vector<std::string> answer_values(const TripleStore& store, const PatternQuery& q,
                                       std::size_t limit = kDefaultLimit);

class Engine {
 public:
  Engine(std::vector<TripleStore> stores, Lexicon lexicon, LanguagePacks packs,
         RankModel rank = RankModel::manual(), DecisionModel decision = {},
         AnswerOptions defaults = {});

  // Ingests the dumps, builds the lexicon (labels, snapshots, mining,
  // sameAs transfer) and loads the models named in the config.
  static Engine load(const Config& config, std::vector<std::string>* warnings = nullptr);

  // Empty `kbs` selects every store. Throws ConfigError for an unknown
  // language or kb.
  AnswerEnvelope answer(std::string_view question, std::string_view language,
                        std::span<const std::string> kbs = {}) const;
  AnswerEnvelope answer(std::string_view question, std::string_view language,
                        std::span<const std::string> kbs, const AnswerOptions& options) const;

  Analysis analyze(std::string_view question, std::string_view language,
                   std::span<const std::string> kbs, const RankModel& model,
                   const AnswerOptions& options) const;

  std::vector<std::string> kb_names() const;
  const TripleStore& store(std::string_view kb) const;
  std::span<const std::unique_ptr<TripleStore>> stores() const { return stores_; }
  const Lexicon& lexicon() const { return lexicon_; }
  const LanguagePacks& packs() const { return packs_; }
  const RankModel& rank_model() const { return rank_; }
  const DecisionModel& decision_model() const { return decision_; }
  const AnswerOptions& defaults() const { return defaults_; }
  void set_models(RankModel rank, DecisionModel decision);

 private:
  std::vector<const TripleStore*> select(std::span<const std::string> kbs) const;

  std::vector<std::unique_ptr<TripleStore>> stores_;
  Lexicon lexicon_;
  LanguagePacks packs_;
  RankModel rank_;
  DecisionModel decision_;
  AnswerOptions defaults_;
};

LanguagePacks load_packs(const Config& config);

// Lexicon for the stores named in `config`, in store order.
Lexicon build_config_lexicon(const Config& config, std::span<const TripleStore* const> stores,
                             const LanguagePacks& packs, std::vector<std::string>* warnings);

}  // namespace kgqa
