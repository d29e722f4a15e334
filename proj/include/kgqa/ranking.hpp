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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kgqa/expansion.hpp"
#include "kgqa/pattern_query.hpp"

namespace kgqa {

inline constexpr std::size_t kFeatureCount = 5;

struct FeatureVector {
  double words_covered = 0;
  double edit_distance_sum = 0;
  double relevance_sum = 0;
  double num_variables = 0;
  double num_triples = 0;

  std::array<double, kFeatureCount> values() const {
    return {words_covered, edit_distance_sum, relevance_sum, num_variables, num_triples};
  }
  static FeatureVector from(const std::array<double, kFeatureCount>& v) {
    return {v[0], v[1], v[2], v[3], v[4]};
  }
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

extern const std::array<const char*, kFeatureCount> kFeatureNames;

// `consumed` indexes into `matches`. `countable` has one flag per question
// token, false for stop words: words_covered counts the flagged tokens under
// some consumed match, each once.
FeatureVector extract_features(const PatternQuery& q, std::span<const Match> matches,
                               std::span<const std::size_t> consumed,
                               const std::vector<bool>& countable);

// One flag per token of `tokens`: true unless it is a stop word of `pack`.
std::vector<bool> countable_tokens(std::span<const std::string> tokens, const LanguagePack& pack);

struct FeatureRange {
  double min = 0;
  double max = 1;

  friend bool operator==(const FeatureRange&, const FeatureRange&) = default;
};

using FeatureRanges = std::array<FeatureRange, kFeatureCount>;

// Clamped min-max scaling to [0, 1]; a zero-width range maps to 0.
std::array<double, kFeatureCount> normalize(const FeatureVector& f, const FeatureRanges& ranges);

FeatureRanges default_ranges();
// Smallest ranges covering every vector.
FeatureRanges fit_ranges(std::span<const FeatureVector> features);

struct RankModel {
  std::array<double, kFeatureCount> weights{};
  FeatureRanges ranges = default_ranges();

  // (+0.4, -0.2, +0.2, -0.1, -0.1) over default_ranges().
  static RankModel manual();
  friend bool operator==(const RankModel&, const RankModel&) = default;
};

double score(const RankModel& model, const FeatureVector& f);

// Indices ordered best first: higher score, then fewer triples, then fewer
// variables, then `keys` (lexicographic; SPARQL text in the pipeline), then
// index. `keys` may be empty.
std::vector<std::size_t> rank(const RankModel& model, std::span<const FeatureVector> features,
                              std::span<const std::string> keys = {});

// Same order from precomputed scores.
std::vector<std::size_t> rank_by_scores(std::span<const double> scores,
                                        std::span<const FeatureVector> features,
                                        std::span<const std::string> keys = {});

void write_model(const RankModel& model, std::ostream& out);
RankModel read_rank_model(std::istream& in);

// One training question: its candidates and their F-scores against gold.
struct RankingExample {
  std::vector<FeatureVector> features;
  std::vector<double> f_scores;
  std::vector<std::string> keys;  // optional tie-break keys
};

// Mean over questions of 1 / (position of the first best-F candidate).
double mean_reciprocal_rank(const RankModel& model, std::span<const RankingExample> examples);

struct RankTrainOptions {
  std::uint64_t seed = 0;
  std::size_t restarts = 4;  // random starts besides model_init
  std::size_t max_sweeps = 50;
  std::vector<double> steps = {1.0, 0.5, 0.25, 0.1, 0.05, 0.01};
  bool fit_ranges = true;  // refit normalization to the training features
};

struct RankTrainResult {
  RankModel model;
  double mrr = 0;
  std::vector<std::string> warnings;
};

// Coordinate ascent on MRR. Returns model_init (with a warning) when no
// question has two candidates of different F, and whenever nothing beats it.
RankTrainResult train_rank(const RankModel& model_init, std::span<const RankingExample> examples,
                           const RankTrainOptions& options = {});

}  // namespace kgqa
