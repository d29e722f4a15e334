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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kgqa/engine.hpp"

namespace kgqa {

struct BenchmarkQuestion {
  std::string id;
  std::map<std::string, std::string, std::less<>> text;  // language -> question
  std::string gold_query;
  std::vector<std::string> gold;  // IRIs, literal values, "true"/"false" or a count
};

struct Dataset {
  std::vector<BenchmarkQuestion> questions;
};

// QALD JSON layout. Throws ParseError naming the offending question ids.
Dataset parse_qald(std::string_view json_text);
Dataset load_qald(const std::filesystem::path& file);

struct Prf {
  double precision = 0;
  double recall = 0;
  double f = 0;

  friend bool operator==(const Prf&, const Prf&) = default;
};

// Set-based P/R/F. Empty gold: a refusal (or an empty answer) scores 1,
// anything else 0. Non-empty gold: nothing returned scores 0.
Prf score_answers(std::span<const std::string> returned, std::span<const std::string> gold);

struct QuestionResult {
  std::string id;
  std::string question;
  Prf prf;
  bool answered = false;
  std::string error;
  std::string chosen_query;
  std::string chosen_kb;
  std::string gold_query;
  std::vector<std::string> returned;
  double seconds = 0;
};

struct BenchmarkReport {
  std::string language;
  std::vector<QuestionResult> questions;  // dataset order
  Prf macro;
  std::size_t answered = 0;
  std::size_t refused = 0;
  std::size_t errored = 0;
  double mean_seconds = 0;
};

// Arithmetic means over all questions.
Prf macro_average(std::span<const QuestionResult> results);

struct BenchmarkOptions {
  std::string language = "en";
  std::vector<std::string> kbs;  // empty: all
  std::size_t workers = 1;
  AnswerOptions answer;
};

BenchmarkReport run_benchmark(const Engine& engine, const Dataset& dataset,
                              const BenchmarkOptions& options);

// `timing` false drops the per-question and mean runtimes, leaving output
// that is identical across runs.
nlohmann::json to_json(const BenchmarkReport& report, bool timing = true);
void write_table(const BenchmarkReport& report, std::ostream& out);

struct TrainingRow {
  std::string question_id;
  std::string sparql;
  FeatureVector features;
  double f = 0;
};

struct TrainingOutcome {
  RankModel rank;
  DecisionModel decision;
  double train_mrr = 0;
  std::vector<TrainingRow> rows;
  std::vector<std::string> warnings;
};

struct TrainingOptions {
  std::string language = "en";
  std::vector<std::string> kbs;
  double theta1 = 0.8;
  AnswerOptions answer;
  RankTrainOptions rank;
  DecisionTrainOptions decision;
};

// Scores every candidate of every question against gold, then trains both
// models. Throws ConfigError on an empty dataset; trainer errors propagate.
TrainingOutcome train_pipeline(const Engine& engine, const Dataset& dataset,
                               const TrainingOptions& options);

// Tab-separated: question id, SPARQL, five features, F.
void write_training_rows(std::span<const TrainingRow> rows, std::ostream& out);

}  // namespace kgqa
