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

#include "kgqa/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "kgqa/errors.hpp"

namespace kgqa {
namespace {

using nlohmann::json;

std::vector<std::string> gold_values(const json& answers) {
  std::set<std::string> out;
  for (const auto& a : answers) {
    if (a.contains("boolean")) {
      out.insert(a.at("boolean").get<bool>() ? "true" : "false");
      continue;
    }
    if (!a.contains("results")) continue;
    for (const auto& binding : a.at("results").at("bindings"))
      for (const auto& [var, cell] : binding.items()) out.insert(cell.at("value").get<std::string>());
  }
  return {out.begin(), out.end()};
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json prf_json(const Prf& p) { return {{"precision", p.precision}, {"recall", p.recall}, {"f", p.f}}; }

}  // namespace

Dataset parse_qald(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("benchmark file is not JSON: ") + e.what());
  }
  if (!j.contains("questions") || !j.at("questions").is_array())
    throw ParseError("benchmark file has no 'questions' array");
  Dataset d;
  std::vector<std::string> bad;
  std::size_t position = 0;
  for (const auto& q : j.at("questions")) {
    ++position;
    std::string id = "#" + std::to_string(position);
    try {
      if (q.contains("id")) id = q.at("id").is_string() ? q.at("id").get<std::string>()
                                                        : q.at("id").dump();
      BenchmarkQuestion bq;
      bq.id = id;
      for (const auto& t : q.at("question"))
        bq.text[t.at("language").get<std::string>()] = t.at("string").get<std::string>();
      if (q.contains("query") && q.at("query").contains("sparql"))
        bq.gold_query = q.at("query").at("sparql").get<std::string>();
      bq.gold = gold_values(q.at("answers"));
      d.questions.push_back(std::move(bq));
    } catch (const json::exception&) {
      bad.push_back(id);
    }
  }
  if (!bad.empty()) {
    std::string ids;
    for (const auto& b : bad) ids += (ids.empty() ? "" : ", ") + b;
    throw ParseError("malformed benchmark questions: " + ids);
  }
  return d;
}

Dataset load_qald(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot read benchmark file " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_qald(buf.str());
}

Prf score_answers(std::span<const std::string> returned, std::span<const std::string> gold) {
  std::set<std::string> r(returned.begin(), returned.end());
  std::set<std::string> g(gold.begin(), gold.end());
  if (g.empty()) return r.empty() ? Prf{1, 1, 1} : Prf{0, 0, 0};
  if (r.empty()) return {};
  std::size_t hit = 0;
  for (const auto& v : r) hit += g.count(v);
  Prf p;
  p.precision = static_cast<double>(hit) / static_cast<double>(r.size());
  p.recall = static_cast<double>(hit) / static_cast<double>(g.size());
  if (p.precision + p.recall > 0) p.f = 2 * p.precision * p.recall / (p.precision + p.recall);
  return p;
}

Prf macro_average(std::span<const QuestionResult> results) {
  Prf m;
  if (results.empty()) return m;
  for (const auto& r : results) {
    m.precision += r.prf.precision;
    m.recall += r.prf.recall;
    m.f += r.prf.f;
  }
  double n = static_cast<double>(results.size());
  return {m.precision / n, m.recall / n, m.f / n};
}

BenchmarkReport run_benchmark(const Engine& engine, const Dataset& dataset,
                              const BenchmarkOptions& options) {
  BenchmarkReport report;
  report.language = options.language;
  report.questions.resize(dataset.questions.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < dataset.questions.size(); i = next++) {
      const BenchmarkQuestion& q = dataset.questions[i];
      QuestionResult& r = report.questions[i];
      r.id = q.id;
      r.gold_query = q.gold_query;
      auto start = std::chrono::steady_clock::now();
      auto text = q.text.find(options.language);
      if (text == q.text.end()) {
        r.error = "no question text in '" + options.language + "'";
      } else {
        r.question = text->second;
        try {
          AnswerEnvelope e = engine.answer(text->second, options.language, options.kbs, options.answer);
          r.answered = e.answered;
          r.chosen_query = e.chosen_query;
          r.chosen_kb = e.chosen_kb;
          r.returned = e.answer_values;
        } catch (const Error& ex) {
          r.error = ex.what();
        }
      }
      r.prf = score_answers(r.returned, q.gold);
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::max<std::size_t>(options.workers, 1); ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& r : report.questions) {
    if (!r.error.empty()) ++report.errored;
    else if (r.answered) ++report.answered;
    else ++report.refused;
    report.mean_seconds += r.seconds;
  }
  if (!report.questions.empty()) report.mean_seconds /= static_cast<double>(report.questions.size());
  report.macro = macro_average(report.questions);
  return report;
}

json to_json(const BenchmarkReport& report, bool timing) {
  json questions = json::array();
  for (const auto& r : report.questions) {
    json q = {{"id", r.id},           {"question", r.question},       {"answered", r.answered},
              {"chosen_query", r.chosen_query}, {"chosen_kb", r.chosen_kb},
              {"gold_query", r.gold_query},     {"returned", r.returned}};
    q.update(prf_json(r.prf));
    if (!r.error.empty()) q["error"] = r.error;
    if (timing) q["seconds"] = r.seconds;
    questions.push_back(q);
  }
  json j = {{"language", report.language},
            {"metric", "macro precision/recall/F; empty gold with a refusal counts as correct"},
            {"macro", prf_json(report.macro)},
            {"counts",
             {{"answered", report.answered}, {"refused", report.refused}, {"errored", report.errored}}},
            {"questions", questions}};
  if (timing) j["mean_seconds"] = report.mean_seconds;
  return j;
}

void write_table(const BenchmarkReport& report, std::ostream& out) {
  out << "# macro P/R/F; empty gold with a refusal counts as correct\n";
  out << "id\tP\tR\tF\tanswered\tquery\n";
  for (const auto& r : report.questions) {
    out << r.id << '\t' << fixed(r.prf.precision, 3) << '\t' << fixed(r.prf.recall, 3) << '\t'
        << fixed(r.prf.f, 3) << '\t' << (r.error.empty() ? (r.answered ? "yes" : "no") : "error")
        << '\t' << (r.error.empty() ? r.chosen_query : r.error) << '\n';
  }
  out << "macro\t" << fixed(report.macro.precision, 3) << '\t' << fixed(report.macro.recall, 3)
      << '\t' << fixed(report.macro.f, 3) << '\n';
  out << "answered " << report.answered << ", refused " << report.refused << ", errored "
      << report.errored << ", mean " << fixed(report.mean_seconds, 3) << " s/question\n";
}

namespace {

// Mean F of the top-ranked candidate per question.
double top1_f(const RankModel& model, std::span<const RankingExample> examples) {
  double total = 0;
  for (const auto& ex : examples) {
    auto order = rank(model, ex.features, ex.keys);
    if (!order.empty()) total += ex.f_scores[order.front()];
  }
  return examples.empty() ? 0 : total / static_cast<double>(examples.size());
}

}  // namespace

TrainingOutcome train_pipeline(const Engine& engine, const Dataset& dataset,
                               const TrainingOptions& options) {
  if (dataset.questions.empty()) throw ConfigError("training dataset has no questions");
  TrainingOutcome out;
  std::vector<RankingExample> examples;
  std::vector<DecisionExample> decisions;
  for (const auto& q : dataset.questions) {
    auto text = q.text.find(options.language);
    if (text == q.text.end()) continue;
    Analysis a = engine.analyze(text->second, options.language, options.kbs, engine.rank_model(),
                                options.answer);
    if (a.candidates.empty()) continue;
    RankingExample ex;
    for (std::size_t i = 0; i < a.candidates.size(); ++i) {
      const Candidate& c = a.candidates[i];
      auto values = answer_values(*a.stores[c.store], c.query, options.answer.limit);
      double f = score_answers(values, q.gold).f;
      ex.features.push_back(a.features[i]);
      ex.f_scores.push_back(f);
      ex.keys.push_back(a.sparql[i]);
      decisions.push_back({a.features[i], f});
      out.rows.push_back({q.id, a.sparql[i], a.features[i], f});
    }
    examples.push_back(std::move(ex));
  }
  if (examples.empty()) throw ConfigError("no training question produced candidates");

  RankTrainResult trained = train_rank(engine.rank_model(), examples, options.rank);
  out.warnings = trained.warnings;
  out.rank = trained.model;
  out.train_mrr = trained.mrr;
  if (top1_f(out.rank, examples) < top1_f(engine.rank_model(), examples)) {
    out.warnings.push_back("trained ranker has lower top-1 F on the training set; keeping initial model");
    out.rank = engine.rank_model();
    out.train_mrr = mean_reciprocal_rank(out.rank, examples);
  }
  out.decision = train_decision(decisions, options.theta1, options.decision);
  return out;
}

void write_training_rows(std::span<const TrainingRow> rows, std::ostream& out) {
  for (const auto& r : rows) {
    out << r.question_id << '\t' << r.sparql;
    for (double v : r.features.values()) out << '\t' << v;
    out << '\t' << r.f << '\n';
  }
}

}  // namespace kgqa
