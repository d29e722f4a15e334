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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kgqa/benchmark.hpp"
#include "kgqa/config.hpp"
#include "kgqa/engine.hpp"
#include "kgqa/errors.hpp"
#include "kgqa/http_api.hpp"
#include "kgqa/lexicon.hpp"

namespace {

std::vector<std::string> split_commas(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) out.push_back(part);
  }
  return out;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

kgqa::Engine load_engine(const std::string& config_path, kgqa::Config* config_out = nullptr) {
  kgqa::Config config = kgqa::load_config(config_path);
  std::vector<std::string> warnings;
  kgqa::Engine engine = kgqa::Engine::load(config, &warnings);
  print_warnings(warnings);
  if (config_out) *config_out = config;
  return engine;
}

struct Tuning {
  std::size_t top_k = 0;
  std::size_t max_ngram = 0;
  double theta2 = -1;

  kgqa::AnswerOptions apply(kgqa::AnswerOptions o) const {
    if (top_k) o.top_k = top_k;
    if (max_ngram) o.max_ngram = max_ngram;
    if (theta2 >= 0) o.theta2 = theta2;
    return o;
  }
};

void add_tuning(CLI::App* cmd, Tuning& t) {
  cmd->add_option("--top-k", t.top_k, "Ranked candidates to report");
  cmd->add_option("--theta2", t.theta2, "Confidence threshold for answering");
  cmd->add_option("--max-ngram", t.max_ngram, "Longest n-gram looked up");
}

void write_file(const std::string& path, const std::string& content) {
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw kgqa::ConfigError("cannot write " + path);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilingual question answering over RDF knowledge bases"};
  app.require_subcommand(1);

  std::string config_path = "config.json";
  std::string language = "en";
  std::vector<std::string> kb_args;
  Tuning tuning;

  auto* build_kb = app.add_subcommand("build-kb", "Ingest the dumps and report store sizes");
  build_kb->add_option("config", config_path, "Config file")->required();

  std::string snapshot_out = "lexicon.tsv";
  auto* build_lex = app.add_subcommand("build-lexicon", "Build the lexicon and write a snapshot");
  build_lex->add_option("config", config_path, "Config file")->required();
  build_lex->add_option("-o,--output", snapshot_out, "Snapshot path");

  std::string question;
  bool as_json = false;
  auto* answer = app.add_subcommand("answer", "Answer one question");
  answer->add_option("question", question, "Question text")->required();
  answer->add_option("--config", config_path, "Config file");
  answer->add_option("--lang", language, "Question language");
  answer->add_option("--kb", kb_args, "Knowledge bases (comma separated or repeated)");
  answer->add_flag("--json", as_json, "Print the full envelope as JSON");
  add_tuning(answer, tuning);

  std::string dataset_path;
  bool train_mode = false, eval_mode = false;
  std::string report_out;
  std::size_t workers = 0;
  auto* bench = app.add_subcommand("benchmark", "Train on or evaluate a QALD-format dataset");
  bench->add_option("dataset", dataset_path, "QALD JSON file")->required();
  bench->add_option("--config", config_path, "Config file");
  bench->add_option("--lang", language, "Question language");
  bench->add_option("--kb", kb_args, "Knowledge bases");
  auto* train_flag = bench->add_flag("--train", train_mode, "Train models and write them");
  auto* eval_flag = bench->add_flag("--eval", eval_mode, "Evaluate and report P/R/F");
  train_flag->excludes(eval_flag);
  bench->add_option("--workers", workers, "Parallel questions");
  bench->add_option("--report", report_out, "Write the JSON report here");
  add_tuning(bench, tuning);

  std::string rank_out, decision_out, rows_out;
  auto* train = app.add_subcommand("train", "Train the rank and decision models");
  train->add_option("dataset", dataset_path, "QALD JSON file")->required();
  train->add_option("--config", config_path, "Config file");
  train->add_option("--lang", language, "Question language");
  train->add_option("--kb", kb_args, "Knowledge bases");
  train->add_option("--rank-out", rank_out, "Rank model path (default: config models.rank)");
  train->add_option("--decision-out", decision_out, "Decision model path (default: config models.decision)");
  train->add_option("--rows", rows_out, "Write per-candidate training rows (TSV)");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--config", config_path, "Config file");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build_kb->parsed()) {
      kgqa::Config config = kgqa::load_config(config_path);
      for (const auto& kb : config.kbs) {
        kgqa::IngestResult r = kgqa::ingest_ntriples(kb.dumps, kb.name);
        std::cout << kb.name << ": " << r.triples_loaded << " triples, " << r.store.term_count()
                  << " terms, " << r.lines_skipped << " lines skipped\n";
      }
      return 0;
    }
    if (build_lex->parsed()) {
      kgqa::Engine engine = load_engine(config_path);
      std::ofstream out(snapshot_out);
      if (!out) throw kgqa::ConfigError("cannot write " + snapshot_out);
      kgqa::write_snapshot(engine.lexicon(), out);
      std::cout << engine.lexicon().size() << " entries written to " << snapshot_out << '\n';
      return 0;
    }

    kgqa::Config config;
    kgqa::Engine engine = load_engine(config_path, &config);
    auto kbs = split_commas(kb_args);

    if (answer->parsed()) {
      kgqa::AnswerEnvelope e = engine.answer(question, language, kbs, tuning.apply(engine.defaults()));
      if (as_json) {
        std::cout << kgqa::to_json(e).dump(2) << '\n';
        return 0;
      }
      std::cout << (e.answered ? "answer" : "no answer") << " (confidence " << e.confidence << ")";
      if (!e.reason.empty()) std::cout << ": " << e.reason;
      std::cout << '\n';
      if (!e.chosen_query.empty()) std::cout << "query [" << e.chosen_kb << "]: " << e.chosen_query << '\n';
      for (const auto& v : e.answer_values) std::cout << "  " << v << '\n';
      return 0;
    }

    kgqa::Dataset dataset = kgqa::load_qald(dataset_path);
    bool training = train->parsed() || (bench->parsed() && train_mode);
    if (training) {
      kgqa::TrainingOptions options;
      options.language = language;
      options.kbs = kbs;
      options.theta1 = config.defaults.theta1;
      options.answer = tuning.apply(engine.defaults());
      kgqa::TrainingOutcome t = kgqa::train_pipeline(engine, dataset, options);
      print_warnings(t.warnings);
      std::string rp = !rank_out.empty() ? rank_out : config.rank_model ? config.rank_model->string() : "rank.model";
      std::string dp = !decision_out.empty()        ? decision_out
                       : config.decision_model ? config.decision_model->string()
                                               : "decision.model";
      std::ostringstream rank_text, decision_text;
      kgqa::write_model(t.rank, rank_text);
      kgqa::write_model(t.decision, decision_text);
      write_file(rp, rank_text.str());
      write_file(dp, decision_text.str());
      if (!rows_out.empty()) {
        std::ostringstream rows;
        kgqa::write_training_rows(t.rows, rows);
        write_file(rows_out, rows.str());
      }
      std::cout << "trained on " << dataset.questions.size() << " questions, " << t.rows.size()
                << " candidates; training MRR " << t.train_mrr << "\nrank model: " << rp
                << "\ndecision model: " << dp << '\n';
      return 0;
    }
    if (bench->parsed()) {
      kgqa::BenchmarkOptions options;
      options.language = language;
      options.kbs = kbs;
      options.workers = workers ? workers : config.defaults.workers;
      options.answer = tuning.apply(engine.defaults());
      kgqa::BenchmarkReport report = kgqa::run_benchmark(engine, dataset, options);
      kgqa::write_table(report, std::cout);
      if (!report_out.empty()) write_file(report_out, kgqa::to_json(report).dump(2) + "\n");
      return 0;
    }
    if (serve->parsed()) {
      kgqa::HttpApi api(engine);
      if (api.bind(host, port) < 0) throw kgqa::ConfigError("cannot bind " + host + ":" + std::to_string(port));
      std::cout << "listening on http://" << host << ':' << port << '\n';
      return api.serve() ? 0 : 1;
    }
  } catch (const kgqa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
