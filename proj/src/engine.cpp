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

#include "kgqa/engine.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include "kgqa/distance_table.hpp"
#include "kgqa/errors.hpp"
#include "kgqa/expansion.hpp"
#include "kgqa/sparql.hpp"
#include "kgqa/text.hpp"

namespace kgqa {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string value_string(const Term& t) { return t.kind == TermKind::kBlank ? "_:" + t.value : t.value; }

// Keeps the candidates of the decided form; COUNT reuses the SELECT ones.
std::vector<Candidate> apply_form(std::vector<Candidate> all, QueryForm form) {
  std::vector<Candidate> out;
  for (auto& c : all) {
    bool select = c.query.form == QueryForm::kSelect;
    if (form == QueryForm::kAsk && c.query.form == QueryForm::kAsk) {
      out.push_back(std::move(c));
    } else if (form != QueryForm::kAsk && select) {
      c.query.form = form;
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  return in;
}

std::vector<std::string> split_tab(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) return out;
    start = tab + 1;
  }
}

}  // namespace

nlohmann::json to_json(const AnswerEnvelope& e) {
  nlohmann::json ranked = nlohmann::json::array();
  for (const auto& c : e.ranked_candidates) {
    nlohmann::json features;
    auto values = c.features.values();
    for (std::size_t i = 0; i < kFeatureCount; ++i) features[kFeatureNames[i]] = values[i];
    ranked.push_back({{"sparql", c.sparql}, {"kb", c.kb}, {"score", c.score}, {"features", features}});
  }
  nlohmann::json j = {
      {"question", e.question},
      {"language", e.language},
      {"answered", e.answered},
      {"confidence", e.confidence},
      {"answer_values", e.answer_values},
      {"chosen_query", e.chosen_query},
      {"chosen_kb", e.chosen_kb},
      {"ranked_candidates", ranked},
      {"candidate_count", e.candidate_count},
      {"truncated", e.truncated},
      {"timings",
       {{"expansion_ms", e.timings.expansion_ms},
        {"construction_ms", e.timings.construction_ms},
        {"ranking_ms", e.timings.ranking_ms},
        {"execution_ms", e.timings.execution_ms},
        {"total_ms", e.timings.total_ms}}},
  };
  if (!e.reason.empty()) j["reason"] = e.reason;
  return j;
}

std::vector<std::string> answer_values(const TripleStore& store, const PatternQuery& q,
                                       std::size_t limit) {
  ResultSet r = execute(store, q, limit);
  switch (r.form) {
    case QueryForm::kAsk:
      return {r.truth ? "true" : "false"};
    case QueryForm::kCount:
      return {std::to_string(r.count)};
    case QueryForm::kSelect:
      break;
  }
  std::vector<std::string> out;
  for (TermId id : r.rows) out.push_back(value_string(store.term(id)));
  return out;
}

Engine::Engine(std::vector<TripleStore> stores, Lexicon lexicon, LanguagePacks packs,
               RankModel rank, DecisionModel decision, AnswerOptions defaults)
    : lexicon_(std::move(lexicon)),
      packs_(std::move(packs)),
      rank_(rank),
      decision_(decision),
      defaults_(defaults) {
  for (auto& s : stores) {
    for (const auto& existing : stores_)
      if (existing->name() == s.name()) throw ConfigError("duplicate kb '" + s.name() + "'");
    stores_.push_back(std::make_unique<TripleStore>(std::move(s)));
  }
}

std::vector<std::string> Engine::kb_names() const {
  std::vector<std::string> out;
  for (const auto& s : stores_) out.push_back(s->name());
  return out;
}

const TripleStore& Engine::store(std::string_view kb) const {
  for (const auto& s : stores_)
    if (s->name() == kb) return *s;
  throw ConfigError("unknown kb '" + std::string(kb) + "'");
}

void Engine::set_models(RankModel rank, DecisionModel decision) {
  rank_ = rank;
  decision_ = decision;
}

std::vector<const TripleStore*> Engine::select(std::span<const std::string> kbs) const {
  std::vector<const TripleStore*> out;
  if (kbs.empty()) {
    for (const auto& s : stores_) out.push_back(s.get());
    return out;
  }
  for (const auto& name : kbs) {
    const TripleStore* s = &store(name);
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

Analysis Engine::analyze(std::string_view question, std::string_view language,
                         std::span<const std::string> kbs, const RankModel& model,
                         const AnswerOptions& options) const {
  auto pack_it = packs_.find(language);
  if (pack_it == packs_.end()) throw ConfigError("unknown language '" + std::string(language) + "'");
  const LanguagePack& pack = pack_it->second;

  Analysis a;
  a.stores = select(kbs);

  auto start = Clock::now();
  a.tokens = tokenize(question);
  a.countable = countable_tokens(a.tokens, pack);
  if (!a.tokens.empty()) {
    for (auto& m : expand(question, pack, lexicon_, options.max_ngram)) {
      bool selected = std::any_of(a.stores.begin(), a.stores.end(),
                                  [&](const TripleStore* s) { return s->name() == m.iri.kb; });
      if (selected) a.matches.push_back(std::move(m));
    }
  }
  a.expansion_ms = ms_since(start);
  if (a.matches.empty()) return a;

  start = Clock::now();
  a.form = decide_form(question, pack);
  std::vector<IriRef> members;
  for (const auto& m : a.matches) members.push_back(m.iri);
  auto tables = compute_distances(a.stores, members);
  GenerationOptions gen;
  gen.cap = options.cap;
  CandidateSet set = generate_candidates(a.stores, a.matches, tables, gen);
  a.truncated = set.truncated;
  auto candidates = apply_form(std::move(set.candidates), a.form);
  a.construction_ms = ms_since(start);

  start = Clock::now();
  std::vector<FeatureVector> features;
  std::vector<std::string> sparql;
  std::vector<double> scores;
  for (const auto& c : candidates) {
    features.push_back(extract_features(c.query, a.matches, c.consumed, a.countable));
    sparql.push_back(to_sparql(*a.stores[c.store], c.query));
    scores.push_back(score(model, features.back()));
  }
  for (std::size_t i : rank_by_scores(scores, features, sparql)) {
    a.candidates.push_back(std::move(candidates[i]));
    a.features.push_back(features[i]);
    a.sparql.push_back(std::move(sparql[i]));
    a.scores.push_back(scores[i]);
  }
  a.ranking_ms = ms_since(start);
  return a;
}

AnswerEnvelope Engine::answer(std::string_view question, std::string_view language,
                              std::span<const std::string> kbs) const {
  return answer(question, language, kbs, defaults_);
}

AnswerEnvelope Engine::answer(std::string_view question, std::string_view language,
                              std::span<const std::string> kbs,
                              const AnswerOptions& options) const {
  auto start = Clock::now();
  AnswerEnvelope e;
  e.question = std::string(question);
  e.language = std::string(language);

  Analysis a = analyze(question, language, kbs, rank_, options);
  e.timings.expansion_ms = a.expansion_ms;
  e.timings.construction_ms = a.construction_ms;
  e.truncated = a.truncated;
  e.candidate_count = a.candidates.size();
  if (a.matches.empty() || a.candidates.empty()) {
    e.reason = a.matches.empty() ? "no matches" : "no candidates";
    e.timings.total_ms = ms_since(start);
    return e;
  }

  auto gate_start = Clock::now();
  for (std::size_t i = 0; i < a.candidates.size() && i < options.top_k; ++i)
    e.ranked_candidates.push_back(
        {a.sparql[i], a.stores[a.candidates[i].store]->name(), a.scores[i], a.features[i]});
  DecisionModel decision = decision_;
  if (options.theta2) decision.theta2 = *options.theta2;
  GateResult g = gate(decision, a.features.front());
  e.timings.ranking_ms = a.ranking_ms + ms_since(gate_start);
  e.confidence = g.confidence;
  e.chosen_query = a.sparql.front();
  e.chosen_kb = a.stores[a.candidates.front().store]->name();

  if (!g.answer) {
    e.reason = "low confidence";
  } else {
    auto exec_start = Clock::now();
    const Candidate& top = a.candidates.front();
    e.answer_values = answer_values(*a.stores[top.store], top.query, options.limit);
    e.answered = true;
    e.timings.execution_ms = ms_since(exec_start);
  }
  e.timings.total_ms = ms_since(start);
  return e;
}

LanguagePacks load_packs(const Config& config) {
  LanguagePacks packs;
  for (const auto& lang : config.languages) packs.emplace(lang, builtin_pack(lang));
  for (const auto& [lang, file] : config.stopword_files) {
    auto it = packs.find(lang);
    if (it == packs.end()) throw ConfigError("stop words given for undeclared language '" + lang + "'");
    it->second.stopwords = load_stopwords(file);
  }
  return packs;
}

Lexicon build_config_lexicon(const Config& config, std::span<const TripleStore* const> stores,
                             const LanguagePacks& packs, std::vector<std::string>* warnings) {
  auto warn = [&](std::string w) {
    if (warnings) warnings->push_back(std::move(w));
  };
  Lexicon lexicon;
  for (const TripleStore* store : stores) {
    const KbConfig* kb = config.find_kb(store->name());
    if (!kb) throw ConfigError("store '" + store->name() + "' missing from the config");

    if (!kb->labels.label_predicates.empty()) {
      LabelConfig labels = kb->labels;
      for (auto& lp : labels.label_predicates)
        if (lp.languages.empty()) lp.languages = config.languages;
      BuildOutcome built = build_lexicon(*store, labels, packs);
      for (auto& w : built.warnings) warn(std::move(w));
      lexicon.merge(built.lexicon);
    }
    for (const auto& path : kb->lexicon_snapshots) {
      auto in = open(path);
      lexicon.merge(read_snapshot(in, stores));
    }
    for (const auto& path : kb->manual_lexicons) {
      auto in = open(path);
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto f = split_tab(line);
        if (f.size() < 4 || f.size() > 5) throw ConfigError("bad manual lexicon line '" + line + "'");
        auto id = store->find_iri(f[1]);
        if (!id) {
          warn("manual lexicon IRI <" + f[1] + "> absent from '" + store->name() + "'");
          continue;
        }
        auto role = parse_role(f[2]);
        auto pack = packs.find(f[3]);
        if (!role || pack == packs.end()) throw ConfigError("bad manual lexicon line '" + line + "'");
        auto tokens = tokenize(f[0]);
        if (tokens.empty()) continue;
        lexicon.add({pack->second.key(tokens), IriRef{store->name(), *id, f[1]}, *role, f[3],
                     relevance(*store, *id), std::string(kSourceManual), f.size() == 5 ? f[4] : f[0]});
      }
    }
    if (kb->mining) {
      const MiningConfig& m = *kb->mining;
      auto pack = packs.find(m.language);
      if (pack == packs.end()) throw ConfigError("mining language '" + m.language + "' undeclared");
      std::vector<CorpusDocument> corpus;
      auto in = open(m.corpus);
      std::string line;
      while (std::getline(in, line)) {
        auto f = split_tab(line);
        if (f.size() != 2) continue;
        if (auto id = store->find_iri(f[0])) corpus.push_back({*id, f[1]});
      }
      for (const auto& p : m.properties) {
        auto pid = store->find_iri(p);
        if (!pid) {
          warn("mining property <" + p + "> absent from '" + store->name() + "'");
          continue;
        }
        auto segments = mine_property_lexicalizations(*store, *pid, corpus, m.top_k, kb->labels);
        add_mined(lexicon, *store, *pid, segments, pack->second);
      }
    }
  }

  std::vector<SameAsLink> links = config.sameas;
  if (config.sameas_file) {
    auto in = open(*config.sameas_file);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto f = split_tab(line);
      if (f.size() != 2) throw ConfigError("bad sameAs line '" + line + "'");
      links.emplace_back(f[0], f[1]);
    }
  }
  if (!links.empty()) lexicon = transfer_via_sameas(lexicon, links, stores, warnings);
  if (lexicon.empty()) throw BuildError("lexicon is empty");
  return lexicon;
}

Engine Engine::load(const Config& config, std::vector<std::string>* warnings) {
  std::vector<TripleStore> stores;
  for (const auto& kb : config.kbs) {
    IngestResult r = ingest_ntriples(kb.dumps, kb.name);
    if (warnings && r.lines_skipped > 0)
      warnings->push_back(kb.name + ": skipped " + std::to_string(r.lines_skipped) + " lines");
    stores.push_back(std::move(r.store));
  }
  std::vector<const TripleStore*> ptrs;
  for (const auto& s : stores) ptrs.push_back(&s);
  LanguagePacks packs = load_packs(config);
  Lexicon lexicon = build_config_lexicon(config, ptrs, packs, warnings);

  RankModel rank = RankModel::manual();
  if (config.rank_model && std::filesystem::exists(*config.rank_model)) {
    auto in = open(*config.rank_model);
    rank = read_rank_model(in);
  }
  DecisionModel decision;
  if (config.decision_model && std::filesystem::exists(*config.decision_model)) {
    auto in = open(*config.decision_model);
    decision = read_decision_model(in);
  }
  AnswerOptions defaults;
  defaults.top_k = config.defaults.top_k;
  defaults.max_ngram = config.defaults.max_ngram;
  defaults.limit = config.defaults.limit;
  defaults.cap = config.defaults.cap;
  defaults.theta2 = config.defaults.theta2;
  return Engine(std::move(stores), std::move(lexicon), std::move(packs), rank, decision, defaults);
}

}  // namespace kgqa
