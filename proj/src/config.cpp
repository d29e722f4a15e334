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

#include "kgqa/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kgqa/errors.hpp"

namespace kgqa {
namespace {

using nlohmann::json;

std::filesystem::path resolve_path(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::vector<std::string> strings(const json& j, const char* field) {
  if (!j.contains(field)) return {};
  return j.at(field).get<std::vector<std::string>>();
}

KbConfig parse_kb(const json& j, const std::filesystem::path& base) {
  KbConfig kb;
  kb.name = j.at("name").get<std::string>();
  for (const auto& d : strings(j, "dumps")) kb.dumps.push_back(resolve_path(base, d));
  if (kb.dumps.empty()) throw ConfigError("kb '" + kb.name + "' lists no dumps");
  if (j.contains("label_predicates")) {
    for (const auto& lp : j.at("label_predicates")) {
      if (lp.is_string()) {
        kb.labels.label_predicates.push_back({lp.get<std::string>(), {}});
      } else {
        kb.labels.label_predicates.push_back(
            {lp.at("iri").get<std::string>(), strings(lp, "languages")});
      }
    }
  }
  if (j.contains("type_predicates")) kb.labels.type_predicates = strings(j, "type_predicates");
  for (const auto& s : strings(j, "lexicon_snapshots"))
    kb.lexicon_snapshots.push_back(resolve_path(base, s));
  for (const auto& s : strings(j, "manual_lexicons"))
    kb.manual_lexicons.push_back(resolve_path(base, s));
  if (j.contains("mining")) {
    const auto& m = j.at("mining");
    MiningConfig mc;
    mc.corpus = resolve_path(base, m.at("corpus").get<std::string>());
    mc.properties = strings(m, "properties");
    mc.top_k = m.value("top_k", mc.top_k);
    mc.language = m.value("language", mc.language);
    kb.mining = mc;
  }
  return kb;
}

}  // namespace

const KbConfig* Config::find_kb(std::string_view name) const {
  for (const auto& kb : kbs)
    if (kb.name == name) return &kb;
  return nullptr;
}

Config parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  Config c;
  c.base_dir = base_dir;
  try {
    json j = json::parse(json_text);
    for (const auto& kb : j.at("kbs")) c.kbs.push_back(parse_kb(kb, base_dir));
    if (c.kbs.empty()) throw ConfigError("config lists no kbs");
    c.languages = j.contains("languages") ? strings(j, "languages") : std::vector<std::string>{"en"};
    if (j.contains("stopwords"))
      for (const auto& [lang, path] : j.at("stopwords").items())
        c.stopword_files.emplace_back(lang, resolve_path(base_dir, path.get<std::string>()));
    if (j.contains("sameas")) {
      const auto& s = j.at("sameas");
      if (s.is_string()) {
        c.sameas_file = resolve_path(base_dir, s.get<std::string>());
      } else {
        for (const auto& pair : s) c.sameas.emplace_back(pair.at(0), pair.at(1));
      }
    }
    if (j.contains("models")) {
      const auto& m = j.at("models");
      if (m.contains("rank")) c.rank_model = resolve_path(base_dir, m.at("rank"));
      if (m.contains("decision")) c.decision_model = resolve_path(base_dir, m.at("decision"));
    }
    if (j.contains("defaults")) {
      const auto& d = j.at("defaults");
      c.defaults.top_k = d.value("top_k", c.defaults.top_k);
      c.defaults.max_ngram = d.value("max_ngram", c.defaults.max_ngram);
      c.defaults.limit = d.value("limit", c.defaults.limit);
      c.defaults.cap = d.value("cap", c.defaults.cap);
      c.defaults.workers = d.value("workers", c.defaults.workers);
      c.defaults.theta1 = d.value("theta1", c.defaults.theta1);
      if (d.contains("theta2")) c.defaults.theta2 = d.at("theta2").get<double>();
      c.defaults.language = d.value("language", c.defaults.language);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  return c;
}

Config load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), file.parent_path());
}

}  // namespace kgqa
