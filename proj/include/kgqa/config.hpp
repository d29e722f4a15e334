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
#include <optional>
#include <string>
#include <vector>

#include "kgqa/lexicon.hpp"

namespace kgqa {

struct MiningConfig {
  std::filesystem::path corpus;  // TSV: entity IRI, abstract text
  std::vector<std::string> properties;
  std::size_t top_k = 5;
  std::string language = "en";
};

struct KbConfig {
  std::string name;
  std::vector<std::filesystem::path> dumps;
  LabelConfig labels;
  std::vector<std::filesystem::path> lexicon_snapshots;
  // TSV: surface, IRI, role, language[, label]; stemmed on load.
  std::vector<std::filesystem::path> manual_lexicons;
  std::optional<MiningConfig> mining;
};

struct Defaults {
  std::size_t top_k = 10;
  std::size_t max_ngram = 4;
  std::size_t limit = 1000;
  std::size_t cap = 10000;
  std::size_t workers = 4;
  double theta1 = 0.8;
  std::optional<double> theta2;  // overrides the decision model when set
  std::string language = "en";
};

struct Config {
  std::filesystem::path base_dir;
  std::vector<KbConfig> kbs;
  std::vector<std::string> languages;
  std::vector<std::pair<std::string, std::filesystem::path>> stopword_files;
  std::vector<SameAsLink> sameas;
  std::optional<std::filesystem::path> sameas_file;  // TSV: iri, iri
  std::optional<std::filesystem::path> rank_model;
  std::optional<std::filesystem::path> decision_model;
  Defaults defaults;

  const KbConfig* find_kb(std::string_view name) const;
};

// Relative paths resolve against the config file's directory. Throws
// ConfigError on unreadable files, bad JSON or missing fields.
Config load_config(const std::filesystem::path& file);
Config parse_config(std::string_view json_text, const std::filesystem::path& base_dir);

}  // namespace kgqa
