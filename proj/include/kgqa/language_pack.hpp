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

#include <filesystem>
#include <map>
#include <regex>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgqa/pattern_query.hpp"

namespace kgqa {

using StemFunction = std::string (*)(std::string_view);

// Everything language-specific the engine needs: stop words, a stemmer and
// the question-prefix patterns that pick the query form.
struct LanguagePack {
  std::string language;
  std::set<std::string, std::less<>> stopwords;  // folded lowercase
  StemFunction stemmer = nullptr;
  std::vector<std::regex> ask_prefixes;
  std::vector<std::regex> count_prefixes;

  bool is_stopword(std::string_view token) const;
  // Applies the base stemmer until the token stops changing.
  std::string stem(std::string_view token) const;
  // Stems every token, joins with single spaces.
  std::string key(std::span<const std::string> tokens) const;
};

// Built-in packs for en, fr, de, it, es. Throws ConfigError otherwise.
LanguagePack builtin_pack(std::string_view language);
std::vector<std::string> builtin_languages();

// One token per line; blank lines and '#' comments ignored; tokens folded.
std::set<std::string, std::less<>> load_stopwords(const std::filesystem::path& file);

using LanguagePacks = std::map<std::string, LanguagePack, std::less<>>;

// Picks SELECT/ASK/COUNT from the start of the question: ASK prefixes are
// tried first, then COUNT; anything else (keyword questions included) is
// SELECT.
QueryForm decide_form(std::string_view question, const LanguagePack& pack);

}  // namespace kgqa
