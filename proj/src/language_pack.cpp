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

#include "kgqa/language_pack.hpp"

#include <fstream>
#include <sstream>

#include "kgqa/errors.hpp"
#include "kgqa/stemmer.hpp"
#include "kgqa/text.hpp"

namespace kgqa {
namespace {

constexpr std::string_view kEnglishStop =
    // Lucene English set
    "a an and are as at be but by for if in into is it no not of on or such that the their "
    "then there these they this to was will with "
    // frequent question words
    "what which give me who whom whose where when how many much list show tell name did does "
    "do has have had were been all some please i you us we can could would s";

constexpr std::string_view kFrenchStop =
    "au aux avec ce ces dans de des du elle en et eux il je la le les leur lui ma mais me meme "
    "mes moi mon ne nos notre nous on ou par pas pour qu que qui sa se ses son sur ta te tes toi "
    "ton tu un une vos votre vous c d j l a m n s t y ete etre suis es est sommes etes sont "
    "ai as avons avez ont avait "
    "quel quelle quels quelles quoi donne donnez donne-moi combien quand comment liste";

constexpr std::string_view kGermanStop =
    "aber alle als am an auch auf aus bei bin bis bist da dadurch daher darum das dass dein deine "
    "dem den der des dessen deshalb die dies dieser dieses doch dort du durch ein eine einem "
    "einen einer eines er es euer eure fur hatte hatten hattest hattet hier hinter ich ihr ihre "
    "im in ist ja jede jedem jeden jeder jedes jener jenes jetzt kann kannst konnen konnt machen "
    "mein meine mit muss musst nach nachdem nein nicht nun oder seid sein seine sich sie sind "
    "soll sollen sollst sollt sonst soweit sowie und unser unsere unter vom von vor wann warum "
    "was weiter weitere wenn wer werde werden werdet weshalb wie wieder wieso wir wird wirst wo "
    "woher wohin zu zum zur uber gib gibt mir welche welcher welches wieviele viele nenne zeige";

constexpr std::string_view kItalianStop =
    "a ad al allo ai agli all agl alla alle con col coi da dal dallo dai dagli dall dagl dalla "
    "dalle di del dello dei degli dell degl della delle in nel nello nei negli nell negl nella "
    "nelle su sul sullo sui sugli sull sugl sulla sulle per tra contro io tu lui lei noi voi "
    "loro mio mia miei mie tuo tua tuoi tue suo sua suoi sue nostro nostra nostri nostre vostro "
    "vostra vostri vostre mi ti ci vi lo la li le gli ne il un uno una ma ed se perche anche "
    "come dov dove che chi cui non piu quale quali quanto quanti quanta quante quello quelli "
    "quella quelle questo questi questa queste si tutto tutti e era sono ha hanno dammi dimmi "
    "elenca";

constexpr std::string_view kSpanishStop =
    "de la que el en y a los del se las por un para con no una su al lo como mas pero sus le ya "
    "o este si porque esta entre cuando muy sin sobre tambien me hasta hay donde quien desde "
    "todo nos durante todos uno les ni contra otros ese eso ante ellos e esto mi antes algunos "
    "unos yo otro otras otra tanto esa estos mucho quienes nada muchos cual cuales poco ella "
    "estar estas algunas algo nosotros dame dime muestra es son fue cuantos cuantas";

std::set<std::string, std::less<>> split_words(std::string_view words) {
  std::set<std::string, std::less<>> out;
  std::istringstream in{std::string(words)};
  std::string w;
  while (in >> w) out.insert(w);
  return out;
}

std::vector<std::regex> compile(std::initializer_list<const char*> patterns) {
  std::vector<std::regex> out;
  for (const char* p : patterns) out.emplace_back(p, std::regex::ECMAScript | std::regex::optimize);
  return out;
}

}  // namespace

bool LanguagePack::is_stopword(std::string_view token) const {
  return stopwords.find(token) != stopwords.end();
}

std::string LanguagePack::stem(std::string_view token) const {
  std::string current(token);
  if (!stemmer) return current;
  // Each pass either shortens the word or leaves it unchanged, so this ends.
  for (int i = 0; i < 32; ++i) {
    std::string next = stemmer(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

std::string LanguagePack::key(std::span<const std::string> tokens) const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += stem(tokens[i]);
  }
  return out;
}

std::vector<std::string> builtin_languages() { return {"en", "fr", "de", "it", "es"}; }

LanguagePack builtin_pack(std::string_view language) {
  LanguagePack p;
  p.language = std::string(language);
  if (language == "en") {
    p.stopwords = split_words(kEnglishStop);
    p.stemmer = &porter_stem;
    p.ask_prefixes = compile({R"(^(is|are|was|were|did|does|do|has|have|had|can|could|will|would|should)\b)"});
    p.count_prefixes = compile({R"(^how many\b)", R"(^count\b)"});
  } else if (language == "fr") {
    p.stopwords = split_words(kFrenchStop);
    p.stemmer = &french_light_stem;
    p.ask_prefixes = compile({R"(^(est-ce|est|sont|etait|etaient|a-t-il|a-t-elle|ont|y a-t-il)\b)"});
    p.count_prefixes = compile({R"(^combien\b)"});
  } else if (language == "de") {
    p.stopwords = split_words(kGermanStop);
    p.stemmer = &german_light_stem;
    p.ask_prefixes = compile({R"(^(ist|sind|war|waren|hat|haben|hatte|gibt es|kann|wurde)\b)"});
    p.count_prefixes = compile({R"(^wie ?viele\b)"});
  } else if (language == "it") {
    p.stopwords = split_words(kItalianStop);
    p.stemmer = &italian_light_stem;
    p.ask_prefixes = compile({R"(^(e|sono|era|erano|ha|hanno|c'e)\b)"});
    p.count_prefixes = compile({R"(^quant[ieao]\b)"});
  } else if (language == "es") {
    p.stopwords = split_words(kSpanishStop);
    p.stemmer = &spanish_light_stem;
    p.ask_prefixes = compile({R"(^(es|son|era|eran|fue|hay|tiene|tienen|esta|estan)\b)"});
    p.count_prefixes = compile({R"(^cuant[oa]s?\b)"});
  } else {
    throw ConfigError("no built-in language pack for '" + std::string(language) + "'");
  }
  return p;
}

std::set<std::string, std::less<>> load_stopwords(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open stop-word list '" + file.string() + "'");
  std::set<std::string, std::less<>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    for (auto& tok : tokenize(line)) out.insert(std::move(tok));
  }
  return out;
}

QueryForm decide_form(std::string_view question, const LanguagePack& pack) {
  std::string start = fold(question);
  auto first = start.find_first_not_of(" \t\r\n\"'");
  start.erase(0, first == std::string::npos ? start.size() : first);
  for (const auto& re : pack.ask_prefixes)
    if (std::regex_search(start, re, std::regex_constants::match_continuous)) return QueryForm::kAsk;
  for (const auto& re : pack.count_prefixes)
    if (std::regex_search(start, re, std::regex_constants::match_continuous)) return QueryForm::kCount;
  return QueryForm::kSelect;
}

}  // namespace kgqa
