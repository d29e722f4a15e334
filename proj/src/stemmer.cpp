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

#include "kgqa/stemmer.hpp"

#include <array>
#include <cctype>
#include <span>

namespace kgqa {
namespace {

// Classic Porter (1980). `b` holds the word, `k` is the index of the last
// character of the current stem region, `j` the end of the candidate stem.
class Porter {
 public:
  explicit Porter(std::string_view w) : b_(w), k_(static_cast<int>(w.size()) - 1) {}

  std::string run() {
    if (k_ <= 1) return b_;
    for (char c : b_)
      if (!std::islower(static_cast<unsigned char>(c))) return b_;
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    return b_.substr(0, static_cast<std::size_t>(k_ + 1));
  }

 private:
  bool cons(int i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 ? true : !cons(i - 1);
      default: return true;
    }
  }

  // Number of VC sequences in b[0..j].
  int m() const {
    int n = 0, i = 0;
    while (true) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i)
      if (!cons(i)) return true;
    return false;
  }

  bool doublec(int j) const { return j >= 1 && b_[j] == b_[j - 1] && cons(j); }

  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    char ch = b_[i];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view s) {
    int len = static_cast<int>(s.size());
    if (len > k_ + 1) return false;
    if (std::string_view(b_).substr(static_cast<std::size_t>(k_ - len + 1), s.size()) != s)
      return false;
    j_ = k_ - len;
    return true;
  }

  void setto(std::string_view s) {
    b_.replace(static_cast<std::size_t>(j_ + 1), static_cast<std::size_t>(k_ - j_), s);
    k_ = j_ + static_cast<int>(s.size());
  }

  void r(std::string_view s) {
    if (m() > 0) setto(s);
  }

  void step1ab() {
    if (b_[k_] == 's') {
      if (ends("sses")) k_ -= 2;
      else if (ends("ies")) setto("i");
      else if (b_[k_ - 1] != 's') --k_;
    }
    if (ends("eed")) {
      if (m() > 0) --k_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      if (ends("at")) setto("ate");
      else if (ends("bl")) setto("ble");
      else if (ends("iz")) setto("ize");
      else if (doublec(k_)) {
        --k_;
        char ch = b_[k_];
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else if (m() == 1 && cvc(k_)) {
        setto("e");
      }
    }
    b_.resize(static_cast<std::size_t>(k_ + 1));
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[k_] = 'i';
  }

  struct Rule {
    std::string_view suffix, replacement;
  };

  bool apply(std::span<const Rule> rules) {
    for (const Rule& rule : rules) {
      if (ends(rule.suffix)) {
        r(rule.replacement);
        return true;
      }
    }
    return false;
  }

  void step2() {
    static constexpr Rule rules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},  {"anci", "ance"},
        {"izer", "ize"},    {"bli", "ble"},     {"alli", "al"},    {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"},
        {"logi", "log"}};
    if (k_ >= 1) apply(rules);
  }

  void step3() {
    static constexpr Rule rules[] = {{"icate", "ic"}, {"ative", ""}, {"alize", "al"},
                                     {"iciti", "ic"}, {"ical", "ic"}, {"ful", ""},
                                     {"ness", ""}};
    apply(rules);
  }

  void step4() {
    static constexpr std::string_view suffixes[] = {
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
        "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize"};
    for (std::string_view s : suffixes) {
      if (!ends(s)) continue;
      if (s == "ion" && !(j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't'))) return;
      // Longer suffixes sharing a tail ("ement" vs "ment" vs "ent") are
      // listed first so the first hit is the longest match.
      if (m() > 1) k_ = j_;
      return;
    }
  }

  void step5() {
    j_ = k_;
    if (b_[k_] == 'e') {
      int a = m();
      if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
    }
    if (b_[k_] == 'l' && doublec(k_) && m() > 1) --k_;
  }

  std::string b_;
  int k_;
  int j_ = 0;
};

struct Suffix {
  std::string_view suffix;
  std::string_view replacement;
};

// Strips the first (longest-listed) matching suffix leaving at least
// `min_stem` characters.
std::string strip(std::string_view w, std::span<const Suffix> table, std::size_t min_stem) {
  for (const Suffix& s : table) {
    if (w.size() >= s.suffix.size() + min_stem && w.ends_with(s.suffix)) {
      std::string out(w.substr(0, w.size() - s.suffix.size()));
      out += s.replacement;
      return out;
    }
  }
  return std::string(w);
}

}  // namespace

std::string porter_stem(std::string_view word) { return Porter(word).run(); }

std::string french_light_stem(std::string_view word) {
  static constexpr Suffix table[] = {
      {"issements", ""}, {"issement", ""}, {"atrices", ""}, {"atrice", ""}, {"ateurs", ""},
      {"ateur", ""},     {"ations", ""},   {"ation", ""},   {"ements", ""}, {"ement", ""},
      {"euses", ""},     {"euse", ""},     {"ences", ""},   {"ence", ""},   {"ances", ""},
      {"ance", ""},      {"istes", ""},    {"iste", ""},    {"ismes", ""},  {"isme", ""},
      {"ables", ""},     {"able", ""},     {"ments", ""},   {"ment", ""},   {"ives", ""},
      {"ive", ""},       {"ifs", ""},      {"eux", ""},     {"aux", "al"},  {"ees", ""},
      {"ee", ""},        {"es", ""},       {"er", ""},      {"e", ""},      {"s", ""},
      {"x", ""}};
  return strip(word, table, 3);
}

std::string german_light_stem(std::string_view word) {
  static constexpr Suffix table[] = {
      {"ungen", ""}, {"ung", ""}, {"heiten", ""}, {"heit", ""}, {"keiten", ""}, {"keit", ""},
      {"ern", ""},   {"em", ""},  {"en", ""},     {"er", ""},   {"es", ""},     {"e", ""},
      {"s", ""},     {"n", ""}};
  return strip(word, table, 3);
}

std::string italian_light_stem(std::string_view word) {
  static constexpr Suffix table[] = {
      {"amente", ""}, {"mente", ""}, {"azioni", ""}, {"azione", ""}, {"atori", ""},
      {"atore", ""},  {"iste", ""},  {"isti", ""},   {"ista", ""},   {"i", ""},
      {"e", ""},      {"a", ""},     {"o", ""}};
  return strip(word, table, 3);
}

std::string spanish_light_stem(std::string_view word) {
  static constexpr Suffix table[] = {
      {"amente", ""}, {"mente", ""}, {"aciones", ""}, {"acion", ""}, {"adores", ""},
      {"ador", ""},   {"istas", ""}, {"ista", ""},    {"es", ""},    {"s", ""},
      {"a", ""},      {"o", ""},     {"e", ""}};
  return strip(word, table, 3);
}

}  // namespace kgqa
