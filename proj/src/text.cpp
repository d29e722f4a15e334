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

#include "kgqa/text.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>

namespace kgqa {
namespace {

struct Decoded {
  std::uint32_t cp;
  std::size_t len;
};

Decoded decode(std::string_view s, std::size_t i) {
  auto b = static_cast<unsigned char>(s[i]);
  auto cont = [&](std::size_t k) -> int {
    if (i + k >= s.size()) return -1;
    auto c = static_cast<unsigned char>(s[i + k]);
    return (c & 0xC0) == 0x80 ? (c & 0x3F) : -1;
  };
  if (b < 0x80) return {b, 1};
  if ((b & 0xE0) == 0xC0) {
    int c1 = cont(1);
    if (c1 >= 0) return {(std::uint32_t(b & 0x1F) << 6) | std::uint32_t(c1), 2};
  } else if ((b & 0xF0) == 0xE0) {
    int c1 = cont(1), c2 = cont(2);
    if (c1 >= 0 && c2 >= 0)
      return {(std::uint32_t(b & 0x0F) << 12) | (std::uint32_t(c1) << 6) | std::uint32_t(c2), 3};
  } else if ((b & 0xF8) == 0xF0) {
    int c1 = cont(1), c2 = cont(2), c3 = cont(3);
    if (c1 >= 0 && c2 >= 0 && c3 >= 0)
      return {(std::uint32_t(b & 0x07) << 18) | (std::uint32_t(c1) << 12) |
                  (std::uint32_t(c2) << 6) | std::uint32_t(c3),
              4};
  }
  return {0xFFFD, 1};
}

// Folding for U+00C0..U+00FF, indexed from 0xC0. Empty means "not a letter".
constexpr const char* kLatin1[64] = {
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", "",  "o", "u", "u", "u", "u", "y", "th", "ss",
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", "",  "o", "u", "u", "u", "u", "y", "th", "y"};

struct Range {
  std::uint32_t first, last;
  const char* folded;
};

// U+0100..U+017F.
constexpr Range kLatinExtA[] = {
    {0x100, 0x105, "a"}, {0x106, 0x10D, "c"},  {0x10E, 0x111, "d"}, {0x112, 0x11B, "e"},
    {0x11C, 0x123, "g"}, {0x124, 0x127, "h"},  {0x128, 0x131, "i"}, {0x132, 0x133, "ij"},
    {0x134, 0x135, "j"}, {0x136, 0x138, "k"},  {0x139, 0x142, "l"}, {0x143, 0x14B, "n"},
    {0x14C, 0x151, "o"}, {0x152, 0x153, "oe"}, {0x154, 0x159, "r"}, {0x15A, 0x161, "s"},
    {0x162, 0x167, "t"}, {0x168, 0x173, "u"},  {0x174, 0x175, "w"}, {0x176, 0x178, "y"},
    {0x179, 0x17E, "z"}, {0x17F, 0x17F, "s"}};

enum class Kind { kLetter, kSeparator };

// Folds one code point. Letters append to `out`; separators append nothing.
Kind fold_cp(std::uint32_t cp, std::string_view raw, std::string& out) {
  if (cp < 0x80) {
    auto c = static_cast<unsigned char>(cp);
    if (std::isalnum(c)) {
      out.push_back(static_cast<char>(std::tolower(c)));
      return Kind::kLetter;
    }
    return Kind::kSeparator;
  }
  if (cp < 0xC0 || cp == 0xD7 || cp == 0xF7) return Kind::kSeparator;
  if (cp <= 0xFF) {
    out += kLatin1[cp - 0xC0];
    return Kind::kLetter;
  }
  for (const Range& r : kLatinExtA) {
    if (cp >= r.first && cp <= r.last) {
      out += r.folded;
      return Kind::kLetter;
    }
  }
  // General punctuation, CJK punctuation, replacement character.
  if ((cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x3000 && cp <= 0x303F) || cp == 0xFFFD ||
      cp == 0xFEFF)
    return Kind::kSeparator;
  out.append(raw);
  return Kind::kLetter;
}

template <class F>
void scan(std::string_view s, F&& on_cp) {
  for (std::size_t i = 0; i < s.size();) {
    Decoded d = decode(s, i);
    on_cp(d.cp, s.substr(i, d.len));
    i += d.len;
  }
}

}  // namespace

std::string fold(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  scan(utf8, [&](std::uint32_t cp, std::string_view raw) {
    if (fold_cp(cp, raw, out) == Kind::kSeparator) out.append(raw);
  });
  return out;
}

std::vector<std::string> tokenize(std::string_view utf8) {
  std::vector<std::string> tokens;
  std::string current;
  scan(utf8, [&](std::uint32_t cp, std::string_view raw) {
    if (fold_cp(cp, raw, current) == Kind::kSeparator && !current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  });
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string join(std::span<const std::string> tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.append(sep);
    out += tokens[i];
  }
  return out;
}

std::string normalize_phrase(std::string_view utf8) { return join(tokenize(utf8)); }

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace kgqa
