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

#include "kgqa/term.hpp"

#include <cctype>
#include <cstdint>

namespace kgqa {
namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool read_hex(std::string_view s, std::size_t pos, int digits, std::uint32_t& cp) {
  if (pos + digits > s.size()) return false;
  cp = 0;
  for (int i = 0; i < digits; ++i) {
    char c = s[pos + i];
    cp <<= 4;
    if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
    else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
    else return false;
  }
  return cp <= 0x10FFFF;
}

// Handles \uXXXX and \UXXXXXXXX at s[pos] == '\\'. Returns false if not a
// unicode escape or malformed.
bool read_unicode_escape(std::string_view s, std::size_t& pos, std::string& out) {
  if (pos + 1 >= s.size()) return false;
  char kind = s[pos + 1];
  int digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
  if (digits == 0) return false;
  std::uint32_t cp = 0;
  if (!read_hex(s, pos + 2, digits, cp)) return false;
  append_utf8(out, cp);
  pos += 2 + digits;
  return true;
}

std::optional<std::string> parse_iri(std::string_view s, std::size_t& pos) {
  ++pos;  // '<'
  std::string out;
  while (pos < s.size() && s[pos] != '>') {
    char c = s[pos];
    if (c == ' ' || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '`' ||
        static_cast<unsigned char>(c) < 0x20)
      return std::nullopt;
    if (c == '\\') {
      if (!read_unicode_escape(s, pos, out)) return std::nullopt;
      continue;
    }
    out.push_back(c);
    ++pos;
  }
  if (pos >= s.size() || out.empty()) return std::nullopt;
  ++pos;  // '>'
  return out;
}

std::optional<std::string> parse_quoted(std::string_view s, std::size_t& pos) {
  ++pos;  // '"'
  std::string out;
  while (pos < s.size() && s[pos] != '"') {
    char c = s[pos];
    if (c == '\n' || c == '\r') return std::nullopt;
    if (c != '\\') {
      out.push_back(c);
      ++pos;
      continue;
    }
    if (pos + 1 >= s.size()) return std::nullopt;
    switch (s[pos + 1]) {
      case 't': out.push_back('\t'); break;
      case 'b': out.push_back('\b'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case 'f': out.push_back('\f'); break;
      case '"': out.push_back('"'); break;
      case '\'': out.push_back('\''); break;
      case '\\': out.push_back('\\'); break;
      case 'u':
      case 'U':
        if (!read_unicode_escape(s, pos, out)) return std::nullopt;
        continue;
      default:
        return std::nullopt;
    }
    pos += 2;
  }
  if (pos >= s.size()) return std::nullopt;
  ++pos;  // closing '"'
  return out;
}

bool is_blank_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
         static_cast<unsigned char>(c) >= 0x80;
}

std::string escape_literal(std::string_view v) {
  std::string out;
  out.reserve(v.size() + 2);
  for (char c : v) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string Term::to_ntriples() const {
  switch (kind) {
    case TermKind::kIri:
      return "<" + value + ">";
    case TermKind::kBlank:
      return "_:" + value;
    case TermKind::kLiteral: {
      std::string out = "\"" + escape_literal(value) + "\"";
      if (!language.empty()) out += "@" + language;
      else if (!datatype.empty()) out += "^^<" + datatype + ">";
      return out;
    }
  }
  return {};
}

std::optional<Term> parse_ntriples_term(std::string_view s, std::size_t& pos) {
  if (pos >= s.size()) return std::nullopt;
  char c = s[pos];
  if (c == '<') {
    auto iri = parse_iri(s, pos);
    if (!iri) return std::nullopt;
    return Term::iri(std::move(*iri));
  }
  if (c == '_') {
    if (pos + 2 >= s.size() || s[pos + 1] != ':') return std::nullopt;
    pos += 2;
    std::size_t start = pos;
    while (pos < s.size() && is_blank_char(s[pos])) ++pos;
    // A trailing '.' terminates the statement, not the label.
    while (pos > start && s[pos - 1] == '.') --pos;
    if (pos == start) return std::nullopt;
    return Term::blank(std::string(s.substr(start, pos - start)));
  }
  if (c == '"') {
    auto value = parse_quoted(s, pos);
    if (!value) return std::nullopt;
    if (pos < s.size() && s[pos] == '@') {
      std::size_t start = ++pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '-'))
        ++pos;
      if (pos == start) return std::nullopt;
      std::string lang(s.substr(start, pos - start));
      for (char& ch : lang) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      return Term::literal(std::move(*value), std::move(lang));
    }
    if (pos + 1 < s.size() && s[pos] == '^' && s[pos + 1] == '^') {
      pos += 2;
      if (pos >= s.size() || s[pos] != '<') return std::nullopt;
      auto dt = parse_iri(s, pos);
      if (!dt) return std::nullopt;
      return Term::literal(std::move(*value), {}, std::move(*dt));
    }
    return Term::literal(std::move(*value));
  }
  return std::nullopt;
}

}  // namespace kgqa
