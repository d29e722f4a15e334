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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kgqa {

// Lowercases ASCII and folds Latin-1 / Latin Extended-A letters to their
// ASCII base ("Étienne" -> "etienne", "ß" -> "ss"). Other code points are
// kept unchanged.
std::string fold(std::string_view utf8);

// Splits on whitespace and punctuation (hyphens and apostrophes included)
// after folding. Question labels and lexicon labels go through the same
// function so their tokens line up.
std::vector<std::string> tokenize(std::string_view utf8);

std::string join(std::span<const std::string> tokens, std::string_view sep = " ");

// Token sequence of `text` joined by single spaces.
std::string normalize_phrase(std::string_view utf8);

std::size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace kgqa
