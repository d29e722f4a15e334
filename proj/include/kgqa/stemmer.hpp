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

#include <string>
#include <string_view>

namespace kgqa {

// Single-pass stemmers over folded lowercase tokens. LanguagePack applies
// them to a fixpoint so the composite stemmer is idempotent.
std::string porter_stem(std::string_view word);
std::string french_light_stem(std::string_view word);
std::string german_light_stem(std::string_view word);
std::string italian_light_stem(std::string_view word);
std::string spanish_light_stem(std::string_view word);

}  // namespace kgqa
