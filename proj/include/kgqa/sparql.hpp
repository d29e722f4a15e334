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

#include "kgqa/pattern_query.hpp"
#include "kgqa/triple_store.hpp"

namespace kgqa {

// SPARQL text with full IRIs. Variables are named by first appearance:
// ?x ?y ?z ?w for vertex positions, ?p ?q for predicates.
std::string to_sparql(const TripleStore& store, const PatternQuery& q);
std::string to_sparql(const PortableQuery& q);

}  // namespace kgqa
