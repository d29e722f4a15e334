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

// The data/ fixture: mini DBpedia and Wikidata excerpts, lexicon inputs and
// a QALD-format question set.

#include <filesystem>

#include "kgqa/benchmark.hpp"
#include "kgqa/config.hpp"
#include "kgqa/engine.hpp"

namespace kgqa::testing {

std::filesystem::path data_dir();

// data/config.json with model paths cleared, so runs never pick up files
// written by an earlier `kgqa train`.
Config fixture_config();

// Loaded once per process; the engine is immutable after load.
const Engine& fixture_engine();

Dataset fixture_dataset();

}  // namespace kgqa::testing
