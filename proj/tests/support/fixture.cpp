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

#include "fixture.hpp"

namespace kgqa::testing {

std::filesystem::path data_dir() { return KGQA_DATA_DIR; }

Config fixture_config() {
  Config c = load_config(data_dir() / "config.json");
  c.rank_model.reset();
  c.decision_model.reset();
  return c;
}

const Engine& fixture_engine() {
  static const Engine engine = Engine::load(fixture_config());
  return engine;
}

Dataset fixture_dataset() { return load_qald(data_dir() / "qald_fixture.json"); }

}  // namespace kgqa::testing
