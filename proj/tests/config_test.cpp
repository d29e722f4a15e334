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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixture.hpp"
#include "kgqa/config.hpp"
#include "kgqa/errors.hpp"

using namespace kgqa;

TEST_SUITE("config") {
  TEST_CASE("the fixture config parses with paths under its directory") {
    auto c = load_config(testing::data_dir() / "config.json");
    REQUIRE(c.kbs.size() == 2);
    const KbConfig* db = c.find_kb("dbpedia");
    REQUIRE(db);
    CHECK(db->dumps.front() == testing::data_dir() / "dbpedia_mini.nt");
    REQUIRE(db->labels.label_predicates.size() == 2);
    CHECK(db->labels.label_predicates[0].languages.size() == 5);
    CHECK(db->labels.label_predicates[1].languages.empty());
    REQUIRE(db->mining);
    CHECK(db->mining->top_k == 3);
    CHECK(c.sameas_file == testing::data_dir() / "sameas.tsv");
    CHECK(c.rank_model == testing::data_dir() / "models/rank.model");
    CHECK(c.defaults.theta1 == 0.8);
    CHECK_FALSE(c.defaults.theta2);
    CHECK(c.find_kb("nope") == nullptr);
  }

  TEST_CASE("inline sameAs pairs and defaults") {
    auto c = parse_config(R"({"kbs": [{"name": "a", "dumps": ["/abs/a.nt"]}],
                              "sameas": [["urn:x", "urn:y"]],
                              "defaults": {"theta2": 0.7, "top_k": 3}})",
                          "/base");
    CHECK(c.kbs[0].dumps[0] == "/abs/a.nt");
    CHECK(c.sameas == std::vector<SameAsLink>{{"urn:x", "urn:y"}});
    CHECK(c.languages == std::vector<std::string>{"en"});
    REQUIRE(c.defaults.theta2);
    CHECK(*c.defaults.theta2 == 0.7);
    CHECK(c.defaults.top_k == 3);
    CHECK(c.defaults.max_ngram == 4);
  }

  TEST_CASE("malformed configs are rejected") {
    CHECK_THROWS_AS(parse_config("{", "."), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kbs": []})", "."), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kbs": [{"name": "a"}]})", "."), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kbs": [{"dumps": ["x"]}]})", "."), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"kbs": [{"name": "a", "dumps": 3}]})", "."), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  }

  TEST_CASE("engine load reports absent label predicates and undeclared languages") {
    std::vector<std::string> warnings;
    auto engine = Engine::load(testing::fixture_config(), &warnings);
    bool foaf = false;
    for (const auto& w : warnings) foaf = foaf || w.find("foaf/0.1/name") != std::string::npos;
    CHECK(foaf);

    auto c = testing::fixture_config();
    c.languages = {"en"};
    CHECK_THROWS_AS(Engine::load(c), ConfigError);
  }

  TEST_CASE("bad manual lexicon lines are config errors") {
    auto dir = std::filesystem::temp_directory_path() / "kgqa_config_test";
    std::filesystem::create_directories(dir);
    {
      std::ofstream out(dir / "bad.tsv");
      out << "born\thttp://dbpedia.org/ontology/birthPlace\n";
    }
    auto c = testing::fixture_config();
    c.kbs[0].manual_lexicons = {dir / "bad.tsv"};
    CHECK_THROWS_AS(Engine::load(c), ConfigError);
    c.kbs[0].manual_lexicons = {dir / "missing.tsv"};
    CHECK_THROWS_AS(Engine::load(c), ConfigError);
    std::filesystem::remove_all(dir);
  }
}
