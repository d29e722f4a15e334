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

#include <httplib.h>

#include <json.hpp>
#include <thread>

#include "doctest.h"
#include "fixture.hpp"
#include "kgqa/http_api.hpp"

using namespace kgqa;
using nlohmann::json;

namespace {

class Running {
 public:
  explicit Running(const Engine& engine) : api_(engine) {
    port_ = api_.bind("127.0.0.1", 0);
    REQUIRE(port_ > 0);
    thread_ = std::thread([this] { api_.serve(); });
  }
  ~Running() {
    api_.stop();
    thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(10);
    return c;
  }

 private:
  HttpApi api_;
  int port_ = -1;
  std::thread thread_;
};

}  // namespace

TEST_SUITE("http") {
  TEST_CASE("health and kb listing") {
    const Engine& engine = testing::fixture_engine();
    Running server(engine);
    auto c = server.client();
    auto health = c.Get("/health");
    REQUIRE(health);
    CHECK(health->status == 200);
    CHECK(json::parse(health->body).at("status") == "ok");

    auto kbs = c.Get("/kbs");
    REQUIRE(kbs);
    auto j = json::parse(kbs->body);
    REQUIRE(j.at("kbs").size() == 2);
    CHECK(j.at("kbs")[0].at("name") == "dbpedia");
    CHECK(j.at("kbs")[0].at("triples") == engine.store("dbpedia").triple_count());
    CHECK(j.at("languages").size() == 5);
    CHECK(kbs->get_header_value("Access-Control-Allow-Origin") == "*");
  }

  TEST_CASE("answer returns the same envelope as the engine") {
    const Engine& engine = testing::fixture_engine();
    Running server(engine);
    auto c = server.client();
    httplib::Params params{{"question", "Give me philosophers born in Saint Etienne"},
                           {"lang", "en"},
                           {"kb", "dbpedia,wikidata"},
                           {"top_k", "3"}};
    auto res = c.Get("/answer", params, httplib::Headers{});
    REQUIRE(res);
    CHECK(res->status == 200);
    auto j = json::parse(res->body);
    AnswerOptions opt = engine.defaults();
    opt.top_k = 3;
    std::vector<std::string> kbs{"dbpedia", "wikidata"};
    auto direct = engine.answer("Give me philosophers born in Saint Etienne", "en", kbs, opt);
    CHECK(j.at("answered") == direct.answered);
    CHECK(j.at("chosen_query") == direct.chosen_query);
    CHECK(j.at("answer_values") == direct.answer_values);
    CHECK(j.at("ranked_candidates").size() == 3);
    CHECK(j.at("confidence").get<double>() == direct.confidence);

    httplib::Params refuse{{"question", "Give me philosophers born in Saint Etienne"}, {"theta2", "0.9"}};
    auto low = c.Get("/answer", refuse, httplib::Headers{});
    REQUIRE(low);
    auto lj = json::parse(low->body);
    CHECK_FALSE(lj.at("answered").get<bool>());
    CHECK(lj.at("reason") == "low confidence");
    CHECK_FALSE(lj.at("ranked_candidates").empty());
  }

  TEST_CASE("bad requests") {
    Running server(testing::fixture_engine());
    auto c = server.client();
    auto missing = c.Get("/answer");
    REQUIRE(missing);
    CHECK(missing->status == 400);
    httplib::Params bad_kb{{"question", "x"}, {"kb", "nowhere"}};
    auto kb = c.Get("/answer", bad_kb, httplib::Headers{});
    REQUIRE(kb);
    CHECK(kb->status == 400);
    CHECK(json::parse(kb->body).contains("error"));
    httplib::Params bad_lang{{"question", "x"}, {"lang", "xx"}};
    CHECK(c.Get("/answer", bad_lang, httplib::Headers{})->status == 400);
    httplib::Params bad_num{{"question", "x"}, {"top_k", "many"}};
    CHECK(c.Get("/answer", bad_num, httplib::Headers{})->status == 400);
    auto unknown = c.Get("/nothing");
    REQUIRE(unknown);
    CHECK(unknown->status == 404);
  }
}
