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

#include "kgqa/http_api.hpp"

#include <httplib.h>

#include "kgqa/errors.hpp"

namespace kgqa {
namespace {

using nlohmann::json;

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_content(body.dump(), "application/json");
}

std::vector<std::string> split_kbs(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!part.empty()) out.push_back(part);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

struct HttpApi::Impl {
  const Engine& engine;
  httplib::Server server;

  explicit Impl(const Engine& e) : engine(e) {
    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      reply(res, 200, {{"status", "ok"}});
    });
    server.Get("/kbs", [this](const httplib::Request&, httplib::Response& res) {
      json kbs = json::array();
      for (const auto& s : engine.stores())
        kbs.push_back({{"name", s->name()}, {"triples", s->triple_count()}, {"terms", s->term_count()}});
      json languages = json::array();
      for (const auto& [lang, pack] : engine.packs()) languages.push_back(lang);
      reply(res, 200, {{"kbs", kbs}, {"languages", languages}});
    });
    server.Get("/answer", [this](const httplib::Request& req, httplib::Response& res) {
      if (!req.has_param("question")) {
        reply(res, 400, {{"error", "missing 'question' parameter"}});
        return;
      }
      std::string lang = req.has_param("lang") ? req.get_param_value("lang") : "en";
      std::vector<std::string> kbs;
      if (req.has_param("kb")) kbs = split_kbs(req.get_param_value("kb"));
      AnswerOptions options = engine.defaults();
      try {
        if (req.has_param("top_k")) options.top_k = std::stoul(req.get_param_value("top_k"));
        if (req.has_param("max_ngram")) options.max_ngram = std::stoul(req.get_param_value("max_ngram"));
        if (req.has_param("theta2")) options.theta2 = std::stod(req.get_param_value("theta2"));
      } catch (const std::exception&) {
        reply(res, 400, {{"error", "bad numeric parameter"}});
        return;
      }
      try {
        reply(res, 200, to_json(engine.answer(req.get_param_value("question"), lang, kbs, options)));
      } catch (const ConfigError& e) {
        reply(res, 400, {{"error", e.what()}});
      } catch (const ContractViolation& e) {
        reply(res, 400, {{"error", e.what()}});
      } catch (const Error& e) {
        reply(res, 500, {{"error", e.what()}});
      }
    });
  }
};

HttpApi::HttpApi(const Engine& engine) : impl_(std::make_unique<Impl>(engine)) {}
HttpApi::~HttpApi() = default;

int HttpApi::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpApi::serve() { return impl_->server.listen_after_bind(); }

void HttpApi::stop() { impl_->server.stop(); }

}  // namespace kgqa
