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

#include "kgqa/sparql_endpoint.hpp"

#include <httplib.h>
#include <json.hpp>

#include "kgqa/errors.hpp"

namespace kgqa {

SparqlEndpoint::SparqlEndpoint(std::string url) {
  auto scheme = url.find("://");
  if (scheme == std::string::npos) throw ConfigError("endpoint URL needs a scheme: " + url);
  auto slash = url.find('/', scheme + 3);
  origin_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
}

EndpointResult parse_sparql_results(const std::string& json_text) {
  EndpointResult out;
  try {
    auto j = nlohmann::json::parse(json_text);
    if (j.contains("boolean")) {
      out.boolean = j.at("boolean").get<bool>();
      return out;
    }
    for (const auto& binding : j.at("results").at("bindings"))
      for (const auto& [var, cell] : binding.items())
        out.values.push_back(cell.at("value").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad SPARQL results: ") + e.what());
  }
  return out;
}

EndpointResult SparqlEndpoint::query(const std::string& sparql) const {
  httplib::Client client(origin_);
  client.set_connection_timeout(5);
  client.set_read_timeout(30);
  httplib::Params params{{"query", sparql}};
  httplib::Headers headers{{"Accept", "application/sparql-results+json"}};
  auto res = client.Get(path_, params, headers);
  if (!res) throw Error("endpoint " + origin_ + " unreachable");
  if (res->status != 200)
    throw Error("endpoint returned HTTP " + std::to_string(res->status));
  return parse_sparql_results(res->body);
}

}  // namespace kgqa
