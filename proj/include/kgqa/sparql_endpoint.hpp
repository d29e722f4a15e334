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

#include <optional>
#include <string>
#include <vector>

namespace kgqa {

struct EndpointResult {
  std::vector<std::string> values;  // every bound value, all variables
  std::optional<bool> boolean;      // ASK
};

// Runs SPARQL text against a remote endpoint (plain HTTP GET with
// application/sparql-results+json). Throws Error on transport or format
// failures.
class SparqlEndpoint {
 public:
  explicit SparqlEndpoint(std::string url);
  EndpointResult query(const std::string& sparql) const;

 private:
  std::string origin_;  // scheme://host[:port]
  std::string path_;
};

// Parses a SPARQL JSON results document.
EndpointResult parse_sparql_results(const std::string& json_text);

}  // namespace kgqa
