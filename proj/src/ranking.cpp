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

#include "kgqa/ranking.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "kgqa/errors.hpp"

namespace kgqa {

const std::array<const char*, kFeatureCount> kFeatureNames = {
    "words_covered", "edit_distance_sum", "relevance_sum", "num_variables", "num_triples"};

FeatureVector extract_features(const PatternQuery& q, std::span<const Match> matches,
                               std::span<const std::size_t> consumed,
                               const std::vector<bool>& countable) {
  FeatureVector f;
  std::set<std::size_t> covered;
  for (std::size_t i : consumed) {
    const Match& m = matches[i];
    for (std::size_t t = m.start; t < m.end && t < countable.size(); ++t)
      if (countable[t]) covered.insert(t);
    f.edit_distance_sum += static_cast<double>(m.edit_distance);
    f.relevance_sum += m.relevance;
  }
  f.words_covered = static_cast<double>(covered.size());
  f.num_variables = static_cast<double>(variable_count(q));
  f.num_triples = static_cast<double>(q.triples.size());
  return f;
}

std::vector<bool> countable_tokens(std::span<const std::string> tokens, const LanguagePack& pack) {
  std::vector<bool> out;
  for (const auto& t : tokens) out.push_back(!pack.is_stopword(t));
  return out;
}

std::array<double, kFeatureCount> normalize(const FeatureVector& f, const FeatureRanges& ranges) {
  auto raw = f.values();
  std::array<double, kFeatureCount> out{};
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    double width = ranges[i].max - ranges[i].min;
    if (width <= 0) continue;
    out[i] = std::clamp((raw[i] - ranges[i].min) / width, 0.0, 1.0);
  }
  return out;
}

FeatureRanges default_ranges() {
  return {FeatureRange{0, 5}, FeatureRange{0, 10}, FeatureRange{0, 1000}, FeatureRange{0, 5},
          FeatureRange{0, 5}};
}

FeatureRanges fit_ranges(std::span<const FeatureVector> features) {
  FeatureRanges out{};
  if (features.empty()) return out;
  auto first = features.front().values();
  for (std::size_t i = 0; i < kFeatureCount; ++i) out[i] = {first[i], first[i]};
  for (const auto& f : features) {
    auto v = f.values();
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      out[i].min = std::min(out[i].min, v[i]);
      out[i].max = std::max(out[i].max, v[i]);
    }
  }
  return out;
}

RankModel RankModel::manual() {
  RankModel m;
  m.weights = {0.4, -0.2, 0.2, -0.1, -0.1};
  return m;
}

double score(const RankModel& model, const FeatureVector& f) {
  auto x = normalize(f, model.ranges);
  double s = 0;
  for (std::size_t i = 0; i < kFeatureCount; ++i) s += model.weights[i] * x[i];
  return s;
}

namespace {

struct Order {
  std::span<const double> scores;
  std::span<const FeatureVector> features;
  std::span<const std::string> keys;

  bool operator()(std::size_t a, std::size_t b) const {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    const auto& fa = features[a];
    const auto& fb = features[b];
    if (fa.num_triples != fb.num_triples) return fa.num_triples < fb.num_triples;
    if (fa.num_variables != fb.num_variables) return fa.num_variables < fb.num_variables;
    if (!keys.empty() && keys[a] != keys[b]) return keys[a] < keys[b];
    return a < b;
  }
};

std::vector<double> scores_of(const RankModel& model, std::span<const FeatureVector> features) {
  std::vector<double> out;
  out.reserve(features.size());
  for (const auto& f : features) out.push_back(score(model, f));
  return out;
}

// 1-based position of the first best-F candidate, without a full sort.
std::size_t best_position(const RankModel& model, const RankingExample& ex) {
  auto scores = scores_of(model, ex.features);
  Order before{scores, ex.features, ex.keys};
  double best_f = *std::max_element(ex.f_scores.begin(), ex.f_scores.end());
  std::size_t top = ex.features.size();
  for (std::size_t i = 0; i < ex.features.size(); ++i)
    if (ex.f_scores[i] == best_f && (top == ex.features.size() || before(i, top))) top = i;
  std::size_t ahead = 0;
  for (std::size_t i = 0; i < ex.features.size(); ++i)
    if (i != top && before(i, top)) ++ahead;
  return ahead + 1;
}

bool discriminating(std::span<const RankingExample> examples) {
  for (const auto& ex : examples) {
    auto [lo, hi] = std::minmax_element(ex.f_scores.begin(), ex.f_scores.end());
    if (lo != ex.f_scores.end() && *lo != *hi) return true;
  }
  return false;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t feature_index(const std::string& name) {
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    if (name == kFeatureNames[i]) return i;
  throw ParseError("unknown feature '" + name + "'");
}

}  // namespace

std::vector<std::size_t> rank_by_scores(std::span<const double> scores,
                                        std::span<const FeatureVector> features,
                                        std::span<const std::string> keys) {
  std::vector<std::size_t> order(features.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), Order{scores, features, keys});
  return order;
}

std::vector<std::size_t> rank(const RankModel& model, std::span<const FeatureVector> features,
                              std::span<const std::string> keys) {
  auto scores = scores_of(model, features);
  return rank_by_scores(scores, features, keys);
}

void write_model(const RankModel& model, std::ostream& out) {
  out << "kgqa-rank-model 1\n";
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    out << "weight " << kFeatureNames[i] << ' ' << format_double(model.weights[i]) << '\n';
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    out << "range " << kFeatureNames[i] << ' ' << format_double(model.ranges[i].min) << ' '
        << format_double(model.ranges[i].max) << '\n';
}

RankModel read_rank_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "kgqa-rank-model 1")
    throw ParseError("not a rank model file");
  RankModel m;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string kind, name;
    row >> kind >> name;
    std::size_t i = feature_index(name);
    if (kind == "weight") {
      row >> m.weights[i];
    } else if (kind == "range") {
      row >> m.ranges[i].min >> m.ranges[i].max;
    } else {
      throw ParseError("unknown rank model line '" + line + "'");
    }
    if (row.fail()) throw ParseError("bad number in '" + line + "'");
  }
  return m;
}

double mean_reciprocal_rank(const RankModel& model, std::span<const RankingExample> examples) {
  double total = 0;
  std::size_t n = 0;
  for (const auto& ex : examples) {
    if (ex.features.empty()) continue;
    total += 1.0 / static_cast<double>(best_position(model, ex));
    ++n;
  }
  return n == 0 ? 0 : total / static_cast<double>(n);
}

namespace {

void climb(RankModel& m, double& best, std::span<const RankingExample> examples,
           const RankTrainOptions& options) {
  for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
    bool improved = false;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      for (double step : options.steps) {
        for (double dir : {1.0, -1.0}) {
          RankModel trial = m;
          trial.weights[i] += dir * step;
          double v = mean_reciprocal_rank(trial, examples);
          if (v > best) {
            m = trial;
            best = v;
            improved = true;
          }
        }
      }
    }
    if (!improved) break;
  }
}

}  // namespace

RankTrainResult train_rank(const RankModel& model_init, std::span<const RankingExample> examples,
                           const RankTrainOptions& options) {
  RankTrainResult result{model_init, mean_reciprocal_rank(model_init, examples), {}};
  if (!discriminating(examples)) {
    result.warnings.push_back("no question has candidates of different F; keeping initial model");
    return result;
  }

  FeatureRanges ranges = model_init.ranges;
  if (options.fit_ranges) {
    std::vector<FeatureVector> all;
    for (const auto& ex : examples) all.insert(all.end(), ex.features.begin(), ex.features.end());
    ranges = fit_ranges(all);
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::size_t start = 0; start <= options.restarts; ++start) {
    RankModel m;
    m.ranges = ranges;
    if (start == 0) {
      m.weights = model_init.weights;
    } else {
      for (double& w : m.weights) w = unit(rng);
    }
    double v = mean_reciprocal_rank(m, examples);
    climb(m, v, examples, options);
    if (v > result.mrr) {
      result.model = m;
      result.mrr = v;
    }
  }
  return result;
}

}  // namespace kgqa
