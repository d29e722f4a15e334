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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "kgqa/decision.hpp"
#include "kgqa/errors.hpp"

using namespace kgqa;

namespace {

// Direct weighted negative log-likelihood with log1p, independent of the library.
double reference_loss(const LogisticProblem& p, const LogisticParams& t) {
  double total = 0, mass = 0;
  for (std::size_t k = 0; k < p.x.size(); ++k) {
    double z = t[5];
    for (int i = 0; i < 5; ++i) z += t[i] * p.x[k][i];
    double s = 1.0 / (1.0 + std::exp(-z));
    double w = p.sample_weight.empty() ? 1.0 : p.sample_weight[k];
    total += -w * (p.y[k] * std::log(s) + (1 - p.y[k]) * std::log1p(-s));
    mass += w;
  }
  double penalty = 0;
  for (int i = 0; i < 5; ++i) penalty += t[i] * t[i];
  return total / mass + 0.5 * p.lambda * penalty;
}

LogisticProblem random_problem(std::mt19937_64& rng, std::size_t n, bool weighted = false) {
  std::uniform_real_distribution<double> u(0, 1);
  LogisticProblem p;
  for (std::size_t k = 0; k < n; ++k) {
    p.x.push_back({u(rng), u(rng), u(rng), u(rng), u(rng)});
    p.y.push_back(rng() % 2 ? 1.0 : 0.0);
    if (weighted) p.sample_weight.push_back(0.1 + 4 * u(rng));
  }
  p.lambda = 1e-2;
  return p;
}

}  // namespace

TEST_SUITE("decision") {
  TEST_CASE("loss matches the direct likelihood") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 50; ++round) {
      auto p = random_problem(rng, 20, round % 2 == 1);
      LogisticParams t;
      for (double& v : t) v = std::uniform_real_distribution<double>(-3, 3)(rng);
      CHECK(p.loss(t) == doctest::Approx(reference_loss(p, t)).epsilon(1e-12));
    }
  }

  TEST_CASE("gradient agrees with central finite differences") {
    std::mt19937_64 rng(43);
    for (int round = 0; round < 50; ++round) {
      auto p = random_problem(rng, 25, round % 2 == 1);
      LogisticParams t;
      for (double& v : t) v = std::uniform_real_distribution<double>(-2, 2)(rng);
      auto g = p.gradient(t);
      double diff = 0, norm = 0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const double h = 1e-5;
        auto up = t, down = t;
        up[i] += h;
        down[i] -= h;
        double fd = (p.loss(up) - p.loss(down)) / (2 * h);
        diff += (g[i] - fd) * (g[i] - fd);
        norm += g[i] * g[i];
      }
      CHECK(std::sqrt(diff) <= 1e-6 * std::sqrt(norm));
    }
  }

  TEST_CASE("gate refuses below theta2 on constructed cases") {
    DecisionModel m;
    m.bias = std::log(0.3 / 0.7);
    FeatureVector f{};
    CHECK(confidence(m, f) == doctest::Approx(0.3));
    m.theta2 = 0.5;
    auto refused = gate(m, f);
    CHECK_FALSE(refused.answer);
    CHECK(refused.confidence == doctest::Approx(0.3));
    m.theta2 = 0.25;
    CHECK(gate(m, f).answer);
    m.theta2 = 0.3 + 1e-9;
    CHECK_FALSE(gate(m, f).answer);

    DecisionModel w;
    w.weights = {4, 0, 0, 0, 0};
    w.bias = -2;
    w.theta2 = 0.5;
    CHECK_FALSE(gate(w, {1, 0, 0, 0, 0}).answer);  // 1/5 normalized: z = -1.2
    CHECK(gate(w, {4, 0, 0, 0, 0}).answer);        // z = 1.2
  }

  TEST_CASE("raising theta2 never turns a refusal into an answer") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int round = 0; round < 200; ++round) {
      DecisionModel m;
      for (double& w : m.weights) w = u(rng);
      m.bias = u(rng);
      FeatureVector f{double(rng() % 6), double(rng() % 11), double(rng() % 1000), double(rng() % 6),
                      double(1 + rng() % 2)};
      bool previous = true;
      for (double t = 0; t <= 1.0; t += 0.05) {
        m.theta2 = t;
        bool now = gate(m, f).answer;
        CHECK((previous || !now));
        previous = now;
      }
    }
  }

  TEST_CASE("the untrained model answers at the default threshold") {
    DecisionModel m;
    CHECK(confidence(m, {3, 1, 2, 1, 1}) == 0.5);
    CHECK(gate(m, {3, 1, 2, 1, 1}).answer);
  }

  TEST_CASE("training separates good from bad candidates") {
    std::vector<DecisionExample> train;
    std::mt19937_64 rng(53);
    for (int i = 0; i < 80; ++i) {
      bool good = i % 2 == 0;
      FeatureVector f{good ? 3.0 + rng() % 3 : double(rng() % 2), double(rng() % 4), 100, 1 + double(rng() % 2), 1};
      train.push_back({f, good ? 1.0 : 0.2});
    }
    auto m = train_decision(train, 0.8);
    CHECK(m.theta1 == 0.8);
    CHECK(m.theta2 == 0.5);
    CHECK(m.weights[0] > 0);
    std::size_t correct = 0;
    for (const auto& ex : train) correct += gate(m, ex.features).answer == (ex.f_score > 0.8);
    CHECK(correct == train.size());

    LogisticProblem p;
    for (const auto& ex : train) {
      p.x.push_back(normalize(ex.features, m.ranges));
      p.y.push_back(ex.f_score > 0.8);
    }
    LogisticParams zero{};
    LogisticParams learned{m.weights[0], m.weights[1], m.weights[2], m.weights[3], m.weights[4], m.bias};
    CHECK(p.loss(learned) < p.loss(zero));
    CHECK(train_decision(train, 0.8) == m);
  }

  TEST_CASE("balanced training keeps a rare good class above theta2") {
    std::vector<DecisionExample> train;
    std::mt19937_64 rng(59);
    for (int i = 0; i < 200; ++i) {
      bool good = i % 25 == 0;
      FeatureVector f{good ? 3.0 + rng() % 2 : double(rng() % 4), double(rng() % 4), 100, 1, 1};
      train.push_back({f, good ? 1.0 : 0.0});
    }
    auto balanced = train_decision(train, 0.8);
    DecisionTrainOptions plain;
    plain.balance_classes = false;
    auto unbalanced = train_decision(train, 0.8, plain);
    std::size_t kept_balanced = 0, kept_plain = 0;
    for (const auto& ex : train) {
      if (ex.f_score <= 0.8) continue;
      kept_balanced += gate(balanced, ex.features).answer;
      kept_plain += gate(unbalanced, ex.features).answer;
    }
    CHECK(kept_balanced == 8);
    CHECK(kept_balanced >= kept_plain);
  }

  TEST_CASE("a single-class training set is degenerate") {
    std::vector<DecisionExample> train{{{1, 0, 0, 1, 1}, 1.0}, {{2, 0, 0, 1, 1}, 0.9}};
    CHECK_THROWS_AS(train_decision(train, 0.8), DegenerateModelError);
    CHECK_THROWS_AS(train_decision({}, 0.8), DegenerateModelError);
  }

  TEST_CASE("model file round trip") {
    DecisionModel m;
    m.weights = {0.1, -2.5, 1.0 / 7.0, 0, 3};
    m.bias = -0.125;
    m.theta1 = 0.75;
    m.theta2 = 0.6;
    m.ranges[2] = {3, 900};
    std::stringstream io;
    write_model(m, io);
    CHECK(read_decision_model(io) == m);
    std::istringstream bad("kgqa-decision-model 1\nbias x\n");
    CHECK_THROWS_AS(read_decision_model(bad), ParseError);
  }
}
