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

#include "kgqa/decision.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "kgqa/errors.hpp"

namespace kgqa {
namespace {

double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double linear(const LogisticParams& theta, const std::array<double, kFeatureCount>& x) {
  double z = theta[kFeatureCount];
  for (std::size_t i = 0; i < kFeatureCount; ++i) z += theta[i] * x[i];
  return z;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double confidence(const DecisionModel& model, const FeatureVector& f) {
  LogisticParams theta{};
  for (std::size_t i = 0; i < kFeatureCount; ++i) theta[i] = model.weights[i];
  theta[kFeatureCount] = model.bias;
  return logistic(linear(theta, normalize(f, model.ranges)));
}

GateResult gate(const DecisionModel& model, const FeatureVector& top) {
  double c = confidence(model, top);
  return {c >= model.theta2, c};
}

double LogisticProblem::weight(std::size_t k) const {
  return sample_weight.empty() ? 1.0 : sample_weight[k];
}

double LogisticProblem::loss(const LogisticParams& theta) const {
  double total = 0, mass = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double z = linear(theta, x[k]);
    double w = weight(k);
    // -[y log s(z) + (1-y) log(1-s(z))] = softplus(z) - y z
    total += w * (softplus(z) - y[k] * z);
    mass += w;
  }
  double mean = mass > 0 ? total / mass : 0;
  double penalty = 0;
  for (std::size_t i = 0; i < kFeatureCount; ++i) penalty += theta[i] * theta[i];
  return mean + 0.5 * lambda * penalty;
}

LogisticParams LogisticProblem::gradient(const LogisticParams& theta) const {
  LogisticParams g{};
  double mass = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double w = weight(k);
    double r = w * (logistic(linear(theta, x[k])) - y[k]);
    for (std::size_t i = 0; i < kFeatureCount; ++i) g[i] += r * x[k][i];
    g[kFeatureCount] += r;
    mass += w;
  }
  if (mass > 0)
    for (double& v : g) v /= mass;
  for (std::size_t i = 0; i < kFeatureCount; ++i) g[i] += lambda * theta[i];
  return g;
}

DecisionModel train_decision(std::span<const DecisionExample> training, double theta1,
                             const DecisionTrainOptions& options) {
  std::vector<FeatureVector> features;
  for (const auto& ex : training) features.push_back(ex.features);

  DecisionModel model;
  model.theta1 = theta1;
  model.theta2 = options.theta2;
  model.ranges = fit_ranges(features);

  LogisticProblem problem;
  problem.lambda = options.lambda;
  std::size_t positives = 0;
  for (const auto& ex : training) {
    problem.x.push_back(normalize(ex.features, model.ranges));
    bool label = ex.f_score > theta1;
    problem.y.push_back(label ? 1.0 : 0.0);
    positives += label;
  }
  if (positives == 0 || positives == training.size())
    throw DegenerateModelError("decision training set has a single class at theta1 = " +
                               format_double(theta1));
  if (options.balance_classes) {
    double n = static_cast<double>(training.size());
    double w_pos = n / (2.0 * static_cast<double>(positives));
    double w_neg = n / (2.0 * static_cast<double>(training.size() - positives));
    for (double label : problem.y) problem.sample_weight.push_back(label > 0 ? w_pos : w_neg);
  }

  LogisticParams theta{};
  double previous = problem.loss(theta);
  for (std::size_t epoch = 0; epoch < options.max_epochs; ++epoch) {
    auto g = problem.gradient(theta);
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= options.learning_rate * g[i];
    double current = problem.loss(theta);
    if (std::abs(previous - current) < options.tolerance) break;
    previous = current;
  }
  for (std::size_t i = 0; i < kFeatureCount; ++i) model.weights[i] = theta[i];
  model.bias = theta[kFeatureCount];
  return model;
}

void write_model(const DecisionModel& model, std::ostream& out) {
  out << "kgqa-decision-model 1\n";
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    out << "weight " << kFeatureNames[i] << ' ' << format_double(model.weights[i]) << '\n';
  out << "bias " << format_double(model.bias) << '\n';
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    out << "range " << kFeatureNames[i] << ' ' << format_double(model.ranges[i].min) << ' '
        << format_double(model.ranges[i].max) << '\n';
  out << "theta1 " << format_double(model.theta1) << '\n';
  out << "theta2 " << format_double(model.theta2) << '\n';
}

DecisionModel read_decision_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "kgqa-decision-model 1")
    throw ParseError("not a decision model file");
  DecisionModel m;
  auto index = [](const std::string& name) {
    for (std::size_t i = 0; i < kFeatureCount; ++i)
      if (name == kFeatureNames[i]) return i;
    throw ParseError("unknown feature '" + name + "'");
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string kind, name;
    row >> kind;
    if (kind == "weight") {
      row >> name;
      row >> m.weights[index(name)];
    } else if (kind == "range") {
      row >> name;
      auto& r = m.ranges[index(name)];
      row >> r.min >> r.max;
    } else if (kind == "bias") {
      row >> m.bias;
    } else if (kind == "theta1") {
      row >> m.theta1;
    } else if (kind == "theta2") {
      row >> m.theta2;
    } else {
      throw ParseError("unknown decision model line '" + line + "'");
    }
    if (row.fail()) throw ParseError("bad number in '" + line + "'");
  }
  return m;
}

}  // namespace kgqa
