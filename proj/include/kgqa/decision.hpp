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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "kgqa/ranking.hpp"

namespace kgqa {

struct DecisionModel {
  std::array<double, kFeatureCount> weights{};
  double bias = 0;
  double theta1 = 0.8;
  double theta2 = 0.5;
  FeatureRanges ranges = default_ranges();

  friend bool operator==(const DecisionModel&, const DecisionModel&) = default;
};

// logistic(w . normalize(f) + b), in [0, 1].
double confidence(const DecisionModel& model, const FeatureVector& f);

struct GateResult {
  bool answer = false;
  double confidence = 0;
};

GateResult gate(const DecisionModel& model, const FeatureVector& top);

// Parameters are the weights followed by the bias.
using LogisticParams = std::array<double, kFeatureCount + 1>;

// Weighted mean negative log-likelihood plus lambda/2 * |w|^2 (bias not
// penalized). Empty sample_weight means every sample weighs 1.
struct LogisticProblem {
  std::vector<std::array<double, kFeatureCount>> x;
  std::vector<double> y;  // 0 or 1
  std::vector<double> sample_weight;
  double lambda = 1e-4;

  double loss(const LogisticParams& theta) const;
  LogisticParams gradient(const LogisticParams& theta) const;

 private:
  double weight(std::size_t k) const;
};

struct DecisionExample {
  FeatureVector features;
  double f_score = 0;
};

struct DecisionTrainOptions {
  double theta2 = 0.5;
  double lambda = 1e-4;
  double learning_rate = 1.0;
  std::size_t max_epochs = 10000;
  double tolerance = 1e-8;
  // Weigh each class to half the total, so confidence 0.5 is the boundary
  // under equal priors however rare good candidates are.
  bool balance_classes = true;
};

// Labels are f_score > theta1. Normalization ranges are fitted to the
// training features. Throws DegenerateModelError when one class is absent.
DecisionModel train_decision(std::span<const DecisionExample> training, double theta1,
                             const DecisionTrainOptions& options = {});

void write_model(const DecisionModel& model, std::ostream& out);
DecisionModel read_decision_model(std::istream& in);

}  // namespace kgqa
