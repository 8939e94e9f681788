// Copyright 2026 The vidmix Authors. All rights reserved.
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

#include "vidmix/batch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "json.hpp"
#include "vidmix/error.hpp"

namespace vidmix {

using nlohmann::json;

void BatchMixPlan::validate() const {
  if (batch_size == 0) throw InvalidArgument("batch size must be positive");
  if (pairing.size() != batch_size || per_sample_lambda.size() != batch_size) {
    throw InvalidArgument("plan arrays do not match batch size " +
                          std::to_string(batch_size));
  }
  std::vector<bool> seen(batch_size, false);
  for (std::size_t j : pairing) {
    if (j >= batch_size || seen[j]) {
      throw InvalidArgument("plan pairing is not a permutation");
    }
    seen[j] = true;
  }
  for (double lam : per_sample_lambda) {
    if (!(lam >= 0.0 && lam <= 1.0)) {
      throw InvalidArgument("plan lambda outside [0,1]");
    }
  }
  if (!applied) {
    if (strategy != Strategy::kNone) {
      throw InvalidArgument("unapplied plan must have strategy none");
    }
    for (double lam : per_sample_lambda) {
      if (lam != 1.0) {
        throw InvalidArgument("unapplied plan must have every lambda = 1");
      }
    }
  }
}

std::string BatchMixPlan::to_json() const {
  nlohmann::ordered_json j = {{"batch_size", batch_size},
            {"applied", applied},
            {"pairing", pairing},
            {"per_sample_lambda", per_sample_lambda},
            {"strategy", std::string(to_string(strategy))}};
  return j.dump();
}

namespace {

BatchMixPlan plan_from_json(const json& j) {
  BatchMixPlan plan;
  plan.batch_size = j.at("batch_size").get<std::size_t>();
  plan.applied = j.at("applied").get<bool>();
  plan.pairing = j.at("pairing").get<std::vector<std::size_t>>();
  plan.per_sample_lambda =
      j.at("per_sample_lambda").get<std::vector<double>>();
  plan.strategy = parse_strategy(j.at("strategy").get<std::string>());
  plan.validate();
  return plan;
}

}  // namespace

BatchMixPlan BatchMixPlan::from_json(std::string_view text) {
  try {
    return plan_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("invalid plan JSON: ") + e.what());
  }
}

BatchMixPlan plan_batch(Rng& rng, std::size_t batch_size, double p,
                        Strategy strategy) {
  if (batch_size == 0) throw InvalidArgument("batch size must be positive");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("application probability " + std::to_string(p) +
                          " outside [0,1]");
  }
  BatchMixPlan plan;
  plan.batch_size = batch_size;
  plan.pairing.resize(batch_size);
  std::iota(plan.pairing.begin(), plan.pairing.end(), std::size_t{0});
  plan.per_sample_lambda.assign(batch_size, 1.0);

  const bool gate = rng.bernoulli(p);
  plan.applied = gate && strategy != Strategy::kNone;
  if (!plan.applied) return plan;

  plan.strategy = strategy;
  // Fisher-Yates; std::shuffle's draw sequence is implementation-defined.
  for (std::size_t i = batch_size - 1; i > 0; --i) {
    const auto k = static_cast<std::size_t>(rng.uniform_int(0, i));
    std::swap(plan.pairing[i], plan.pairing[k]);
  }
  return plan;
}

Prediction::Prediction(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidArgument("prediction has no classes");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidArgument("prediction probability negative or non-finite");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kLabelSumTolerance) {
    throw InvalidArgument("prediction probabilities sum to " +
                          std::to_string(sum) + ", expected 1");
  }
}

double cross_entropy(const Prediction& pred, const Label& target) {
  if (pred.num_classes() != target.num_classes()) {
    throw DimensionMismatch("prediction has " +
                            std::to_string(pred.num_classes()) +
                            " classes, target has " +
                            std::to_string(target.num_classes()));
  }
  double loss = 0.0;
  for (std::size_t c = 0; c < pred.num_classes(); ++c) {
    if (target[c] == 0.0) continue;
    loss -= target[c] * std::log(std::max(pred[c], kLogClamp));
  }
  return loss;
}

namespace {

void check_batch(std::span<const Prediction> preds,
                 std::span<const Label> labels, std::size_t batch_size) {
  if (preds.size() != batch_size || labels.size() != batch_size) {
    throw DimensionMismatch("batch has " + std::to_string(preds.size()) +
                            " predictions and " +
                            std::to_string(labels.size()) +
                            " labels, expected " + std::to_string(batch_size));
  }
}

}  // namespace

double mixed_batch_loss(std::span<const Prediction> preds,
                        std::span<const Label> labels,
                        const BatchMixPlan& plan) {
  plan.validate();
  check_batch(preds, labels, plan.batch_size);
  double total = 0.0;
  for (std::size_t i = 0; i < plan.batch_size; ++i) {
    const double lam = plan.per_sample_lambda[i];
    total += lam * cross_entropy(preds[i], labels[i]) +
             (1.0 - lam) * cross_entropy(preds[i], labels[plan.pairing[i]]);
  }
  return total;
}

double fixed_lambda_batch_loss(std::span<const Prediction> preds,
                               std::span<const Label> labels,
                               std::span<const std::size_t> pairing,
                               double lam) {
  if (!(lam >= 0.0 && lam <= 1.0)) {
    throw InvalidArgument("lambda outside [0,1]");
  }
  BatchMixPlan plan;
  plan.batch_size = pairing.size();
  plan.applied = true;
  plan.strategy = Strategy::kVideoMix;
  plan.pairing.assign(pairing.begin(), pairing.end());
  plan.per_sample_lambda.assign(pairing.size(), lam);
  plan.validate();
  check_batch(preds, labels, plan.batch_size);
  double own = 0.0;
  double paired = 0.0;
  for (std::size_t i = 0; i < plan.batch_size; ++i) {
    own += cross_entropy(preds[i], labels[i]);
    paired += cross_entropy(preds[i], labels[pairing[i]]);
  }
  return lam * own + (1.0 - lam) * paired;
}

double simulate_loss_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("harness line is not valid JSON: ") +
                          e.what());
  }
  try {
    std::vector<Prediction> preds;
    for (const auto& p : j.at("preds")) {
      preds.emplace_back(p.get<std::vector<double>>());
    }
    std::vector<Label> labels;
    const auto& labels_json = j.at("labels");
    if (labels_json.size() != preds.size()) {
      throw DimensionMismatch("harness line has " +
                              std::to_string(preds.size()) +
                              " predictions and " +
                              std::to_string(labels_json.size()) + " labels");
    }
    for (std::size_t i = 0; i < labels_json.size(); ++i) {
      const auto& l = labels_json[i];
      if (l.is_number_integer()) {
        const auto cls = l.get<std::int64_t>();
        if (cls < 0) throw InvalidArgument("negative class index");
        labels.push_back(Label::one_hot(static_cast<std::size_t>(cls),
                                        preds[i].num_classes()));
      } else {
        labels.emplace_back(l.get<std::vector<double>>());
      }
    }
    BatchMixPlan plan;
    if (j.contains("plan") && !j["plan"].is_null()) {
      plan = plan_from_json(j["plan"]);
    } else {
      plan.batch_size = preds.size();
      plan.pairing.resize(preds.size());
      std::iota(plan.pairing.begin(), plan.pairing.end(), std::size_t{0});
      plan.per_sample_lambda.assign(preds.size(), 1.0);
    }
    return mixed_batch_loss(preds, labels, plan);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("harness line has an invalid layout: ") +
                          e.what());
  }
}

}  // namespace vidmix
