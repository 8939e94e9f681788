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

#ifndef VIDMIX_BATCH_HPP_
#define VIDMIX_BATCH_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vidmix/core.hpp"
#include "vidmix/random.hpp"
#include "vidmix/strategy.hpp"

namespace vidmix {

/// Mixing decisions for one batch. Sample i is mixed with sample pairing[i]
/// (0-based); per_sample_lambda[i] is the label weight of sample i's own
/// label.
struct BatchMixPlan {
  std::size_t batch_size = 0;
  bool applied = false;
  std::vector<std::size_t> pairing;
  std::vector<double> per_sample_lambda;
  Strategy strategy = Strategy::kNone;

  /// Throws InvalidArgument unless pairing is a permutation of 0..B-1, every
  /// lambda lies in [0,1], and an unapplied plan has strategy none with all
  /// lambdas equal to 1.
  void validate() const;

  /// JSON object with keys batch_size, applied, pairing, per_sample_lambda
  /// and strategy.
  std::string to_json() const;
  static BatchMixPlan from_json(std::string_view text);

  friend bool operator==(const BatchMixPlan&, const BatchMixPlan&) = default;
};

/// One Bernoulli(p) draw gates the whole batch. When applied, pairing is a
/// uniform random permutation (self-pairs allowed) and lambdas start at 1
/// until the compositor fills them. strategy none never applies.
BatchMixPlan plan_batch(Rng& rng, std::size_t batch_size, double p,
                        Strategy strategy);

/// Model output as class probabilities.
class Prediction {
 public:
  Prediction() = default;
  /// Throws InvalidArgument unless probs are non-empty, non-negative and sum
  /// to 1 within 1e-9.
  explicit Prediction(std::vector<double> probs);

  std::size_t num_classes() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t c) const { return probs_[c]; }

 private:
  std::vector<double> probs_;
};

inline constexpr double kLogClamp = 1e-12;

/// -sum_c target_c * log(max(pred_c, 1e-12)).
double cross_entropy(const Prediction& pred, const Label& target);

/// sum_i lam_i * CE(pred_i, y_i) + (1 - lam_i) * CE(pred_i, y_{j_i}).
/// An unapplied plan reduces to sum_i CE(pred_i, y_i).
double mixed_batch_loss(std::span<const Prediction> preds,
                        std::span<const Label> labels,
                        const BatchMixPlan& plan);

/// lam * sum_i CE(pred_i, y_i) + (1 - lam) * sum_i CE(pred_i, y_{j_i}).
double fixed_lambda_batch_loss(std::span<const Prediction> preds,
                               std::span<const Label> labels,
                               std::span<const std::size_t> pairing,
                               double lam);

/// Evaluates one batch-simulation line:
///   {"preds": [[...], ...], "labels": [int | [...], ...], "plan": {...}}
/// Integer labels are one-hot over the prediction's class count. A missing
/// plan means an unmixed batch.
double simulate_loss_line(std::string_view line);

}  // namespace vidmix

#endif  // VIDMIX_BATCH_HPP_
