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

#ifndef VIDMIX_RANDOM_HPP_
#define VIDMIX_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace vidmix {

/// Caller-owned random stream. The engine is mt19937_64, whose output
/// sequence is fixed by the standard; the distributions are implemented so
/// that draws are the same on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for (run seed, purpose, index). Used to give every
  /// batch, clip and pair its own stream so work can be reordered or run in
  /// parallel without changing any draw.
  static Rng derive(std::uint64_t seed, std::uint64_t purpose,
                    std::uint64_t index);

  /// Uniform on [0, 1).
  double uniform01();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer on [lo, hi], inclusive.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
  bool bernoulli(double p);
  double beta(double a, double b);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Stream purposes for Rng::derive.
namespace stream {
inline constexpr std::uint64_t kBatchPlan = 1;
inline constexpr std::uint64_t kClipPrep = 2;
inline constexpr std::uint64_t kMix = 3;
}  // namespace stream

}  // namespace vidmix

#endif  // VIDMIX_RANDOM_HPP_
