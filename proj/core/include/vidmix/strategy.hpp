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

#ifndef VIDMIX_STRATEGY_HPP_
#define VIDMIX_STRATEGY_HPP_

#include <string_view>

namespace vidmix {

enum class Strategy {
  kNone,
  kObjectMix,    // per-frame masks M'
  kObjectMixOr,  // temporally OR-ed masks M''
  kVideoMix,     // S-VideoMix rectangle
  kCombined,     // ObjectMix, then VideoMix on the result
};

/// "none", "objectmix", "objectmix_or", "videomix", "combined".
std::string_view to_string(Strategy s) noexcept;

/// Accepts the names above; '-' is treated as '_' so CLI spellings such as
/// "objectmix-or" parse. Throws InvalidArgument otherwise.
Strategy parse_strategy(std::string_view name);

/// Which way a pair was composed: 12 pastes from the first source onto the
/// second, 21 the reverse. kNone marks an unmixed original.
enum class Direction { kNone, k12, k21 };

std::string_view to_string(Direction d) noexcept;

}  // namespace vidmix

#endif  // VIDMIX_STRATEGY_HPP_
