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

#include "vidmix/strategy.hpp"

#include <string>

#include "vidmix/error.hpp"

namespace vidmix {

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::kNone:
      return "none";
    case Strategy::kObjectMix:
      return "objectmix";
    case Strategy::kObjectMixOr:
      return "objectmix_or";
    case Strategy::kVideoMix:
      return "videomix";
    case Strategy::kCombined:
      return "combined";
  }
  return "none";
}

Strategy parse_strategy(std::string_view name) {
  std::string norm(name);
  for (char& c : norm) {
    if (c == '-') c = '_';
  }
  for (Strategy s : {Strategy::kNone, Strategy::kObjectMix,
                     Strategy::kObjectMixOr, Strategy::kVideoMix,
                     Strategy::kCombined}) {
    if (norm == to_string(s)) return s;
  }
  throw InvalidArgument("unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::k12:
      return "12";
    case Direction::k21:
      return "21";
    case Direction::kNone:
      break;
  }
  return "none";
}

}  // namespace vidmix
