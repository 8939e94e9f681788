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

#ifndef VIDMIX_OBJECTMIX_HPP_
#define VIDMIX_OBJECTMIX_HPP_

#include <string>
#include <utility>
#include <vector>

#include "vidmix/core.hpp"
#include "vidmix/masks.hpp"
#include "vidmix/strategy.hpp"

namespace vidmix {

/// Where a mixed sample came from.
struct Provenance {
  /// Primary source first: the clip whose objects (or, for VideoMix, whose
  /// background) carry weight `lam`.
  std::vector<std::string> sources;
  Strategy strategy = Strategy::kNone;
  Direction direction = Direction::kNone;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// A composed clip with its soft label. `lam` is the label weight of
/// `provenance.sources[0]`, which equals the fraction of the clip's pixels
/// taken from that source.
struct MixedSample {
  Clip clip;
  Label label;
  double lam = 1.0;
  Provenance provenance;
};

/// A clip with its label and an identifier used for provenance.
struct LabeledClip {
  std::string id;
  Clip clip;
  Label label;
};

/// Which mask determines the label weight under ObjectMix+or.
enum class LambdaSource {
  kPastedMask,  // area of the mask actually pasted (M'' under +or)
  kMPrime,      // area of the per-frame mask M', whatever was pasted
};

/// Fraction of set bits over the whole T x H x W volume.
double coverage_lambda(const AggregatedMask& mask, const ClipShape& shape);

/// Per-frame blend of `fg` over `bg` under `mask`.
Clip compose(const Clip& fg, const Clip& bg, const AggregatedMask& mask);

/// Returns (v12, v21): v12 takes v1 where m1 is set and v2 elsewhere; v21
/// takes v2 where m2 is set and v1 elsewhere.
std::pair<Clip, Clip> compose_pair(const Clip& v1, const Clip& v2,
                                   const AggregatedMask& m1,
                                   const AggregatedMask& m2);

/// Returns (lam1*y1 + (1-lam1)*y2, (1-lam2)*y1 + lam2*y2).
std::pair<Label, Label> mix_labels(const Label& y1, const Label& y2,
                                   double lam1, double lam2);

/// Blend of two labels with weight `lam` on `primary`.
Label blend_labels(const Label& primary, const Label& other, double lam);

struct ObjectMixOptions {
  LambdaSource lambda_source = LambdaSource::kPastedMask;
};

/// Full ObjectMix on one pair: aggregates both mask sets in `mode`, composes
/// both directions and mixes labels by mask area. The first result is the
/// 12 direction (objects of s1 on s2), the second the 21 direction.
std::pair<MixedSample, MixedSample> object_mix(
    const LabeledClip& s1, const LabeledClip& s2, MaskMode mode,
    const InstanceMaskSet& m1set, const InstanceMaskSet& m2set,
    const ObjectMixOptions& options = {});

/// One direction of object_mix: objects of `fg` pasted onto `bg`.
MixedSample object_mix_directed(const LabeledClip& fg, const LabeledClip& bg,
                                MaskMode mode, const InstanceMaskSet& fg_masks,
                                const ObjectMixOptions& options = {},
                                Direction direction = Direction::k12);

/// Throws DimensionMismatch unless `mask` has shape.frames frames of
/// shape.height x shape.width.
void check_mask_matches(const AggregatedMask& mask, const ClipShape& shape);

}  // namespace vidmix

#endif  // VIDMIX_OBJECTMIX_HPP_
