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

#include "vidmix/objectmix.hpp"

#include <string>

#include "vidmix/error.hpp"

namespace vidmix {

void check_mask_matches(const AggregatedMask& mask, const ClipShape& shape) {
  if (mask.frame_count() != shape.frames) {
    throw DimensionMismatch("mask has " + std::to_string(mask.frame_count()) +
                            " frames, clip has " +
                            std::to_string(shape.frames));
  }
  for (const auto& m : mask.per_frame) {
    if (m.height() != shape.height || m.width() != shape.width) {
      throw DimensionMismatch("mask frame is " + std::to_string(m.height()) +
                              "x" + std::to_string(m.width()) +
                              ", clip frame is " + std::to_string(shape.height) +
                              "x" + std::to_string(shape.width));
    }
  }
}

double coverage_lambda(const AggregatedMask& mask, const ClipShape& shape) {
  check_mask_matches(mask, shape);
  const double volume = static_cast<double>(shape.frames) *
                        static_cast<double>(shape.plane_size());
  return static_cast<double>(mask.total_area()) / volume;
}

Clip compose(const Clip& fg, const Clip& bg, const AggregatedMask& mask) {
  if (fg.shape() != bg.shape()) {
    throw DimensionMismatch("clips differ in shape: " +
                            fg.shape().to_string() + " vs " +
                            bg.shape().to_string());
  }
  check_mask_matches(mask, fg.shape());
  Clip out(fg.shape());
  for (std::size_t t = 0; t < fg.shape().frames; ++t) {
    blend_frame_into(fg.frame(t), bg.frame(t), mask.per_frame[t],
                     out.mutable_frame(t));
  }
  return out;
}

std::pair<Clip, Clip> compose_pair(const Clip& v1, const Clip& v2,
                                   const AggregatedMask& m1,
                                   const AggregatedMask& m2) {
  return {compose(v1, v2, m1), compose(v2, v1, m2)};
}

namespace {

void check_lambda(double lam) {
  if (!(lam >= 0.0 && lam <= 1.0)) {
    throw InvalidArgument("mixing weight " + std::to_string(lam) +
                          " outside [0,1]");
  }
}

}  // namespace

Label blend_labels(const Label& primary, const Label& other, double lam) {
  check_lambda(lam);
  if (primary.num_classes() != other.num_classes()) {
    throw DimensionMismatch("labels have " +
                            std::to_string(primary.num_classes()) + " and " +
                            std::to_string(other.num_classes()) + " classes");
  }
  std::vector<double> w(primary.num_classes());
  for (std::size_t c = 0; c < w.size(); ++c) {
    w[c] = lam * primary[c] + (1.0 - lam) * other[c];
  }
  return Label(std::move(w));
}

std::pair<Label, Label> mix_labels(const Label& y1, const Label& y2,
                                   double lam1, double lam2) {
  check_lambda(lam1);
  check_lambda(lam2);
  return {blend_labels(y1, y2, lam1), blend_labels(y2, y1, lam2)};
}

MixedSample object_mix_directed(const LabeledClip& fg, const LabeledClip& bg,
                                MaskMode mode, const InstanceMaskSet& fg_masks,
                                const ObjectMixOptions& options,
                                Direction direction) {
  const AggregatedMask spatial = aggregate_spatial(fg_masks);
  const AggregatedMask pasted =
      mode == MaskMode::kSpatial ? spatial : aggregate_temporal(spatial);

  MixedSample out;
  out.clip = compose(fg.clip, bg.clip, pasted);
  const AggregatedMask& weighted =
      options.lambda_source == LambdaSource::kMPrime ? spatial : pasted;
  out.lam = coverage_lambda(weighted, fg.clip.shape());
  out.label = blend_labels(fg.label, bg.label, out.lam);
  out.provenance.sources = {fg.id, bg.id};
  out.provenance.strategy = mode == MaskMode::kSpatial ? Strategy::kObjectMix
                                                       : Strategy::kObjectMixOr;
  out.provenance.direction = direction;
  return out;
}

std::pair<MixedSample, MixedSample> object_mix(
    const LabeledClip& s1, const LabeledClip& s2, MaskMode mode,
    const InstanceMaskSet& m1set, const InstanceMaskSet& m2set,
    const ObjectMixOptions& options) {
  return {object_mix_directed(s1, s2, mode, m1set, options, Direction::k12),
          object_mix_directed(s2, s1, mode, m2set, options, Direction::k21)};
}

}  // namespace vidmix
