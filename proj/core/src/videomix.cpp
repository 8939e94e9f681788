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

#include "vidmix/videomix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vidmix/error.hpp"

namespace vidmix {
namespace {

void check_dims(double alpha, std::size_t width, std::size_t height) {
  if (!(alpha > 0.0)) throw InvalidArgument("VideoMix alpha must be positive");
  if (width == 0 || height == 0) {
    throw InvalidArgument("VideoMix frame dimensions must be positive");
  }
}

}  // namespace

PatchSpec patch_from_center(double lam, double wc, double hc,
                            std::size_t width, std::size_t height) {
  if (!(lam >= 0.0 && lam <= 1.0)) {
    throw InvalidArgument("patch area ratio outside [0,1]");
  }
  const double W = static_cast<double>(width);
  const double H = static_cast<double>(height);
  const double half_w = W * std::sqrt(lam) / 2.0;
  const double half_h = H * std::sqrt(lam) / 2.0;
  PatchSpec p;
  p.lam = lam;
  p.w1 = std::clamp(wc - half_w, 0.0, W);
  p.w2 = std::clamp(wc + half_w, 0.0, W);
  p.h1 = std::clamp(hc - half_h, 0.0, H);
  p.h2 = std::clamp(hc + half_h, 0.0, H);
  return p;
}

PatchSpec sample_patch(Rng& rng, double alpha, std::size_t width,
                       std::size_t height) {
  check_dims(alpha, width, height);
  const double lam = rng.beta(alpha, alpha);
  const double wc = rng.uniform(0.0, static_cast<double>(width));
  const double hc = rng.uniform(0.0, static_cast<double>(height));
  return patch_from_center(lam, wc, hc, width, height);
}

bool is_interior(double lam, double wc, double hc, std::size_t width,
                 std::size_t height) {
  const double half_w = static_cast<double>(width) * std::sqrt(lam) / 2.0;
  const double half_h = static_cast<double>(height) * std::sqrt(lam) / 2.0;
  return wc - half_w >= 0.0 && wc + half_w <= static_cast<double>(width) &&
         hc - half_h >= 0.0 && hc + half_h <= static_cast<double>(height);
}

PixelRect rasterize(const PatchSpec& patch, std::size_t width,
                    std::size_t height) {
  const double W = static_cast<double>(width);
  const double H = static_cast<double>(height);
  if (!(patch.w1 >= 0.0 && patch.w1 <= patch.w2 && patch.w2 <= W &&
        patch.h1 >= 0.0 && patch.h1 <= patch.h2 && patch.h2 <= H)) {
    throw GeometryError("VideoMix patch lies outside the " +
                        std::to_string(height) + "x" + std::to_string(width) +
                        " frame");
  }
  PixelRect r;
  r.col0 = static_cast<std::size_t>(std::floor(patch.w1));
  r.col1 = static_cast<std::size_t>(std::ceil(patch.w2));
  r.row0 = static_cast<std::size_t>(std::floor(patch.h1));
  r.row1 = static_cast<std::size_t>(std::ceil(patch.h2));
  // A zero-width patch at a fractional coordinate would otherwise rasterize
  // to one pixel column.
  if (patch.w1 == patch.w2) r.col1 = r.col0;
  if (patch.h1 == patch.h2) r.row1 = r.row0;
  return r;
}

BinaryMask rect_mask(const PixelRect& rect, std::size_t height,
                     std::size_t width) {
  BinaryMask m(height, width, 0);
  for (std::size_t h = rect.row0; h < rect.row1; ++h) {
    for (std::size_t w = rect.col0; w < rect.col1; ++w) m.set(h, w, true);
  }
  return m;
}

std::pair<Clip, double> apply_videomix(const Clip& v1, const Clip& v2,
                                       const PatchSpec& patch) {
  if (v1.shape() != v2.shape()) {
    throw DimensionMismatch("clips differ in shape: " +
                            v1.shape().to_string() + " vs " +
                            v2.shape().to_string());
  }
  const ClipShape& s = v1.shape();
  const PixelRect rect = rasterize(patch, s.width, s.height);
  Clip out = v1;
  for (std::size_t t = 0; t < s.frames; ++t) {
    for (std::size_t c = 0; c < s.channels; ++c) {
      for (std::size_t h = rect.row0; h < rect.row1; ++h) {
        for (std::size_t w = rect.col0; w < rect.col1; ++w) {
          out.at(t, c, h, w) = v2.at(t, c, h, w);
        }
      }
    }
  }
  const double weight =
      static_cast<double>(rect.area()) / static_cast<double>(s.plane_size());
  return {std::move(out), weight};
}

MixedSample videomix_sample(const LabeledClip& base, const LabeledClip& donor,
                            const PatchSpec& patch,
                            PatchLabelSource label_source,
                            Direction direction) {
  auto [clip, donor_weight] = apply_videomix(base.clip, donor.clip, patch);
  if (label_source == PatchLabelSource::kDrawn) donor_weight = patch.lam;
  MixedSample out;
  out.clip = std::move(clip);
  out.lam = 1.0 - donor_weight;
  out.label = blend_labels(base.label, donor.label, out.lam);
  out.provenance.sources = {base.id, donor.id};
  out.provenance.strategy = Strategy::kVideoMix;
  out.provenance.direction = direction;
  return out;
}

}  // namespace vidmix
