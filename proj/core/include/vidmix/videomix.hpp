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

#ifndef VIDMIX_VIDEOMIX_HPP_
#define VIDMIX_VIDEOMIX_HPP_

#include <cstddef>
#include <utility>

#include "vidmix/core.hpp"
#include "vidmix/objectmix.hpp"
#include "vidmix/random.hpp"

namespace vidmix {

/// S-VideoMix rectangle in continuous pixel coordinates, already clamped to
/// the frame: 0 <= w1 <= w2 <= W, 0 <= h1 <= h2 <= H.
struct PatchSpec {
  double lam = 0.0;  // drawn area ratio
  double w1 = 0.0;
  double w2 = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;

  friend bool operator==(const PatchSpec&, const PatchSpec&) = default;
};

/// Integer half-open pixel rectangle [row0,row1) x [col0,col1).
struct PixelRect {
  std::size_t row0 = 0;
  std::size_t row1 = 0;
  std::size_t col0 = 0;
  std::size_t col1 = 0;

  std::size_t area() const noexcept { return (row1 - row0) * (col1 - col0); }

  friend bool operator==(const PixelRect&, const PixelRect&) = default;
};

/// Square-root-scaled rectangle of area ratio `lam` centred at (wc, hc),
/// clamped to [0,W] x [0,H].
PatchSpec patch_from_center(double lam, double wc, double hc,
                            std::size_t width, std::size_t height);

/// Draws lam ~ Beta(alpha, alpha), wc ~ U(0,W), hc ~ U(0,H), in that order.
PatchSpec sample_patch(Rng& rng, double alpha, std::size_t width,
                       std::size_t height);

/// True when the unclamped rectangle already fits inside the frame.
bool is_interior(double lam, double wc, double hc, std::size_t width,
                 std::size_t height);

/// Floors starts and ceils ends. Throws GeometryError if the patch lies
/// outside the frame.
PixelRect rasterize(const PatchSpec& patch, std::size_t width,
                    std::size_t height);

BinaryMask rect_mask(const PixelRect& rect, std::size_t height,
                     std::size_t width);

/// v1 with the rasterized patch replaced by v2's pixels in every frame.
/// Returns the clip and the realized fraction of pixels taken from v2.
std::pair<Clip, double> apply_videomix(const Clip& v1, const Clip& v2,
                                       const PatchSpec& patch);

/// Source of the VideoMix label weight.
enum class PatchLabelSource {
  kRealized,  // rasterized area fraction
  kDrawn,     // drawn lam
};

/// Labelled S-VideoMix sample: `base` keeps its pixels outside the patch and
/// gets label weight 1 - (patch weight).
MixedSample videomix_sample(const LabeledClip& base, const LabeledClip& donor,
                            const PatchSpec& patch,
                            PatchLabelSource label_source =
                                PatchLabelSource::kRealized,
                            Direction direction = Direction::k12);

}  // namespace vidmix

#endif  // VIDMIX_VIDEOMIX_HPP_
