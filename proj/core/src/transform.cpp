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

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "vidmix/error.hpp"
#include "vidmix/pipeline.hpp"

namespace vidmix {

void AugConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("p must lie in [0,1]");
  }
  if (clip_len == 0) throw InvalidArgument("clip length must be positive");
  if (resize_min == 0 || resize_min > resize_max) {
    throw InvalidArgument("train resize range must be non-empty and positive");
  }
  if (crop == 0 || crop > resize_min) {
    throw InvalidArgument("train crop must be positive and fit every resize");
  }
  if (val_crop == 0 || val_crop > val_resize) {
    throw InvalidArgument("val crop must be positive and fit the val resize");
  }
  if (!(hflip_prob >= 0.0 && hflip_prob <= 1.0)) {
    throw InvalidArgument("hflip probability must lie in [0,1]");
  }
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (!(min_score >= 0.0 && min_score <= 1.0)) {
    throw InvalidArgument("min score must lie in [0,1]");
  }
  if (batch_size == 0) throw InvalidArgument("batch size must be positive");
  if (workers == 0) throw InvalidArgument("worker count must be positive");
}

std::vector<std::size_t> sample_frames(Rng& rng, std::size_t total_frames,
                                       std::size_t t) {
  if (t == 0) throw InvalidArgument("cannot sample zero frames");
  if (total_frames == 0) throw InvalidArgument("clip has no frames");
  std::vector<std::size_t> idx(t);
  if (total_frames >= t) {
    const auto start =
        static_cast<std::size_t>(rng.uniform_int(0, total_frames - t));
    for (std::size_t i = 0; i < t; ++i) idx[i] = start + i;
  } else {
    for (std::size_t i = 0; i < t; ++i) idx[i] = i % total_frames;
  }
  return idx;
}

namespace {

// Short side becomes `target`; the long side keeps the aspect ratio,
// rounded half up.
std::pair<std::size_t, std::size_t> resized_dims(std::size_t h, std::size_t w,
                                                 std::size_t target) {
  if (h <= w) return {target, (2 * w * target + h) / (2 * h)};
  return {(2 * h * target + w) / (2 * w), target};
}

std::vector<std::size_t> nearest_table(std::size_t out_len, std::size_t offset,
                                       std::size_t resized, std::size_t src,
                                       bool reverse) {
  std::vector<std::size_t> table(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    const std::size_t r = offset + (reverse ? out_len - 1 - i : i);
    table[i] = std::min((2 * r + 1) * src / (2 * resized), src - 1);
  }
  return table;
}

struct LinearTap {
  std::size_t i0 = 0;
  std::size_t i1 = 0;
  double frac = 0.0;
};

std::vector<LinearTap> linear_table(std::size_t out_len, std::size_t offset,
                                    std::size_t resized, std::size_t src,
                                    bool reverse) {
  std::vector<LinearTap> table(out_len);
  const double scale = static_cast<double>(src) / static_cast<double>(resized);
  for (std::size_t i = 0; i < out_len; ++i) {
    const std::size_t r = offset + (reverse ? out_len - 1 - i : i);
    double s = (static_cast<double>(r) + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src - 1));
    LinearTap tap;
    tap.i0 = static_cast<std::size_t>(std::floor(s));
    tap.i1 = std::min(tap.i0 + 1, src - 1);
    tap.frac = s - static_cast<double>(tap.i0);
    table[i] = tap;
  }
  return table;
}

void check_source(const TransformParams& p, std::size_t h, std::size_t w) {
  if (h != p.src_height || w != p.src_width) {
    throw DimensionMismatch("transform drawn for " +
                            std::to_string(p.src_height) + "x" +
                            std::to_string(p.src_width) + ", applied to " +
                            std::to_string(h) + "x" + std::to_string(w));
  }
}

}  // namespace

TransformParams draw_transform(Rng& rng, std::size_t height, std::size_t width,
                               const AugConfig& cfg, TransformMode mode) {
  if (height == 0 || width == 0) {
    throw GeometryError("source frame has a zero extent");
  }
  TransformParams p;
  p.src_height = height;
  p.src_width = width;
  const bool train = mode == TransformMode::kTrain;
  const std::size_t target =
      train ? static_cast<std::size_t>(
                  rng.uniform_int(cfg.resize_min, cfg.resize_max))
            : cfg.val_resize;
  p.crop_size = train ? cfg.crop : cfg.val_crop;
  std::tie(p.resized_height, p.resized_width) =
      resized_dims(height, width, target);
  if (p.resized_height < p.crop_size || p.resized_width < p.crop_size) {
    throw GeometryError("resized frame " + std::to_string(p.resized_height) +
                        "x" + std::to_string(p.resized_width) +
                        " is smaller than the " + std::to_string(p.crop_size) +
                        " crop");
  }
  if (train) {
    p.crop_y = static_cast<std::size_t>(
        rng.uniform_int(0, p.resized_height - p.crop_size));
    p.crop_x = static_cast<std::size_t>(
        rng.uniform_int(0, p.resized_width - p.crop_size));
    // Drawn even when flipping is disabled so the stream stays aligned.
    const bool coin = rng.bernoulli(cfg.hflip_prob);
    p.flip = cfg.hflip && coin;
  } else {
    p.crop_y = (p.resized_height - p.crop_size) / 2;
    p.crop_x = (p.resized_width - p.crop_size) / 2;
  }
  return p;
}

Clip apply_transform(const TransformParams& params, const Clip& clip,
                     Interpolation interp) {
  const ClipShape& s = clip.shape();
  check_source(params, s.height, s.width);
  const std::size_t n = params.crop_size;
  ClipShape out_shape{s.frames, s.channels, n, n};
  Clip out(out_shape);

  if (interp == Interpolation::kNearest) {
    const auto rows = nearest_table(n, params.crop_y, params.resized_height,
                                    s.height, false);
    const auto cols = nearest_table(n, params.crop_x, params.resized_width,
                                    s.width, params.flip);
    for (std::size_t t = 0; t < s.frames; ++t) {
      for (std::size_t c = 0; c < s.channels; ++c) {
        for (std::size_t y = 0; y < n; ++y) {
          for (std::size_t x = 0; x < n; ++x) {
            out.at(t, c, y, x) = clip.at(t, c, rows[y], cols[x]);
          }
        }
      }
    }
    return out;
  }

  const auto rows =
      linear_table(n, params.crop_y, params.resized_height, s.height, false);
  const auto cols = linear_table(n, params.crop_x, params.resized_width,
                                 s.width, params.flip);
  for (std::size_t t = 0; t < s.frames; ++t) {
    for (std::size_t c = 0; c < s.channels; ++c) {
      for (std::size_t y = 0; y < n; ++y) {
        const LinearTap& ry = rows[y];
        for (std::size_t x = 0; x < n; ++x) {
          const LinearTap& rx = cols[x];
          const double a = clip.at(t, c, ry.i0, rx.i0);
          const double b = clip.at(t, c, ry.i0, rx.i1);
          const double d = clip.at(t, c, ry.i1, rx.i0);
          const double e = clip.at(t, c, ry.i1, rx.i1);
          const double top = (1.0 - rx.frac) * a + rx.frac * b;
          const double bottom = (1.0 - rx.frac) * d + rx.frac * e;
          out.at(t, c, y, x) =
              static_cast<float>((1.0 - ry.frac) * top + ry.frac * bottom);
        }
      }
    }
  }
  return out;
}

BinaryMask apply_transform(const TransformParams& params,
                           const BinaryMask& mask) {
  check_source(params, mask.height(), mask.width());
  const std::size_t n = params.crop_size;
  const auto rows = nearest_table(n, params.crop_y, params.resized_height,
                                  mask.height(), false);
  const auto cols = nearest_table(n, params.crop_x, params.resized_width,
                                  mask.width(), params.flip);
  BinaryMask out(n, n, 0);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      out.set(y, x, mask.at(rows[y], cols[x]) != 0);
    }
  }
  return out;
}

InstanceMaskSet apply_transform(const TransformParams& params,
                                const InstanceMaskSet& masks) {
  check_source(params, masks.height(), masks.width());
  std::vector<std::vector<Instance>> frames;
  frames.reserve(masks.frame_count());
  for (const auto& frame : masks.frames()) {
    std::vector<Instance> out;
    out.reserve(frame.size());
    for (const auto& inst : frame) {
      out.push_back({apply_transform(params, inst.mask), inst.category,
                     inst.score});
    }
    frames.push_back(std::move(out));
  }
  return InstanceMaskSet(params.crop_size, params.crop_size, std::move(frames));
}

TransformedClip spatial_transform(Rng& rng, const Clip& clip,
                                  const InstanceMaskSet& masks,
                                  const AugConfig& cfg, TransformMode mode) {
  const ClipShape& s = clip.shape();
  if (masks.height() != s.height || masks.width() != s.width ||
      masks.frame_count() != s.frames) {
    throw DimensionMismatch("masks (" + std::to_string(masks.frame_count()) +
                            "x" + std::to_string(masks.height()) + "x" +
                            std::to_string(masks.width()) +
                            ") are not aligned with clip " + s.to_string());
  }
  TransformedClip out;
  out.params = draw_transform(rng, s.height, s.width, cfg, mode);
  out.clip = apply_transform(out.params, clip, cfg.pixel_interp);
  out.masks = apply_transform(out.params, masks);
  return out;
}

}  // namespace vidmix
