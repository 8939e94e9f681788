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

#ifndef VIDMIX_MASKS_HPP_
#define VIDMIX_MASKS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vidmix/core.hpp"

namespace vidmix {

/// Per-frame union (ObjectMix) or union over the whole clip (ObjectMix+or).
enum class MaskMode { kSpatial, kSpatiotemporal };

std::string_view to_string(MaskMode mode) noexcept;

/// One detected object in one frame.
struct Instance {
  BinaryMask mask;
  std::optional<int> category;  // COCO class id, 0-79
  std::optional<double> score;  // detector confidence, [0,1]

  friend bool operator==(const Instance&, const Instance&) = default;
};

inline constexpr int kMaxCategoryId = 79;

/// Instance masks for every frame of a clip. Frames with no detections hold
/// an empty instance list.
class InstanceMaskSet {
 public:
  InstanceMaskSet() = default;
  InstanceMaskSet(std::size_t height, std::size_t width,
                  std::vector<std::vector<Instance>> frames);

  /// `frames` empty frames of the given size.
  static InstanceMaskSet empty(std::size_t frames, std::size_t height,
                               std::size_t width);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t frame_count() const noexcept { return frames_.size(); }
  const std::vector<Instance>& frame(std::size_t t) const {
    return frames_.at(t);
  }
  std::vector<Instance>& mutable_frame(std::size_t t) { return frames_.at(t); }
  const std::vector<std::vector<Instance>>& frames() const noexcept {
    return frames_;
  }

  /// New set holding frames `indices[0]`, `indices[1]`, ... in that order.
  InstanceMaskSet select_frames(std::span<const std::size_t> indices) const;

  /// Drops instances whose score is present and below `min_score`.
  /// `min_score` = 0 keeps everything.
  InstanceMaskSet filter_by_score(double min_score) const;

  friend bool operator==(const InstanceMaskSet&,
                         const InstanceMaskSet&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::vector<Instance>> frames_;
};

/// One single-channel mask per frame.
struct AggregatedMask {
  MaskMode mode = MaskMode::kSpatial;
  std::vector<BinaryMask> per_frame;

  std::size_t frame_count() const noexcept { return per_frame.size(); }
  /// Sum of set bits over all frames.
  std::size_t total_area() const noexcept;

  friend bool operator==(const AggregatedMask&,
                         const AggregatedMask&) = default;
};

/// Pixel-wise OR of all instance masks; all-zero for an empty list.
BinaryMask aggregate_instances(std::span<const BinaryMask> instances,
                               std::size_t height, std::size_t width);
BinaryMask aggregate_instances(std::span<const Instance> instances,
                               std::size_t height, std::size_t width);

/// Per-frame OR over instances.
AggregatedMask aggregate_spatial(const InstanceMaskSet& set);

/// OR over all frames, replicated to every frame. Accepts either mode; a
/// spatiotemporal input is already a fixed point.
AggregatedMask aggregate_temporal(const AggregatedMask& spatial);

/// aggregate_spatial, followed by aggregate_temporal for kSpatiotemporal.
AggregatedMask aggregate(const InstanceMaskSet& set, MaskMode mode);

/// Decodes uncompressed COCO run lengths: alternating 0-runs and 1-runs,
/// starting with a (possibly empty) 0-run, in column-major pixel order.
BinaryMask decode_rle(std::span<const std::int64_t> counts, std::size_t height,
                      std::size_t width);

/// Canonical encoding: leading 0-run (possibly 0), then strictly positive
/// alternating runs. decode_rle(encode_rle(m)) == m, and encode_rle inverts
/// decode_rle for every canonical run sequence.
std::vector<std::int64_t> encode_rle(const BinaryMask& mask);

/// Mask file: {"height", "width", "frames": [{"instances": [{"category",
/// "score", "rle"}]}]}.
InstanceMaskSet parse_mask_json(std::string_view text);
InstanceMaskSet load_mask_file(const std::filesystem::path& path);
std::string to_mask_json(const InstanceMaskSet& set);

}  // namespace vidmix

#endif  // VIDMIX_MASKS_HPP_
