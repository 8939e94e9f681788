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

#ifndef VIDMIX_PIPELINE_HPP_
#define VIDMIX_PIPELINE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vidmix/batch.hpp"
#include "vidmix/core.hpp"
#include "vidmix/masks.hpp"
#include "vidmix/objectmix.hpp"
#include "vidmix/random.hpp"
#include "vidmix/strategy.hpp"
#include "vidmix/videomix.hpp"

namespace vidmix {

enum class TransformMode { kTrain, kVal };
enum class Interpolation { kBilinear, kNearest };

/// Augmentation settings. The defaults are
/// 16-frame clips, short side drawn from [224, 320], 224 crop, hflip 0.5 for
/// training; short side 256 and a centre 224 crop for validation.
struct AugConfig {
  Strategy strategy = Strategy::kObjectMix;
  double p = 1.0;
  std::size_t clip_len = 16;
  std::size_t resize_min = 224;
  std::size_t resize_max = 320;
  std::size_t crop = 224;
  double hflip_prob = 0.5;
  bool hflip = true;
  std::size_t val_resize = 256;
  std::size_t val_crop = 224;
  TransformMode mode = TransformMode::kTrain;
  /// Pixel resampling; masks always use nearest neighbour.
  Interpolation pixel_interp = Interpolation::kBilinear;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  LambdaSource lambda_source = LambdaSource::kPastedMask;
  PatchLabelSource patch_label_source = PatchLabelSource::kRealized;
  /// Object masks used by the combined strategy.
  MaskMode combined_mask_mode = MaskMode::kSpatial;
  /// Instances scoring below this are ignored; 0 keeps all of them.
  double min_score = 0.0;
  std::size_t batch_size = 16;
  std::size_t workers = 1;
  /// 0 infers the class count from the manifest (max label + 1).
  std::size_t num_classes = 0;

  /// Throws InvalidArgument on out-of-range settings.
  void validate() const;
};

/// One clip of the input manifest. Relative paths are resolved against the
/// manifest's directory.
struct ClipManifestEntry {
  std::string id;
  std::filesystem::path frame_dir;
  std::size_t frame_count = 0;
  std::size_t label = 0;
  std::filesystem::path mask_file;
};

/// JSON array of {"clip_id", "frame_dir", "frame_count", "label",
/// "mask_file"} objects.
std::vector<ClipManifestEntry> parse_manifest(
    std::string_view text, const std::filesystem::path& base_dir = {});
std::vector<ClipManifestEntry> load_manifest(const std::filesystem::path& path);

/// `t` frame indices: a contiguous window at a uniformly drawn start when
/// total_frames >= t, otherwise 0..total_frames-1 repeated cyclically
/// (no draw).
std::vector<std::size_t> sample_frames(Rng& rng, std::size_t total_frames,
                                       std::size_t t);

/// Geometry of one resize-crop-flip.
struct TransformParams {
  std::size_t src_height = 0;
  std::size_t src_width = 0;
  std::size_t resized_height = 0;
  std::size_t resized_width = 0;
  std::size_t crop_y = 0;
  std::size_t crop_x = 0;
  std::size_t crop_size = 0;
  bool flip = false;

  friend bool operator==(const TransformParams&,
                         const TransformParams&) = default;
};

/// Draws the short-side size, crop offset and flip (train), or computes the
/// centre crop (val). Throws GeometryError if the resized frame is smaller
/// than the crop.
TransformParams draw_transform(Rng& rng, std::size_t height, std::size_t width,
                               const AugConfig& cfg, TransformMode mode);

Clip apply_transform(const TransformParams& params, const Clip& clip,
                     Interpolation interp = Interpolation::kBilinear);
BinaryMask apply_transform(const TransformParams& params,
                           const BinaryMask& mask);
InstanceMaskSet apply_transform(const TransformParams& params,
                                const InstanceMaskSet& masks);

struct TransformedClip {
  Clip clip;
  InstanceMaskSet masks;
  TransformParams params;
};

/// draw_transform followed by apply_transform on the clip and every
/// instance mask with the same geometry.
TransformedClip spatial_transform(Rng& rng, const Clip& clip,
                                  const InstanceMaskSet& masks,
                                  const AugConfig& cfg, TransformMode mode);

/// A manifest clip after loading, frame sampling and spatial transform.
struct PreparedClip {
  LabeledClip sample;
  InstanceMaskSet masks;
  std::vector<std::size_t> frame_indices;
  TransformParams transform;
};

PreparedClip prepare_clip(const ClipManifestEntry& entry, const AugConfig& cfg,
                          std::size_t num_classes, Rng& rng);

/// True for strategies that draw a VideoMix patch.
bool uses_patch(Strategy s) noexcept;

/// Composes one output with `fg` as primary source: its objects (ObjectMix),
/// its background (VideoMix) or objects plus patch (combined) over `bg`.
/// strategy none returns `fg` unchanged with its own label.
MixedSample mix_directed(const PreparedClip& fg, const PreparedClip& bg,
                         Strategy strategy, const AugConfig& cfg,
                         const std::optional<PatchSpec>& patch,
                         Direction direction);

/// Loads and prepares both entries, then emits the 12 and 21 samples of the
/// configured strategy. Draw order: entry 1 preparation, entry 2
/// preparation, then the patch when the strategy uses one.
std::pair<MixedSample, MixedSample> augment_pair(
    const ClipManifestEntry& entry1, const ClipManifestEntry& entry2,
    const AugConfig& cfg, std::size_t num_classes, Rng& rng);

struct AugmentSummary {
  std::size_t samples = 0;
  std::size_t batches = 0;
  std::size_t applied_batches = 0;
};

/// Runs the batched pipeline over a manifest. Entries are split into
/// consecutive batches of cfg.batch_size; each batch gets one plan, each
/// sample i emits the composition of entry i with entry pairing[i]. Writes
///   <out>/clips/<NNNNNN>_<clip_id>/frame_*.png
///   <out>/labels.jsonl      one soft label per sample
///   <out>/provenance.jsonl  frames, transform, patch and lambda per sample
///   <out>/plans.jsonl       one BatchMixPlan per batch
/// Every random draw comes from a stream derived from (seed, purpose,
/// index), so the output is identical for any worker count.
AugmentSummary run_augment(const std::vector<ClipManifestEntry>& entries,
                           const AugConfig& cfg,
                           const std::filesystem::path& out_dir);

/// Coverage of a clip's masks under both aggregation modes.
struct MaskStats {
  double lambda_spatial = 0.0;
  double lambda_spatiotemporal = 0.0;
};

MaskStats compute_mask_stats(const InstanceMaskSet& masks);

/// Counts of values in ten equal bins over [0, 1]; 1.0 falls in the last.
std::array<std::size_t, 10> histogram10(const std::vector<double>& values);

}  // namespace vidmix

#endif  // VIDMIX_PIPELINE_HPP_
