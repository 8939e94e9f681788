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

#include "vidmix/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "vidmix/error.hpp"
#include "vidmix/frame_io.hpp"

namespace vidmix {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::vector<ClipManifestEntry> parse_manifest(std::string_view text,
                                              const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("manifest is not valid JSON: ") +
                          e.what());
  }
  if (!doc.is_array()) throw InvalidArgument("manifest must be a JSON array");
  std::vector<ClipManifestEntry> entries;
  entries.reserve(doc.size());
  try {
    for (const auto& j : doc) {
      ClipManifestEntry e;
      e.id = j.at("clip_id").get<std::string>();
      e.frame_dir = base_dir / j.at("frame_dir").get<std::string>();
      e.frame_count = j.at("frame_count").get<std::size_t>();
      e.label = j.at("label").get<std::size_t>();
      e.mask_file = base_dir / j.at("mask_file").get<std::string>();
      if (e.id.empty()) throw InvalidArgument("manifest entry has empty id");
      if (e.frame_count == 0) {
        throw InvalidArgument("manifest entry '" + e.id + "' has no frames");
      }
      entries.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("manifest entry is malformed: ") +
                          e.what());
  }
  return entries;
}

std::vector<ClipManifestEntry> load_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path.parent_path());
}

PreparedClip prepare_clip(const ClipManifestEntry& entry, const AugConfig& cfg,
                          std::size_t num_classes, Rng& rng) {
  try {
    InstanceMaskSet masks =
        load_mask_file(entry.mask_file).filter_by_score(cfg.min_score);
    if (masks.frame_count() != entry.frame_count) {
      throw DimensionMismatch(entry.mask_file.string() + " has " +
                              std::to_string(masks.frame_count()) +
                              " frames, manifest says " +
                              std::to_string(entry.frame_count));
    }
    PreparedClip out;
    out.frame_indices = sample_frames(rng, entry.frame_count, cfg.clip_len);
    Clip clip = load_clip(entry.frame_dir, out.frame_indices);
    if (clip.shape().height != masks.height() ||
        clip.shape().width != masks.width()) {
      throw DimensionMismatch(
          "frames are " + std::to_string(clip.shape().height) + "x" +
          std::to_string(clip.shape().width) + " but masks are " +
          std::to_string(masks.height()) + "x" + std::to_string(masks.width()));
    }
    TransformedClip tr = spatial_transform(
        rng, clip, masks.select_frames(out.frame_indices), cfg, cfg.mode);
    out.sample.id = entry.id;
    out.sample.clip = std::move(tr.clip);
    out.sample.label = Label::one_hot(entry.label, num_classes);
    out.masks = std::move(tr.masks);
    out.transform = tr.params;
    return out;
  } catch (const Error& e) {
    throw Error(e.kind(), "clip '" + entry.id + "': " + e.what());
  }
}

bool uses_patch(Strategy s) noexcept {
  return s == Strategy::kVideoMix || s == Strategy::kCombined;
}

namespace {

MixedSample combined_directed(const PreparedClip& fg, const PreparedClip& bg,
                              const AugConfig& cfg, const PatchSpec& patch,
                              Direction direction) {
  const ClipShape& shape = fg.sample.clip.shape();
  AggregatedMask objects = aggregate(fg.masks, cfg.combined_mask_mode);
  const Clip with_objects = compose(fg.sample.clip, bg.sample.clip, objects);
  auto [clip, patch_weight] = apply_videomix(with_objects, fg.sample.clip,
                                             patch);
  (void)patch_weight;

  // Pixels from fg: objects plus the patch.
  const BinaryMask rect =
      rect_mask(rasterize(patch, shape.width, shape.height), shape.height,
                shape.width);
  AggregatedMask pasted = objects;
  for (auto& m : pasted.per_frame) {
    const std::array<BinaryMask, 2> parts{m, rect};
    m = aggregate_instances(std::span<const BinaryMask>(parts), shape.height,
                            shape.width);
  }

  MixedSample out;
  out.clip = std::move(clip);
  out.lam = coverage_lambda(pasted, shape);
  out.label = blend_labels(fg.sample.label, bg.sample.label, out.lam);
  out.provenance.sources = {fg.sample.id, bg.sample.id};
  out.provenance.strategy = Strategy::kCombined;
  out.provenance.direction = direction;
  return out;
}

}  // namespace

MixedSample mix_directed(const PreparedClip& fg, const PreparedClip& bg,
                         Strategy strategy, const AugConfig& cfg,
                         const std::optional<PatchSpec>& patch,
                         Direction direction) {
  if (uses_patch(strategy) && !patch) {
    throw InvalidArgument(std::string(to_string(strategy)) +
                          " needs a VideoMix patch");
  }
  const ObjectMixOptions om{cfg.lambda_source};
  switch (strategy) {
    case Strategy::kNone: {
      MixedSample out;
      out.clip = fg.sample.clip;
      out.label = fg.sample.label;
      out.lam = 1.0;
      out.provenance = {{fg.sample.id}, Strategy::kNone, Direction::kNone};
      return out;
    }
    case Strategy::kObjectMix:
      return object_mix_directed(fg.sample, bg.sample, MaskMode::kSpatial,
                                 fg.masks, om, direction);
    case Strategy::kObjectMixOr:
      return object_mix_directed(fg.sample, bg.sample,
                                 MaskMode::kSpatiotemporal, fg.masks, om,
                                 direction);
    case Strategy::kVideoMix:
      return videomix_sample(fg.sample, bg.sample, *patch,
                             cfg.patch_label_source, direction);
    case Strategy::kCombined:
      return combined_directed(fg, bg, cfg, *patch, direction);
  }
  throw InvalidArgument("unknown strategy");
}

std::pair<MixedSample, MixedSample> augment_pair(
    const ClipManifestEntry& entry1, const ClipManifestEntry& entry2,
    const AugConfig& cfg, std::size_t num_classes, Rng& rng) {
  cfg.validate();
  const PreparedClip a = prepare_clip(entry1, cfg, num_classes, rng);
  const PreparedClip b = prepare_clip(entry2, cfg, num_classes, rng);
  if (a.sample.clip.shape() != b.sample.clip.shape()) {
    throw DimensionMismatch("clips '" + entry1.id + "' and '" + entry2.id +
                            "' differ in shape after transform");
  }
  std::optional<PatchSpec> patch;
  if (uses_patch(cfg.strategy)) {
    const ClipShape& s = a.sample.clip.shape();
    patch = sample_patch(rng, cfg.alpha, s.width, s.height);
  }
  return {mix_directed(a, b, cfg.strategy, cfg, patch, Direction::k12),
          mix_directed(b, a, cfg.strategy, cfg, patch, Direction::k21)};
}

namespace {

/// Runs fn(i) for i in [0, n) on `workers` threads. The exception of the
/// lowest failing index is rethrown.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    const std::size_t count = std::min(workers, n);
    pool.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) run(i);
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ordered_json transform_json(const TransformParams& p) {
  ordered_json j = {{"resized_height", p.resized_height},
                    {"resized_width", p.resized_width},
                    {"crop_y", p.crop_y},
                    {"crop_x", p.crop_x},
                    {"crop_size", p.crop_size},
                    {"flip", p.flip}};
  return j;
}

std::string sample_name(std::size_t index, const std::string& id) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%06zu_", index);
  return buf + id;
}

void write_sample_dir(const fs::path& clips_dir, const std::string& name,
                      const Clip& clip) {
  const fs::path final_dir = clips_dir / name;
  const fs::path tmp_dir = clips_dir / ("." + name + ".tmp");
  fs::remove_all(tmp_dir);
  fs::create_directories(tmp_dir);
  write_clip_frames(tmp_dir, clip);
  fs::remove_all(final_dir);
  std::error_code ec;
  fs::rename(tmp_dir, final_dir, ec);
  if (ec) {
    throw IoError("cannot move " + tmp_dir.string() + " into place: " +
                  ec.message());
  }
}

struct SampleRecord {
  std::string label_line;
  std::string provenance_line;
};

}  // namespace

AugmentSummary run_augment(const std::vector<ClipManifestEntry>& entries,
                           const AugConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  if (entries.empty()) throw InvalidArgument("manifest is empty");
  std::size_t num_classes = cfg.num_classes;
  if (num_classes == 0) {
    for (const auto& e : entries) num_classes = std::max(num_classes, e.label + 1);
  }
  for (const auto& e : entries) {
    if (e.label >= num_classes) {
      throw InvalidArgument("clip '" + e.id + "' has label " +
                            std::to_string(e.label) + " >= class count " +
                            std::to_string(num_classes));
    }
  }

  const fs::path clips_dir = out_dir / "clips";
  fs::create_directories(clips_dir);

  AugmentSummary summary;
  std::vector<SampleRecord> records(entries.size());
  std::string plans_text;
  const std::size_t n = entries.size();
  const std::size_t bsz = cfg.batch_size;

  for (std::size_t first = 0, batch = 0; first < n; first += bsz, ++batch) {
    const std::size_t size = std::min(bsz, n - first);
    Rng plan_rng = Rng::derive(cfg.seed, stream::kBatchPlan, batch);
    BatchMixPlan plan = plan_batch(plan_rng, size, cfg.p, cfg.strategy);

    std::vector<PreparedClip> prepared(size);
    parallel_for(size, cfg.workers, [&](std::size_t i) {
      Rng rng = Rng::derive(cfg.seed, stream::kClipPrep, first + i);
      prepared[i] = prepare_clip(entries[first + i], cfg, num_classes, rng);
    });
    for (std::size_t i = 1; i < size; ++i) {
      if (prepared[i].sample.clip.shape() != prepared[0].sample.clip.shape()) {
        throw DimensionMismatch("clips '" + prepared[0].sample.id + "' and '" +
                                prepared[i].sample.id +
                                "' differ in shape after transform");
      }
    }

    parallel_for(size, cfg.workers, [&](std::size_t i) {
      const std::size_t global = first + i;
      const PreparedClip& fg = prepared[i];
      const PreparedClip& bg = prepared[plan.pairing[i]];
      std::optional<PatchSpec> patch;
      if (plan.applied && uses_patch(plan.strategy)) {
        Rng rng = Rng::derive(cfg.seed, stream::kMix, global);
        const ClipShape& s = fg.sample.clip.shape();
        patch = sample_patch(rng, cfg.alpha, s.width, s.height);
      }
      const MixedSample sample =
          mix_directed(fg, bg, plan.strategy, cfg, patch,
                       plan.applied ? Direction::k12 : Direction::kNone);
      plan.per_sample_lambda[i] = sample.lam;

      const std::string name = sample_name(global, fg.sample.id);
      write_sample_dir(clips_dir, name, sample.clip);

      ordered_json label = {
          {"clip_id", name},
          {"weights", std::vector<double>(sample.label.weights().begin(),
                                          sample.label.weights().end())},
          {"lambda", sample.lam},
          {"direction", std::string(to_string(sample.provenance.direction))},
          {"sources", sample.provenance.sources}};
      ordered_json prov = {
          {"clip_id", name},
          {"batch", batch},
          {"index", i},
          {"applied", plan.applied},
          {"strategy", std::string(to_string(sample.provenance.strategy))},
          {"lambda", sample.lam},
          {"frames", fg.frame_indices},
          {"transform", transform_json(fg.transform)}};
      if (plan.applied) {
        prov["partner"] = bg.sample.id;
        prov["partner_frames"] = bg.frame_indices;
        prov["partner_transform"] = transform_json(bg.transform);
      }
      if (patch) {
        prov["patch"] = {{"lam", patch->lam}, {"w1", patch->w1},
                         {"w2", patch->w2},   {"h1", patch->h1},
                         {"h2", patch->h2}};
      }
      records[global] = {label.dump(), prov.dump()};
    });

    plan.validate();
    plans_text += plan.to_json();
    plans_text += '\n';
    ++summary.batches;
    if (plan.applied) ++summary.applied_batches;
  }

  std::string labels_text;
  std::string prov_text;
  for (const auto& r : records) {
    labels_text += r.label_line + '\n';
    prov_text += r.provenance_line + '\n';
  }
  write_file_atomic(out_dir / "labels.jsonl", labels_text);
  write_file_atomic(out_dir / "provenance.jsonl", prov_text);
  write_file_atomic(out_dir / "plans.jsonl", plans_text);
  summary.samples = n;
  return summary;
}

MaskStats compute_mask_stats(const InstanceMaskSet& masks) {
  const ClipShape shape{masks.frame_count(), 1, masks.height(), masks.width()};
  const AggregatedMask spatial = aggregate_spatial(masks);
  MaskStats stats;
  stats.lambda_spatial = coverage_lambda(spatial, shape);
  stats.lambda_spatiotemporal =
      coverage_lambda(aggregate_temporal(spatial), shape);
  return stats;
}

std::array<std::size_t, 10> histogram10(const std::vector<double>& values) {
  std::array<std::size_t, 10> bins{};
  for (double v : values) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    const auto bin =
        std::min<std::size_t>(9, static_cast<std::size_t>(clamped * 10.0));
    ++bins[bin];
  }
  return bins;
}

}  // namespace vidmix
