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

#include "vidmix/masks.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "vidmix/error.hpp"

namespace vidmix {

using nlohmann::json;

std::string_view to_string(MaskMode mode) noexcept {
  return mode == MaskMode::kSpatial ? "spatial" : "spatiotemporal";
}

InstanceMaskSet::InstanceMaskSet(std::size_t height, std::size_t width,
                                 std::vector<std::vector<Instance>> frames)
    : height_(height), width_(width), frames_(std::move(frames)) {
  if (height_ == 0 || width_ == 0) {
    throw InvalidArgument("instance mask set has a zero extent");
  }
  for (std::size_t t = 0; t < frames_.size(); ++t) {
    for (const auto& inst : frames_[t]) {
      if (inst.mask.height() != height_ || inst.mask.width() != width_) {
        throw DimensionMismatch("instance mask in frame " + std::to_string(t) +
                                " is not " + std::to_string(height_) + "x" +
                                std::to_string(width_));
      }
      if (inst.category &&
          (*inst.category < 0 || *inst.category > kMaxCategoryId)) {
        throw MalformedMask("category id out of range in frame " +
                            std::to_string(t));
      }
      if (inst.score && !(*inst.score >= 0.0 && *inst.score <= 1.0)) {
        throw MalformedMask("score outside [0,1] in frame " +
                            std::to_string(t));
      }
    }
  }
}

InstanceMaskSet InstanceMaskSet::empty(std::size_t frames, std::size_t height,
                                       std::size_t width) {
  return InstanceMaskSet(height, width,
                         std::vector<std::vector<Instance>>(frames));
}

InstanceMaskSet InstanceMaskSet::select_frames(
    std::span<const std::size_t> indices) const {
  std::vector<std::vector<Instance>> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= frames_.size()) {
      throw InvalidArgument("frame index " + std::to_string(i) +
                            " out of range for " +
                            std::to_string(frames_.size()) + " mask frames");
    }
    out.push_back(frames_[i]);
  }
  InstanceMaskSet sel;
  sel.height_ = height_;
  sel.width_ = width_;
  sel.frames_ = std::move(out);
  return sel;
}

InstanceMaskSet InstanceMaskSet::filter_by_score(double min_score) const {
  InstanceMaskSet out = *this;
  if (min_score <= 0.0) return out;
  for (auto& frame : out.frames_) {
    std::erase_if(frame, [&](const Instance& inst) {
      return inst.score && *inst.score < min_score;
    });
  }
  return out;
}

std::size_t AggregatedMask::total_area() const noexcept {
  std::size_t n = 0;
  for (const auto& m : per_frame) n += mask_area(m);
  return n;
}

namespace {

template <typename Range, typename Proj>
BinaryMask or_reduce(const Range& masks, std::size_t height, std::size_t width,
                     Proj proj) {
  std::vector<std::uint8_t> acc(height * width, 0);
  for (const auto& item : masks) {
    const BinaryMask& m = proj(item);
    if (m.height() != height || m.width() != width) {
      throw DimensionMismatch("instance mask is " + std::to_string(m.height()) +
                              "x" + std::to_string(m.width()) + ", expected " +
                              std::to_string(height) + "x" +
                              std::to_string(width));
    }
    const std::uint8_t* bits = m.bits().data();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] |= bits[i];
  }
  return BinaryMask(height, width, std::move(acc));
}

}  // namespace

BinaryMask aggregate_instances(std::span<const BinaryMask> instances,
                               std::size_t height, std::size_t width) {
  return or_reduce(instances, height, width,
                   [](const BinaryMask& m) -> const BinaryMask& { return m; });
}

BinaryMask aggregate_instances(std::span<const Instance> instances,
                               std::size_t height, std::size_t width) {
  return or_reduce(instances, height, width,
                   [](const Instance& i) -> const BinaryMask& { return i.mask; });
}

AggregatedMask aggregate_spatial(const InstanceMaskSet& set) {
  AggregatedMask out;
  out.mode = MaskMode::kSpatial;
  out.per_frame.reserve(set.frame_count());
  for (const auto& frame : set.frames()) {
    out.per_frame.push_back(
        aggregate_instances(std::span<const Instance>(frame), set.height(),
                            set.width()));
  }
  return out;
}

AggregatedMask aggregate_temporal(const AggregatedMask& spatial) {
  AggregatedMask out;
  out.mode = MaskMode::kSpatiotemporal;
  if (spatial.per_frame.empty()) return out;
  const auto& first = spatial.per_frame.front();
  BinaryMask merged = aggregate_instances(
      std::span<const BinaryMask>(spatial.per_frame), first.height(),
      first.width());
  out.per_frame.assign(spatial.per_frame.size(), merged);
  return out;
}

AggregatedMask aggregate(const InstanceMaskSet& set, MaskMode mode) {
  AggregatedMask spatial = aggregate_spatial(set);
  if (mode == MaskMode::kSpatial) return spatial;
  return aggregate_temporal(spatial);
}

BinaryMask decode_rle(std::span<const std::int64_t> counts,
                      std::size_t height, std::size_t width) {
  const std::size_t total = height * width;
  std::vector<std::uint8_t> bits(total, 0);
  std::size_t pos = 0;  // column-major position
  std::uint8_t value = 0;
  for (std::int64_t run : counts) {
    if (run < 0) throw MalformedMask("negative run length in RLE");
    const auto len = static_cast<std::size_t>(run);
    if (len > total - pos) {
      throw MalformedMask("RLE runs exceed " + std::to_string(height) + "x" +
                          std::to_string(width) + " pixels");
    }
    if (value) {
      for (std::size_t k = pos; k < pos + len; ++k) {
        const std::size_t col = k / height;
        const std::size_t row = k % height;
        bits[row * width + col] = 1;
      }
    }
    pos += len;
    value ^= 1;
  }
  if (pos != total) {
    throw MalformedMask("RLE runs sum to " + std::to_string(pos) +
                        ", expected " + std::to_string(total));
  }
  return BinaryMask(height, width, std::move(bits));
}

std::vector<std::int64_t> encode_rle(const BinaryMask& mask) {
  const std::size_t h = mask.height();
  const std::size_t w = mask.width();
  std::vector<std::int64_t> counts;
  std::uint8_t value = 0;
  std::int64_t run = 0;
  for (std::size_t col = 0; col < w; ++col) {
    for (std::size_t row = 0; row < h; ++row) {
      const std::uint8_t b = mask.at(row, col);
      if (b != value) {
        counts.push_back(run);
        run = 0;
        value = b;
      }
      ++run;
    }
  }
  counts.push_back(run);
  return counts;
}

InstanceMaskSet parse_mask_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedMask(std::string("mask file is not valid JSON: ") +
                        e.what());
  }
  try {
    const auto height = doc.at("height").get<std::int64_t>();
    const auto width = doc.at("width").get<std::int64_t>();
    if (height <= 0 || width <= 0) {
      throw MalformedMask("mask file height/width must be positive");
    }
    const auto& frames_json = doc.at("frames");
    if (!frames_json.is_array() || frames_json.empty()) {
      throw MalformedMask("mask file must list at least one frame");
    }
    const auto h = static_cast<std::size_t>(height);
    const auto w = static_cast<std::size_t>(width);
    std::vector<std::vector<Instance>> frames;
    frames.reserve(frames_json.size());
    for (std::size_t t = 0; t < frames_json.size(); ++t) {
      std::vector<Instance> instances;
      for (const auto& ij : frames_json[t].at("instances")) {
        Instance inst;
        const auto rle = ij.at("rle").get<std::vector<std::int64_t>>();
        try {
          inst.mask = decode_rle(rle, h, w);
        } catch (const MalformedMask& e) {
          throw MalformedMask("frame " + std::to_string(t) + ": " + e.what());
        }
        if (ij.contains("category") && !ij["category"].is_null()) {
          inst.category = ij["category"].get<int>();
        }
        if (ij.contains("score") && !ij["score"].is_null()) {
          inst.score = ij["score"].get<double>();
        }
        instances.push_back(std::move(inst));
      }
      frames.push_back(std::move(instances));
    }
    return InstanceMaskSet(h, w, std::move(frames));
  } catch (const json::exception& e) {
    throw MalformedMask(std::string("mask file has an invalid layout: ") +
                        e.what());
  }
}

InstanceMaskSet load_mask_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open mask file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_mask_json(ss.str());
  } catch (const MalformedMask& e) {
    throw MalformedMask(path.string() + ": " + e.what());
  }
}

std::string to_mask_json(const InstanceMaskSet& set) {
  json frames = json::array();
  for (const auto& frame : set.frames()) {
    json instances = json::array();
    for (const auto& inst : frame) {
      json ij;
      if (inst.category) ij["category"] = *inst.category;
      if (inst.score) ij["score"] = *inst.score;
      ij["rle"] = encode_rle(inst.mask);
      instances.push_back(std::move(ij));
    }
    frames.push_back({{"instances", std::move(instances)}});
  }
  json doc = {{"height", set.height()},
              {"width", set.width()},
              {"frames", std::move(frames)}};
  return doc.dump();
}

}  // namespace vidmix
