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

#include "vidmix/core.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "vidmix/error.hpp"

namespace vidmix {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kDimensionMismatch:
      return "dimension_mismatch";
    case ErrorKind::kMalformedMask:
      return "malformed_mask";
    case ErrorKind::kInvalidArgument:
      return "invalid_argument";
    case ErrorKind::kGeometry:
      return "geometry";
    case ErrorKind::kIo:
      return "io";
  }
  return "unknown";
}

void ClipShape::validate() const {
  if (frames == 0 || channels == 0 || height == 0 || width == 0) {
    throw InvalidArgument("clip shape has a zero extent: " + to_string());
  }
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  std::size_t n = frames;
  for (std::size_t d : {channels, height, width}) {
    if (n > kMax / d) {
      throw InvalidArgument("clip shape overflows addressable range: " +
                            to_string());
    }
    n *= d;
  }
}

std::string ClipShape::to_string() const {
  std::ostringstream os;
  os << frames << 'x' << channels << 'x' << height << 'x' << width;
  return os.str();
}

Clip::Clip(const ClipShape& shape) : shape_(shape) {
  shape_.validate();
  data_.assign(shape_.element_count(), 0.0f);
}

Clip::Clip(const ClipShape& shape, std::vector<float> data)
    : shape_(shape), data_(std::move(data)) {
  shape_.validate();
  if (data_.size() != shape_.element_count()) {
    throw DimensionMismatch("clip data length " + std::to_string(data_.size()) +
                            " does not match shape " + shape_.to_string());
  }
  for (float v : data_) {
    if (!std::isfinite(v)) throw InvalidArgument("clip holds a non-finite value");
  }
}

FrameView Clip::frame(std::size_t t) const {
  if (t >= shape_.frames) throw InvalidArgument("frame index out of range");
  const std::size_t n = shape_.frame_size();
  return {std::span<const float>(data_).subspan(t * n, n), shape_.channels,
          shape_.height, shape_.width};
}

MutableFrameView Clip::mutable_frame(std::size_t t) {
  if (t >= shape_.frames) throw InvalidArgument("frame index out of range");
  const std::size_t n = shape_.frame_size();
  return {std::span<float>(data_).subspan(t * n, n), shape_.channels,
          shape_.height, shape_.width};
}

BinaryMask::BinaryMask(std::size_t height, std::size_t width,
                       std::uint8_t fill)
    : height_(height), width_(width), bits_(height * width, fill ? 1 : 0) {}

BinaryMask::BinaryMask(std::size_t height, std::size_t width,
                       std::vector<std::uint8_t> bits)
    : height_(height), width_(width), bits_(std::move(bits)) {
  if (bits_.size() != height_ * width_) {
    throw MalformedMask("mask has " + std::to_string(bits_.size()) +
                        " bits, expected " + std::to_string(height_ * width_));
  }
  for (std::uint8_t b : bits_) {
    if (b > 1) throw MalformedMask("mask bit outside {0,1}");
  }
}

Label::Label(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InvalidArgument("label has no classes");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("label weight is negative or non-finite");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kLabelSumTolerance) {
    throw InvalidArgument("label weights sum to " + std::to_string(sum) +
                          ", expected 1");
  }
}

Label Label::one_hot(std::size_t cls, std::size_t num_classes) {
  if (cls >= num_classes) {
    throw InvalidArgument("class index " + std::to_string(cls) +
                          " out of range for " + std::to_string(num_classes) +
                          " classes");
  }
  std::vector<double> w(num_classes, 0.0);
  w[cls] = 1.0;
  return Label(std::move(w));
}

namespace {

void check_blend_shapes(FrameView fg, FrameView bg, const BinaryMask& mask) {
  if (fg.channels != bg.channels || fg.height != bg.height ||
      fg.width != bg.width) {
    throw DimensionMismatch("foreground and background frames differ in shape");
  }
  if (mask.height() != fg.height || mask.width() != fg.width) {
    throw DimensionMismatch("mask is " + std::to_string(mask.height()) + "x" +
                            std::to_string(mask.width()) + ", frame is " +
                            std::to_string(fg.height) + "x" +
                            std::to_string(fg.width));
  }
  const std::size_t n = fg.channels * fg.height * fg.width;
  if (fg.pixels.size() != n || bg.pixels.size() != n) {
    throw DimensionMismatch("frame buffer length does not match its shape");
  }
}

}  // namespace

void blend_frame_into(FrameView fg, FrameView bg, const BinaryMask& mask,
                      MutableFrameView out) {
  check_blend_shapes(fg, bg, mask);
  if (out.channels != fg.channels || out.height != fg.height ||
      out.width != fg.width || out.pixels.size() != fg.pixels.size()) {
    throw DimensionMismatch("output frame differs in shape from inputs");
  }
  const std::size_t plane = fg.height * fg.width;
  const std::uint8_t* m = mask.bits().data();
  for (std::size_t c = 0; c < fg.channels; ++c) {
    const float* f = fg.pixels.data() + c * plane;
    const float* b = bg.pixels.data() + c * plane;
    float* o = out.pixels.data() + c * plane;
    for (std::size_t i = 0; i < plane; ++i) o[i] = m[i] ? f[i] : b[i];
  }
}

Frame blend_frame(FrameView fg, FrameView bg, const BinaryMask& mask) {
  check_blend_shapes(fg, bg, mask);
  Frame out{fg.channels, fg.height, fg.width,
            std::vector<float>(fg.pixels.size())};
  blend_frame_into(fg, bg, mask,
                   {out.pixels, out.channels, out.height, out.width});
  return out;
}

std::size_t mask_area(const BinaryMask& mask) noexcept {
  const auto bits = mask.bits();
  return std::accumulate(bits.begin(), bits.end(), std::size_t{0});
}

BinaryMask complement(const BinaryMask& mask) {
  std::vector<std::uint8_t> bits(mask.bits().begin(), mask.bits().end());
  for (auto& b : bits) b ^= 1;
  return BinaryMask(mask.height(), mask.width(), std::move(bits));
}

}  // namespace vidmix
