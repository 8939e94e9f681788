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

#ifndef VIDMIX_CORE_HPP_
#define VIDMIX_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vidmix {

/// Dimensions of a T x C x H x W clip.
struct ClipShape {
  std::size_t frames = 1;
  std::size_t channels = 3;
  std::size_t height = 1;
  std::size_t width = 1;

  /// Throws InvalidArgument if any extent is zero or the element count
  /// overflows size_t.
  void validate() const;

  std::size_t plane_size() const noexcept { return height * width; }
  std::size_t frame_size() const noexcept { return channels * plane_size(); }
  std::size_t element_count() const noexcept { return frames * frame_size(); }

  std::string to_string() const;

  friend bool operator==(const ClipShape&, const ClipShape&) = default;
};

/// Read-only view of one C x H x W frame.
struct FrameView {
  std::span<const float> pixels;
  std::size_t channels = 0;
  std::size_t height = 0;
  std::size_t width = 0;
};

struct MutableFrameView {
  std::span<float> pixels;
  std::size_t channels = 0;
  std::size_t height = 0;
  std::size_t width = 0;

  operator FrameView() const noexcept {
    return {pixels, channels, height, width};
  }
};

/// Owning C x H x W frame.
struct Frame {
  std::size_t channels = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<float> pixels;

  FrameView view() const noexcept { return {pixels, channels, height, width}; }

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Dense video clip with normalized intensities in frame-major
/// (t, c, h, w) order.
class Clip {
 public:
  Clip() = default;

  /// Zero-filled clip.
  explicit Clip(const ClipShape& shape);

  /// Takes ownership of `data`; its length must equal the shape's element
  /// count and every value must be finite.
  Clip(const ClipShape& shape, std::vector<float> data);

  const ClipShape& shape() const noexcept { return shape_; }
  std::span<const float> data() const noexcept { return data_; }
  std::span<float> mutable_data() noexcept { return data_; }

  FrameView frame(std::size_t t) const;
  MutableFrameView mutable_frame(std::size_t t);

  float at(std::size_t t, std::size_t c, std::size_t h, std::size_t w) const {
    return data_[index(t, c, h, w)];
  }
  float& at(std::size_t t, std::size_t c, std::size_t h, std::size_t w) {
    return data_[index(t, c, h, w)];
  }

  friend bool operator==(const Clip&, const Clip&) = default;

 private:
  std::size_t index(std::size_t t, std::size_t c, std::size_t h,
                    std::size_t w) const noexcept {
    return ((t * shape_.channels + c) * shape_.height + h) * shape_.width + w;
  }

  ClipShape shape_{};
  std::vector<float> data_;
};

/// H x W map of {0,1} bytes in row-major order.
class BinaryMask {
 public:
  BinaryMask() = default;

  /// Mask of the given size with every bit set to `fill`.
  BinaryMask(std::size_t height, std::size_t width, std::uint8_t fill = 0);

  /// Throws MalformedMask if `bits` has the wrong length or holds a value
  /// other than 0 or 1.
  BinaryMask(std::size_t height, std::size_t width,
             std::vector<std::uint8_t> bits);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  std::uint8_t at(std::size_t h, std::size_t w) const {
    return bits_[h * width_ + w];
  }
  void set(std::size_t h, std::size_t w, bool on) {
    bits_[h * width_ + w] = on ? 1 : 0;
  }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Probability vector over L action classes.
class Label {
 public:
  Label() = default;

  /// Throws InvalidArgument unless weights are non-empty, non-negative and
  /// sum to 1 within 1e-9.
  explicit Label(std::vector<double> weights);

  static Label one_hot(std::size_t cls, std::size_t num_classes);

  std::size_t num_classes() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t c) const { return weights_[c]; }

  friend bool operator==(const Label&, const Label&) = default;

 private:
  std::vector<double> weights_;
};

inline constexpr double kLabelSumTolerance = 1e-9;

/// out(c,h,w) = fg(c,h,w) where mask(h,w) = 1, bg(c,h,w) elsewhere.
/// `out` may alias neither input.
void blend_frame_into(FrameView fg, FrameView bg, const BinaryMask& mask,
                      MutableFrameView out);

Frame blend_frame(FrameView fg, FrameView bg, const BinaryMask& mask);

/// Number of set bits.
std::size_t mask_area(const BinaryMask& mask) noexcept;

BinaryMask complement(const BinaryMask& mask);

}  // namespace vidmix

#endif  // VIDMIX_CORE_HPP_
