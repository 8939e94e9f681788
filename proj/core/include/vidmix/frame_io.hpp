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

#ifndef VIDMIX_FRAME_IO_HPP_
#define VIDMIX_FRAME_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vidmix/core.hpp"

namespace vidmix {

/// 8-bit interleaved image, row-major, `channels` samples per pixel.
struct Image8 {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 3;
  std::vector<std::uint8_t> bytes;

  friend bool operator==(const Image8&, const Image8&) = default;
};

/// Reads any 8/16-bit PNG and returns it as 8-bit RGB.
Image8 read_png_rgb(const std::filesystem::path& path);

/// Writes an 8-bit RGB PNG with fixed encoder settings, so equal images
/// produce equal files.
void write_png_rgb(const std::filesystem::path& path, const Image8& image);

/// Round-half-to-even of v * 255, clamped to [0, 255].
std::uint8_t quantize_u8(float v) noexcept;

/// `frame_000001.png` for index 0.
std::string frame_file_name(std::size_t index);

/// Loads the listed 0-based frame indices from `dir` into a clip; every
/// frame must have the same size.
Clip load_clip(const std::filesystem::path& dir,
               std::span<const std::size_t> indices);

/// Size of the first frame in `dir`, as (height, width).
std::pair<std::size_t, std::size_t> probe_frame_size(
    const std::filesystem::path& dir);

Image8 frame_to_image(const Clip& clip, std::size_t t);
Clip clip_from_images(std::span<const Image8> frames);

/// Writes frame_000001.png... into `dir`, which must exist.
void write_clip_frames(const std::filesystem::path& dir, const Clip& clip);

/// Writes `contents` to `path` through a sibling temp file and rename.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

}  // namespace vidmix

#endif  // VIDMIX_FRAME_IO_HPP_
