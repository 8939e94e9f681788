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

#include "vidmix/frame_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <utility>

#include "vidmix/error.hpp"

namespace vidmix {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
  auto* what = static_cast<std::string*>(png_get_error_ptr(png));
  if (what) *what = msg;
  png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

}  // namespace

Image8 read_png_rgb(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw IoError("cannot open frame " + path.string());

  std::string err;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err,
                                           png_error_fn, png_warning_fn);
  if (!png) throw IoError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  Image8 img;
  std::vector<png_bytep> rows;
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    throw IoError("cannot decode PNG " + path.string() + ": " + err);
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  const png_byte color = png_get_color_type(png, info);
  const png_byte depth = png_get_bit_depth(png, info);
  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  img.width = png_get_image_width(png, info);
  img.height = png_get_image_height(png, info);
  img.channels = 3;
  if (png_get_rowbytes(png, info) != img.width * 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("unsupported PNG layout in " + path.string());
  }
  img.bytes.resize(img.height * img.width * 3);
  rows.resize(img.height);
  for (std::size_t y = 0; y < img.height; ++y) {
    rows[y] = img.bytes.data() + y * img.width * 3;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

void write_png_rgb(const std::filesystem::path& path, const Image8& image) {
  if (image.channels != 3 ||
      image.bytes.size() != image.height * image.width * 3) {
    throw InvalidArgument("write_png_rgb expects an RGB image");
  }
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot create " + path.string());

  std::string err;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err,
                                            png_error_fn, png_warning_fn);
  if (!png) throw IoError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows(image.height);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, info ? &info : nullptr);
    throw IoError("cannot encode PNG " + path.string() + ": " + err);
  }
  png_init_io(png, fp.get());
  png_set_compression_level(png, 6);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_NONE);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t y = 0; y < image.height; ++y) {
    rows[y] = const_cast<png_bytep>(image.bytes.data() + y * image.width * 3);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fflush(fp.get()) != 0) {
    throw IoError("cannot write " + path.string());
  }
}

std::uint8_t quantize_u8(float v) noexcept {
  const float scaled = std::nearbyint(v * 255.0f);
  if (!(scaled > 0.0f)) return 0;
  if (scaled >= 255.0f) return 255;
  return static_cast<std::uint8_t>(scaled);
}

std::string frame_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%06zu.png", index + 1);
  return buf;
}

Clip clip_from_images(std::span<const Image8> frames) {
  if (frames.empty()) throw InvalidArgument("clip needs at least one frame");
  ClipShape shape{frames.size(), 3, frames[0].height, frames[0].width};
  std::vector<float> data(shape.element_count());
  const std::size_t plane = shape.plane_size();
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const Image8& img = frames[t];
    if (img.height != shape.height || img.width != shape.width ||
        img.channels != 3) {
      throw DimensionMismatch("frame " + std::to_string(t) + " is " +
                              std::to_string(img.height) + "x" +
                              std::to_string(img.width) + ", expected " +
                              std::to_string(shape.height) + "x" +
                              std::to_string(shape.width));
    }
    float* out = data.data() + t * shape.frame_size();
    for (std::size_t i = 0; i < plane; ++i) {
      for (std::size_t c = 0; c < 3; ++c) {
        out[c * plane + i] = static_cast<float>(img.bytes[i * 3 + c]) / 255.0f;
      }
    }
  }
  return Clip(shape, std::move(data));
}

Clip load_clip(const std::filesystem::path& dir,
               std::span<const std::size_t> indices) {
  std::vector<Image8> frames;
  frames.reserve(indices.size());
  for (std::size_t i : indices) {
    frames.push_back(read_png_rgb(dir / frame_file_name(i)));
  }
  try {
    return clip_from_images(frames);
  } catch (const DimensionMismatch& e) {
    throw DimensionMismatch(dir.string() + ": " + e.what());
  }
}

std::pair<std::size_t, std::size_t> probe_frame_size(
    const std::filesystem::path& dir) {
  const Image8 img = read_png_rgb(dir / frame_file_name(0));
  return {img.height, img.width};
}

Image8 frame_to_image(const Clip& clip, std::size_t t) {
  const ClipShape& s = clip.shape();
  if (s.channels != 3) {
    throw InvalidArgument("only 3-channel clips can be written as RGB");
  }
  Image8 img{s.height, s.width, 3, std::vector<std::uint8_t>(s.plane_size() * 3)};
  const FrameView f = clip.frame(t);
  const std::size_t plane = s.plane_size();
  for (std::size_t i = 0; i < plane; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      img.bytes[i * 3 + c] = quantize_u8(f.pixels[c * plane + i]);
    }
  }
  return img;
}

void write_clip_frames(const std::filesystem::path& dir, const Clip& clip) {
  for (std::size_t t = 0; t < clip.shape().frames; ++t) {
    write_png_rgb(dir / frame_file_name(t), frame_to_image(clip, t));
  }
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() +
                  ": " + ec.message());
  }
}

}  // namespace vidmix
