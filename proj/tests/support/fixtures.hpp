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

// Random fixture generators and filesystem helpers shared by the tests.
#ifndef VIDMIX_TESTS_FIXTURES_HPP_
#define VIDMIX_TESTS_FIXTURES_HPP_

#include <openssl/evp.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vidmix/core.hpp"
#include "vidmix/frame_io.hpp"
#include "vidmix/masks.hpp"

namespace vidmix::testing {

namespace fs = std::filesystem;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_);
  }
  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  bool coin(double p = 0.5) { return real(0.0, 1.0) < p; }

  /// Values are multiples of 1/255 so they survive 8-bit round trips.
  Clip clip(const ClipShape& s) {
    std::vector<float> d(s.element_count());
    for (auto& v : d) v = static_cast<float>(size(0, 255)) / 255.0f;
    return Clip(s, std::move(d));
  }

  std::vector<std::uint8_t> bits(std::size_t n, double density) {
    std::vector<std::uint8_t> b(n);
    for (auto& v : b) v = coin(density) ? 1 : 0;
    return b;
  }

  BinaryMask mask(std::size_t h, std::size_t w, double density) {
    return BinaryMask(h, w, bits(h * w, density));
  }

  /// Random instance set plus its raw bits for the oracles.
  InstanceMaskSet instance_set(
      std::size_t t, std::size_t h, std::size_t w, std::size_t max_instances,
      std::vector<std::vector<std::vector<std::uint8_t>>>* raw = nullptr) {
    std::vector<std::vector<Instance>> frames(t);
    if (raw) raw->assign(t, {});
    for (std::size_t ti = 0; ti < t; ++ti) {
      const std::size_t n = size(0, max_instances);
      for (std::size_t k = 0; k < n; ++k) {
        auto b = bits(h * w, real(0.0, 0.4));
        if (raw) (*raw)[ti].push_back(b);
        Instance inst{BinaryMask(h, w, std::move(b)),
                      static_cast<int>(size(0, 79)), real(0.0, 1.0)};
        frames[ti].push_back(std::move(inst));
      }
    }
    return InstanceMaskSet(h, w, std::move(frames));
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline oracle::Volume to_volume(const Clip& c) {
  const auto& s = c.shape();
  return {s.frames, s.channels, s.height, s.width,
          std::vector<float>(c.data().begin(), c.data().end())};
}

inline oracle::Bits to_bits(const AggregatedMask& m) {
  oracle::Bits b;
  b.t = m.per_frame.size();
  b.h = m.per_frame.empty() ? 0 : m.per_frame[0].height();
  b.w = m.per_frame.empty() ? 0 : m.per_frame[0].width();
  for (const auto& f : m.per_frame)
    b.b.insert(b.b.end(), f.bits().begin(), f.bits().end());
  return b;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("vidmix_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

/// Relative path -> SHA-256 of the raw bytes, for every regular file.
inline std::map<std::string, std::string> file_digests(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    out[fs::relative(e.path(), root).generic_string()] =
        sha256_hex(read_file(e.path()));
  }
  return out;
}

/// Like file_digests, but PNGs are hashed on their decoded RGB samples so
/// the digest does not depend on the zlib build.
inline std::map<std::string, std::string> content_digests(
    const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    const std::string rel = fs::relative(e.path(), root).generic_string();
    if (e.path().extension() == ".png") {
      const Image8 img = read_png_rgb(e.path());
      std::string blob = std::to_string(img.height) + "x" +
                         std::to_string(img.width) + ":";
      blob.append(img.bytes.begin(), img.bytes.end());
      out[rel] = sha256_hex(blob);
    } else {
      out[rel] = sha256_hex(read_file(e.path()));
    }
  }
  return out;
}

/// Digest of a whole tree: SHA-256 over sorted "path digest" lines.
inline std::string tree_digest(const std::map<std::string, std::string>& m) {
  std::string s;
  for (const auto& [k, v] : m) s += k + " " + v + "\n";
  return sha256_hex(s);
}

/// Writes a synthetic dataset: `clips` clips of `frames` frames, h x w,
/// random pixels and random instance masks, plus manifest.json.
inline fs::path write_dataset(const fs::path& root, Gen& gen, std::size_t clips,
                              std::size_t frames, std::size_t h, std::size_t w,
                              std::size_t classes) {
  std::ostringstream manifest;
  manifest << "[";
  for (std::size_t k = 0; k < clips; ++k) {
    const std::string id = "c" + std::to_string(k);
    const fs::path dir = root / "frames" / id;
    fs::create_directories(dir);
    fs::create_directories(root / "masks");
    const Clip clip = gen.clip({frames, 3, h, w});
    write_clip_frames(dir, clip);
    const InstanceMaskSet set = gen.instance_set(frames, h, w, 2);
    write_text(root / "masks" / (id + ".json"), to_mask_json(set));
    manifest << (k ? "," : "") << "{\"clip_id\":\"" << id
             << "\",\"frame_dir\":\"frames/" << id
             << "\",\"frame_count\":" << frames
             << ",\"label\":" << (k % classes) << ",\"mask_file\":\"masks/"
             << id << ".json\"}";
  }
  manifest << "]";
  write_text(root / "manifest.json", manifest.str());
  return root / "manifest.json";
}

}  // namespace vidmix::testing

#endif  // VIDMIX_TESTS_FIXTURES_HPP_
