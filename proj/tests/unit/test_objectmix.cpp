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

#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "vidmix/error.hpp"
#include "vidmix/objectmix.hpp"

namespace vidmix {
namespace {

using Raw = std::vector<std::vector<std::vector<std::uint8_t>>>;

AggregatedMask filled(std::size_t t, std::size_t h, std::size_t w,
                      std::uint8_t v) {
  return {MaskMode::kSpatial, std::vector<BinaryMask>(t, BinaryMask(h, w, v))};
}

TEST_CASE("coverage_lambda examples") {
  const ClipShape s{2, 3, 2, 2};
  CHECK(coverage_lambda(filled(2, 2, 2, 1), s) == 1.0);
  CHECK(coverage_lambda(filled(2, 2, 2, 0), s) == 0.0);
  AggregatedMask three{MaskMode::kSpatial,
                       {BinaryMask(2, 2, std::vector<std::uint8_t>{1, 1, 0, 0}),
                        BinaryMask(2, 2, std::vector<std::uint8_t>{0, 0, 0, 1})}};
  CHECK(coverage_lambda(three, s) == 0.375);
  CHECK_THROWS_AS(coverage_lambda(filled(3, 2, 2, 1), s), DimensionMismatch);
  CHECK_THROWS_AS(coverage_lambda(filled(2, 2, 3, 1), s), DimensionMismatch);
}

TEST_CASE("compose_pair identity cases") {
  testing::Gen gen(3);
  const ClipShape s{2, 3, 3, 3};
  const Clip v1 = gen.clip(s), v2 = gen.clip(s);
  auto [a, b] = compose_pair(v1, v2, filled(2, 3, 3, 1), filled(2, 3, 3, 1));
  CHECK(a == v1);
  CHECK(b == v2);
  auto [c, d] = compose_pair(v1, v2, filled(2, 3, 3, 0), filled(2, 3, 3, 0));
  CHECK(c == v2);
  CHECK(d == v1);
}

TEST_CASE("compose_pair matches the per-pixel oracle") {
  testing::Gen gen(4);
  for (int iter = 0; iter < 100; ++iter) {
    const ClipShape s{2, 3, 2, 2};
    const Clip v1 = gen.clip(s), v2 = gen.clip(s);
    AggregatedMask m1{MaskMode::kSpatial, {gen.mask(2, 2, 0.5), gen.mask(2, 2, 0.5)}};
    AggregatedMask m2{MaskMode::kSpatial, {gen.mask(2, 2, 0.5), gen.mask(2, 2, 0.5)}};
    const Clip v1_copy = v1;
    auto [v12, v21] = compose_pair(v1, v2, m1, m2);
    const auto o1 = testing::to_volume(v1), o2 = testing::to_volume(v2);
    CHECK(std::vector<float>(v12.data().begin(), v12.data().end()) ==
          oracle::blend(o1, o2, testing::to_bits(m1)));
    CHECK(std::vector<float>(v21.data().begin(), v21.data().end()) ==
          oracle::blend(o2, o1, testing::to_bits(m2)));
    CHECK(v1 == v1_copy);
  }
}

TEST_CASE("compose_pair rejects mismatched shapes") {
  testing::Gen gen(5);
  const Clip a = gen.clip({2, 3, 2, 2}), b = gen.clip({2, 3, 2, 3});
  CHECK_THROWS_AS(compose_pair(a, b, filled(2, 2, 2, 1), filled(2, 2, 2, 1)),
                  DimensionMismatch);
  CHECK_THROWS_AS(compose_pair(a, a, filled(1, 2, 2, 1), filled(2, 2, 2, 1)),
                  DimensionMismatch);
}

TEST_CASE("mix_labels examples") {
  const Label y1 = Label::one_hot(3, 10), y2 = Label::one_hot(7, 10);
  CHECK(mix_labels(y1, y2, 1.0, 0.5).first == y1);
  CHECK(mix_labels(y1, y2, 0.0, 0.5).first == y2);
  auto [y12, y21] = mix_labels(y1, y2, 0.375, 0.25);
  CHECK(y12[3] == 0.375);
  CHECK(y12[7] == 0.625);
  CHECK(y21[3] == 0.75);
  CHECK(y21[7] == 0.25);
  CHECK_THROWS_AS(mix_labels(y1, Label::one_hot(1, 5), 0.5, 0.5),
                  DimensionMismatch);
  CHECK_THROWS_AS(mix_labels(y1, y2, 1.5, 0.5), InvalidArgument);
  CHECK_THROWS_AS(mix_labels(y1, y2, 0.5, -0.1), InvalidArgument);
}

TEST_CASE("mixed labels stay on the segment between sources") {
  testing::Gen gen(6);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t l = gen.size(2, 12);
    const Label y1 = Label::one_hot(gen.size(0, l - 1), l);
    const Label y2 = Label::one_hot(gen.size(0, l - 1), l);
    const double lam = gen.real(0, 1);
    const Label y = mix_labels(y1, y2, lam, lam).first;
    double sum = 0;
    for (std::size_t c = 0; c < l; ++c) {
      CHECK(y[c] >= std::min(y1[c], y2[c]));
      CHECK(y[c] <= std::max(y1[c], y2[c]));
      sum += y[c];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
}

LabeledClip labeled(const std::string& id, Clip c, std::size_t cls) {
  return {id, std::move(c), Label::one_hot(cls, 5)};
}

TEST_CASE("object_mix with empty masks swaps the originals") {
  testing::Gen gen(8);
  const ClipShape s{2, 3, 4, 4};
  const auto s1 = labeled("a", gen.clip(s), 1);
  const auto s2 = labeled("b", gen.clip(s), 2);
  const auto empty = InstanceMaskSet::empty(2, 4, 4);
  for (MaskMode mode : {MaskMode::kSpatial, MaskMode::kSpatiotemporal}) {
    auto [o12, o21] = object_mix(s1, s2, mode, empty, empty);
    CHECK(o12.clip == s2.clip);
    CHECK(o12.label == s2.label);
    CHECK(o12.lam == 0.0);
    CHECK(o21.clip == s1.clip);
    CHECK(o21.label == s1.label);
    CHECK(o21.lam == 0.0);
    CHECK(o12.provenance.direction == Direction::k12);
    CHECK(o21.provenance.direction == Direction::k21);
    CHECK(o12.provenance.sources == std::vector<std::string>{"a", "b"});
    CHECK(o21.provenance.sources == std::vector<std::string>{"b", "a"});
  }
}

TEST_CASE("object_mix with a full mask keeps the first clip") {
  testing::Gen gen(9);
  const ClipShape s{2, 3, 4, 4};
  const auto s1 = labeled("a", gen.clip(s), 1);
  const auto s2 = labeled("b", gen.clip(s), 2);
  std::vector<std::vector<Instance>> frames(2);
  for (auto& f : frames) f.push_back({BinaryMask(4, 4, 1), 0, 0.9});
  const InstanceMaskSet full(4, 4, frames);
  auto [o12, o21] =
      object_mix(s1, s2, MaskMode::kSpatial, full, InstanceMaskSet::empty(2, 4, 4));
  CHECK(o12.clip == s1.clip);
  CHECK(o12.label == s1.label);
  CHECK(o12.lam == 1.0);
}

TEST_CASE("object_mix on a fixed 2x4x4 fixture equals the chained oracle") {
  // Frame 0 has two overlapping instances, frame 1 has one.
  const std::size_t h = 4, w = 4;
  auto rect = [&](std::size_t r0, std::size_t r1, std::size_t c0,
                  std::size_t c1) {
    std::vector<std::uint8_t> b(h * w, 0);
    for (std::size_t r = r0; r < r1; ++r)
      for (std::size_t c = c0; c < c1; ++c) b[r * w + c] = 1;
    return b;
  };
  const Raw raw1{{rect(0, 2, 0, 2), rect(1, 3, 1, 3)}, {rect(2, 4, 2, 4)}};
  const Raw raw2{{rect(0, 1, 0, 4)}, {}};
  auto to_set = [&](const Raw& raw) {
    std::vector<std::vector<Instance>> frames;
    for (const auto& f : raw) {
      std::vector<Instance> out;
      for (const auto& b : f) out.push_back({BinaryMask(h, w, b), 0, 1.0});
      frames.push_back(std::move(out));
    }
    return InstanceMaskSet(h, w, frames);
  };

  std::vector<float> d1(2 * 3 * h * w), d2(d1.size());
  for (std::size_t i = 0; i < d1.size(); ++i) {
    d1[i] = static_cast<float>(i) / 100.0f;
    d2[i] = -static_cast<float>(i) / 100.0f;
  }
  const ClipShape s{2, 3, h, w};
  const auto s1 = labeled("a", Clip(s, d1), 0);
  const auto s2 = labeled("b", Clip(s, d2), 4);

  for (MaskMode mode : {MaskMode::kSpatial, MaskMode::kSpatiotemporal}) {
    const oracle::Bits m1 = mode == MaskMode::kSpatial
                                ? oracle::or_spatial(raw1, h, w)
                                : oracle::or_spatiotemporal(raw1, h, w);
    const oracle::Bits m2 = mode == MaskMode::kSpatial
                                ? oracle::or_spatial(raw2, h, w)
                                : oracle::or_spatiotemporal(raw2, h, w);
    const double lam1 = static_cast<double>(oracle::count_ones(m1)) / 32.0;
    const double lam2 = static_cast<double>(oracle::count_ones(m2)) / 32.0;

    auto [o12, o21] = object_mix(s1, s2, mode, to_set(raw1), to_set(raw2));
    const oracle::Volume v1{2, 3, h, w, d1}, v2{2, 3, h, w, d2};
    CHECK(std::vector<float>(o12.clip.data().begin(), o12.clip.data().end()) ==
          oracle::blend(v1, v2, m1));
    CHECK(std::vector<float>(o21.clip.data().begin(), o21.clip.data().end()) ==
          oracle::blend(v2, v1, m2));
    CHECK(o12.lam == lam1);
    CHECK(o21.lam == lam2);
    CHECK(o12.label[0] == lam1);
    CHECK(o12.label[4] == 1.0 - lam1);
    CHECK(o21.label[0] == 1.0 - lam2);
    CHECK(o21.label[4] == lam2);
  }
  // Frame 0: 4 + 4 - 1 = 7 bits, frame 1: 4 bits.
  CHECK(object_mix(s1, s2, MaskMode::kSpatial, to_set(raw1), to_set(raw2))
            .first.lam == 11.0 / 32.0);
  // Union over time: 7 + 4 - 1 = 10 bits, repeated in both frames.
  CHECK(object_mix(s1, s2, MaskMode::kSpatiotemporal, to_set(raw1),
                   to_set(raw2))
            .first.lam == 20.0 / 32.0);
}

TEST_CASE("object_mix invariants over random fixtures") {
  testing::Gen gen(10);
  for (int iter = 0; iter < 150; ++iter) {
    const ClipShape s{gen.size(1, 4), 3, gen.size(1, 6), gen.size(1, 6)};
    const auto s1 = labeled("a", gen.clip(s), gen.size(0, 4));
    const auto s2 = labeled("b", gen.clip(s), gen.size(0, 4));
    const auto m1 = gen.instance_set(s.frames, s.height, s.width, 3);
    const auto m2 = gen.instance_set(s.frames, s.height, s.width, 3);

    const auto sp = object_mix(s1, s2, MaskMode::kSpatial, m1, m2);
    const auto st = object_mix(s1, s2, MaskMode::kSpatiotemporal, m1, m2);
    CHECK(st.first.lam >= sp.first.lam);
    CHECK(st.second.lam >= sp.second.lam);

    // Direction 12 ignores the second mask set.
    const auto alt = object_mix(s1, s2, MaskMode::kSpatial, m1,
                                InstanceMaskSet::empty(s.frames, s.height,
                                                       s.width));
    CHECK(alt.first.clip == sp.first.clip);
    CHECK(alt.first.lam == sp.first.lam);

    // m-prime weighting under +or reports the per-frame coverage.
    const auto mp = object_mix(s1, s2, MaskMode::kSpatiotemporal, m1, m2,
                               {LambdaSource::kMPrime});
    CHECK(mp.first.lam == sp.first.lam);
    CHECK(mp.first.clip == st.first.clip);

    // Adding bits to the pasted mask never lowers lambda.
    InstanceMaskSet more = m1;
    more.mutable_frame(0).push_back(
        {gen.mask(s.height, s.width, 0.5), {}, {}});
    CHECK(object_mix(s1, s2, MaskMode::kSpatial, more, m2).first.lam >=
          sp.first.lam);
  }
}

}  // namespace
}  // namespace vidmix
