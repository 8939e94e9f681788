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
#include <limits>

#include "doctest.h"
#include "fixtures.hpp"
#include "vidmix/core.hpp"
#include "vidmix/error.hpp"

namespace vidmix {
namespace {

Frame make_frame(std::size_t c, std::size_t h, std::size_t w,
                 std::vector<float> px) {
  return Frame{c, h, w, std::move(px)};
}

TEST_CASE("ClipShape rejects zero extents") {
  CHECK_THROWS_AS((ClipShape{0, 3, 2, 2}.validate()), InvalidArgument);
  CHECK_THROWS_AS((ClipShape{1, 3, 2, 0}.validate()), InvalidArgument);
  CHECK_NOTHROW((ClipShape{1, 1, 1, 1}.validate()));
  const auto big = std::numeric_limits<std::size_t>::max() / 2;
  CHECK_THROWS_AS((ClipShape{big, 3, 2, 2}.validate()), InvalidArgument);
}

TEST_CASE("Clip validates data length and finiteness") {
  const ClipShape s{2, 1, 2, 2};
  CHECK_THROWS_AS(Clip(s, std::vector<float>(7, 0.f)), DimensionMismatch);
  std::vector<float> bad(8, 0.f);
  bad[3] = std::numeric_limits<float>::quiet_NaN();
  CHECK_THROWS_AS(Clip(s, bad), InvalidArgument);
  Clip c(s);
  c.at(1, 0, 1, 0) = 0.5f;
  CHECK(c.data()[1 * 4 + 1 * 2 + 0] == 0.5f);
}

TEST_CASE("BinaryMask only holds 0 and 1") {
  CHECK_THROWS_AS(BinaryMask(2, 2, std::vector<std::uint8_t>{0, 1, 2, 0}),
                  MalformedMask);
  CHECK_THROWS_AS(BinaryMask(2, 2, std::vector<std::uint8_t>{0, 1, 1}),
                  MalformedMask);
}

TEST_CASE("Label invariants") {
  CHECK_THROWS_AS(Label({0.5, 0.4}), InvalidArgument);
  CHECK_THROWS_AS(Label({1.2, -0.2}), InvalidArgument);
  CHECK_THROWS_AS(Label(std::vector<double>{}), InvalidArgument);
  const Label y = Label::one_hot(3, 10);
  CHECK(y[3] == 1.0);
  CHECK(y.num_classes() == 10);
  CHECK_THROWS_AS(Label::one_hot(10, 10), InvalidArgument);
}

TEST_CASE("blend_frame identity cases") {
  testing::Gen gen(1);
  const Clip fg = gen.clip({1, 3, 3, 4});
  const Clip bg = gen.clip({1, 3, 3, 4});
  const Frame ones = blend_frame(fg.frame(0), bg.frame(0), BinaryMask(3, 4, 1));
  const Frame zeros = blend_frame(fg.frame(0), bg.frame(0), BinaryMask(3, 4, 0));
  CHECK(std::equal(ones.pixels.begin(), ones.pixels.end(),
                   fg.frame(0).pixels.begin()));
  CHECK(std::equal(zeros.pixels.begin(), zeros.pixels.end(),
                   bg.frame(0).pixels.begin()));
}

TEST_CASE("blend_frame on a 2x2 diagonal mask matches the per-pixel loop") {
  // Two channels so the channel stride is exercised.
  const Frame fg = make_frame(2, 2, 2, {1, 2, 3, 4, 5, 6, 7, 8});
  const Frame bg = make_frame(2, 2, 2, {-1, -2, -3, -4, -5, -6, -7, -8});
  const BinaryMask m(2, 2, std::vector<std::uint8_t>{1, 0, 0, 1});
  const Frame out = blend_frame(fg.view(), bg.view(), m);

  oracle::Volume vf{1, 2, 2, 2, fg.pixels};
  oracle::Volume vb{1, 2, 2, 2, bg.pixels};
  oracle::Bits bits{1, 2, 2, {1, 0, 0, 1}};
  CHECK(out.pixels == oracle::blend(vf, vb, bits));
  CHECK(out.pixels == std::vector<float>{1, -2, -3, 4, 5, -6, -7, 8});
}

TEST_CASE("blend_frame rejects mismatched shapes") {
  const Frame a = make_frame(1, 2, 2, {0, 0, 0, 0});
  const Frame b = make_frame(1, 2, 3, {0, 0, 0, 0, 0, 0});
  CHECK_THROWS_AS(blend_frame(a.view(), b.view(), BinaryMask(2, 2)),
                  DimensionMismatch);
  CHECK_THROWS_AS(blend_frame(a.view(), a.view(), BinaryMask(3, 2)),
                  DimensionMismatch);
}

TEST_CASE("mask_area examples") {
  CHECK(mask_area(BinaryMask(4, 4, 0)) == 0);
  CHECK(mask_area(BinaryMask(4, 4, 1)) == 16);
  CHECK(mask_area(BinaryMask(2, 2, std::vector<std::uint8_t>{1, 1, 0, 1})) ==
        3);
}

TEST_CASE("blend and area properties over random frames") {
  testing::Gen gen(42);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t c = gen.size(1, 3), h = gen.size(1, 9), w = gen.size(1, 9);
    const Clip fg = gen.clip({1, c, h, w});
    const Clip bg = gen.clip({1, c, h, w});
    const BinaryMask m = gen.mask(h, w, gen.real(0, 1));
    const BinaryMask mc = complement(m);

    // Blending a frame over itself is the identity for any mask.
    const Frame self = blend_frame(fg.frame(0), fg.frame(0), m);
    REQUIRE(std::equal(self.pixels.begin(), self.pixels.end(),
                       fg.frame(0).pixels.begin()));
    // Swapping sources and complementing the mask gives the same frame.
    CHECK(blend_frame(fg.frame(0), bg.frame(0), m) ==
          blend_frame(bg.frame(0), fg.frame(0), mc));
    CHECK(mask_area(m) + mask_area(mc) == h * w);
  }
}

}  // namespace
}  // namespace vidmix
