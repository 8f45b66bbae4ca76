// Copyright 2026 The zerolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "zerolab/rng.hpp"

using namespace zerolab;

TEST(Rng, PhiloxKnownAnswer) {
  // Random123 known-answer vectors for Philox4x32-10.
  const auto a = philox4x32_10({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(a[0], 0x6627e8d5u);
  EXPECT_EQ(a[1], 0xe169c58du);
  EXPECT_EQ(a[2], 0xbc57ac4cu);
  EXPECT_EQ(a[3], 0x9b00dbd8u);
  const auto b = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(b[0], 0x408f276du);
  EXPECT_EQ(b[1], 0x41c83b0eu);
  EXPECT_EQ(b[2], 0xa20bc7c6u);
  EXPECT_EQ(b[3], 0x6d5451fdu);
  const auto c = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(c[0], 0xd16cfe09u);
  EXPECT_EQ(c[1], 0x94fdccebu);
  EXPECT_EQ(c[2], 0x5001e420u);
  EXPECT_EQ(c[3], 0x24126ea1u);
}

TEST(Rng, StreamsAreDeterministicAndDistinct) {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u32(), b.next_u32());
  RngStream a2(42, 7), c2(42, 8), d2(42, 7, 1);
  int same_c = 0, same_d = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a2.next_u32();
    same_c += x == c2.next_u32();
    same_d += x == d2.next_u32();
  }
  EXPECT_LT(same_c, 3);
  EXPECT_LT(same_d, 3);
  EXPECT_NE(RngStream(1, 2).substream_id(), RngStream(1, 3).substream_id());
  EXPECT_NE(RngStream(1, 2).substream_id(), RngStream(1, 2, 1).substream_id());
}

TEST(Rng, UniformIsInHalfOpenUnitInterval) {
  RngStream r(1, 1);
  double mean = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
    mean += u;
  }
  EXPECT_NEAR(mean / 100000, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / 100000));
}

TEST(Rng, ComplexNormalMoments) {
  RngStream r(5, 0);
  const int n = 100000;
  std::complex<double> mean = 0.0;
  double second = 0.0, re2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto c = r.complex_normal();
    mean += c;
    second += std::norm(c);
    re2 += c.real() * c.real();
  }
  mean /= n;
  EXPECT_LT(std::abs(mean), 4.0 / std::sqrt(n));
  EXPECT_NEAR(second / n, 1.0, 0.02);
  EXPECT_NEAR(re2 / n, 0.5, 0.01);
}
