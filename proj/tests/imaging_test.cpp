// Copyright 2026 The bginit Authors.
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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "bginit/imaging.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace bginit;

TEST(Image, RejectsBadShapes) {
  EXPECT_THROW(GrayFrame(0, 4), Error);
  EXPECT_THROW(GrayFrame(3, 3, std::vector<std::uint8_t>(8)), Error);
  try {
    require_same_shape(GrayFrame(2, 2), GrayFrame(3, 2), "pair");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimensionMismatch);
  }
}

TEST(ToGray, Examples) {
  EXPECT_EQ(to_gray(ColorFrame(4, 3, {100, 100, 100})), GrayFrame(4, 3, 100));
  EXPECT_EQ(to_gray(ColorFrame(1, 1, {255, 0, 0}))[0], 76);
  EXPECT_EQ(to_gray(ColorFrame(5, 2, {0, 0, 0})), GrayFrame(5, 2, 0));
}

TEST(ToGray, MatchesOracleOnRandomFrames) {
  gen::Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const ColorFrame f = gen::noise_frame(rng, gen::uniform(rng, 1, 70), gen::uniform(rng, 1, 9));
    EXPECT_EQ(to_gray(f), oracle::gray_of(f));
  }
}

TEST(ValueChannel, Examples) {
  EXPECT_EQ(to_hsv_value_channel(ColorFrame(1, 1, {10, 200, 30}))[0], 200);
  EXPECT_EQ(to_hsv_value_channel(ColorFrame(3, 3, {0, 0, 0})), GrayFrame(3, 3, 0));
  EXPECT_EQ(to_hsv_value_channel(ColorFrame(1, 1, {50, 50, 50}))[0], 50);
}

TEST(ValueChannel, IsChannelMax) {
  gen::Rng rng(2);
  const ColorFrame f = gen::noise_frame(rng, 37, 11);
  const GrayFrame v = to_hsv_value_channel(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(v[i], std::max({f[i].r, f[i].g, f[i].b}));
  }
}

TEST(Histogram, Examples) {
  Histogram256 h = histogram(GrayFrame(10, 10, 128));
  EXPECT_EQ(h.bins[128], 100u);
  EXPECT_EQ(h.total(), 100u);

  h = histogram(GrayFrame(2, 1, std::vector<std::uint8_t>{0, 255}));
  EXPECT_EQ(h.bins[0], 1u);
  EXPECT_EQ(h.bins[255], 1u);
  EXPECT_EQ(h.total(), 2u);

  GrayFrame checker(8, 8);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) checker.at(x, y) = (x + y) % 2 ? 20 : 10;
  h = histogram(checker);
  EXPECT_EQ(h.bins[10], 32u);
  EXPECT_EQ(h.bins[20], 32u);
  EXPECT_EQ(h.total(), 64u);
}

TEST(Histogram, BinSumEqualsPixelCount) {
  gen::Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const GrayFrame g = gen::noise_gray(rng, gen::uniform(rng, 1, 90), gen::uniform(rng, 1, 40),
                                        gen::uniform(rng, 0, 100), gen::uniform(rng, 100, 255));
    const Histogram256 h = histogram(g);
    EXPECT_EQ(h.total(), g.size());
    for (int k = 0; k < 256; ++k) {
      EXPECT_EQ(h.bins[k], static_cast<std::uint64_t>(std::count(g.pixels().begin(), g.pixels().end(), k)));
    }
  }
}

TEST(Equalize, ConstantFrameStaysConstant) {
  const GrayFrame out = equalize(GrayFrame(6, 4, 77));
  EXPECT_EQ(out, GrayFrame(6, 4, 255));
  EXPECT_EQ(equalize(out), out);
}

TEST(Equalize, TwoLevelFrame) {
  GrayFrame g(10, 10, 64);
  for (std::size_t i = 50; i < 100; ++i) g[i] = 192;
  const GrayFrame out = equalize(g);
  for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(out[i], i < 50 ? 127 : 255);
}

TEST(Equalize, RampIsFixedUpToRounding) {
  GrayFrame ramp(256, 1);
  for (int i = 0; i < 256; ++i) ramp[i] = static_cast<std::uint8_t>(i);
  const GrayFrame out = equalize(ramp);
  for (int i = 0; i < 256; ++i) {
    // floor(255 (i + 1) / 256)
    EXPECT_EQ(out[i], 255 * (i + 1) / 256);
    EXPECT_LE(std::abs(out[i] - i), 1);
  }
}

TEST(Equalize, MatchesCdfRemapAndPreservesOrder) {
  gen::Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const GrayFrame g = gen::noise_gray(rng, 31, 17, gen::uniform(rng, 0, 80), gen::uniform(rng, 120, 255));
    const GrayFrame out = equalize(g);
    std::array<std::uint64_t, 256> cdf{};
    for (auto v : g.pixels()) ++cdf[v];
    std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_EQ(out[i], 255 * cdf[g[i]] / g.size());
      for (std::size_t j = 0; j < g.size(); j += 13) {
        if (g[i] <= g[j]) {
          EXPECT_LE(out[i], out[j]);
        }
      }
    }
  }
}

TEST(GaussianKernel, NormalizedAndSymmetric) {
  const std::vector<float> k = gaussian_kernel(1.0, 2);
  ASSERT_EQ(k.size(), 5u);
  EXPECT_NEAR(std::accumulate(k.begin(), k.end(), 0.0), 1.0, 1e-6);
  EXPECT_EQ(k[0], k[4]);
  EXPECT_EQ(k[1], k[3]);
  const std::vector<double> ref = oracle::gaussian_weights(1.0, 2);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(k[i], ref[i], 1e-7);
  EXPECT_THROW(gaussian_kernel(0.0, 2), Error);
  EXPECT_THROW(gaussian_kernel(1.0, 0), Error);
}

TEST(GaussianBlur, UniformFramePreserved) {
  for (double sigma : {0.5, 1.0, 3.0}) {
    const RealFrame out = gaussian_blur(GrayFrame(13, 9, 91), sigma, 3);
    for (float v : out.pixels()) EXPECT_NEAR(v, 91.0f, 1e-4);
    EXPECT_EQ(round_to_gray(out), GrayFrame(13, 9, 91));
  }
}

TEST(GaussianBlur, ImpulseMatchesDenseConvolution) {
  GrayFrame g(15, 15, 0);
  g.at(7, 7) = 255;
  const RealFrame out = gaussian_blur(g, 1.0, 2);
  const std::vector<double> ref = oracle::dense_blur(g, gaussian_kernel(1.0, 2));
  double sum = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(out[i], ref[i], 1e-3);
    sum += out[i];
  }
  EXPECT_NEAR(sum, 255.0, 255.0 * 0.005);
  // Symmetric blob. Transposed taps multiply in a different order, so the
  // diagonal symmetry only holds up to float rounding.
  for (int d = 1; d <= 2; ++d) {
    EXPECT_EQ(out.at(7 - d, 7), out.at(7 + d, 7));
    EXPECT_EQ(out.at(7, 7 - d), out.at(7, 7 + d));
    EXPECT_FLOAT_EQ(out.at(7 + d, 7), out.at(7, 7 + d));
  }
}

TEST(GaussianBlur, RandomFramesMatchDenseConvolutionWithClampedEdges) {
  gen::Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const int w = gen::uniform(rng, 1, 40), h = gen::uniform(rng, 1, 25);
    const int radius = gen::uniform(rng, 1, 4);
    const double sigma = 0.5 + gen::uniform(rng, 0, 30) / 10.0;
    const GrayFrame g = gen::noise_gray(rng, w, h);
    const RealFrame out = gaussian_blur(g, sigma, radius);
    const std::vector<double> ref = oracle::dense_blur(g, gaussian_kernel(sigma, radius));
    const auto [lo, hi] = std::minmax_element(g.pixels().begin(), g.pixels().end());
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_NEAR(out[i], ref[i], 2e-3);
      EXPECT_GE(out[i], *lo - 1e-3);
      EXPECT_LE(out[i], *hi + 1e-3);
    }
  }
}

TEST(GaussianBlur, RejectsBadParameters) {
  EXPECT_THROW(gaussian_blur(GrayFrame(4, 4), -1.0, 2), Error);
  EXPECT_THROW(gaussian_blur(GrayFrame(4, 4), 1.0, 0), Error);
}

TEST(RoundToGray, HalfUpAndClamped) {
  const RealFrame f(5, 1, std::vector<float>{-3.0f, 0.49f, 0.5f, 254.5f, 300.0f});
  EXPECT_EQ(round_to_gray(f), GrayFrame(5, 1, std::vector<std::uint8_t>{0, 0, 1, 255, 255}));
}
