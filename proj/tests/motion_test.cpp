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

#include "bginit/imaging.hpp"
#include "bginit/motion.hpp"
#include "bginit/slic.hpp"
#include "bginit/synthetic.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace bginit;

namespace {

SuperpixelLabeling grid_labeling(int w, int h, int cell) {
  SuperpixelLabeling s;
  s.width = w;
  s.height = h;
  s.superpixel_size = cell;
  const int nx = (w + cell - 1) / cell, ny = (h + cell - 1) / cell;
  s.region_count = nx * ny;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) s.labels.push_back((y / cell) * nx + x / cell);
  return s;
}

int count_moving(const MotionMask& m) {
  int n = 0;
  for (auto v : m.moving.pixels()) n += v;
  return n;
}

}  // namespace

TEST(FrameDifference, Examples) {
  const GrayFrame a(3, 2, 17);
  EXPECT_EQ(frame_difference(a, a), GrayFrame(3, 2, 0));
  EXPECT_EQ(frame_difference(GrayFrame(1, 1, 10), GrayFrame(1, 1, 250))[0], 240);
  EXPECT_EQ(frame_difference(GrayFrame(1, 1, 250), GrayFrame(1, 1, 10))[0], 240);
  EXPECT_THROW(frame_difference(GrayFrame(2, 2), GrayFrame(2, 3)), Error);
}

TEST(FrameDifference, MatchesNaiveLoop) {
  gen::Rng rng(41);
  const GrayFrame a = gen::noise_gray(rng, 53, 21), b = gen::noise_gray(rng, 53, 21);
  const GrayFrame d = frame_difference(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(d[i], std::abs(a[i] - b[i]));
}

TEST(Otsu, BimodalFrame) {
  GrayFrame g(20, 10, 40);
  for (std::size_t i = 100; i < 200; ++i) g[i] = 200;
  const OtsuResult r = otsu_threshold(g);
  EXPECT_GE(r.threshold, 41);  // class 0 is v < g, so 41..200 separate the modes
  EXPECT_LE(r.threshold, 200);
  const oracle::OtsuAnswer o = oracle::otsu(histogram(g));
  EXPECT_EQ(r.threshold, o.threshold);
  EXPECT_EQ(r.threshold, 41);
  EXPECT_NEAR(r.between_class_variance, 0.25 * 160 * 160, 1e-9);
}

TEST(Otsu, ConstantFrame) {
  const OtsuResult r = otsu_threshold(GrayFrame(7, 7, 93));
  EXPECT_EQ(r.threshold, 0);
  EXPECT_EQ(r.between_class_variance, 0.0);
}

TEST(Otsu, ThreeLevelFrame) {
  GrayFrame g(30, 1);
  for (int i = 0; i < 30; ++i) g[i] = i < 12 ? 20 : i < 21 ? 90 : 240;
  const Histogram256 h = histogram(g);
  const oracle::OtsuAnswer o = oracle::otsu(h);
  const OtsuResult r = otsu_threshold(h);
  EXPECT_EQ(r.threshold, o.threshold);
  EXPECT_NEAR(r.between_class_variance, o.between_class_variance, 1e-9 * o.between_class_variance);
}

TEST(Otsu, EmptyHistogramThrows) { EXPECT_THROW(otsu_threshold(Histogram256{}), Error); }

TEST(Otsu, MatchesExhaustiveOracle) {
  gen::Rng rng(42);
  for (int t = 0; t < 400; ++t) {
    const Histogram256 h = gen::histogram(rng);
    const oracle::OtsuAnswer o = oracle::otsu(h);
    const OtsuResult r = otsu_threshold(h);
    ASSERT_EQ(r.threshold, o.threshold) << "case " << t;
    ASSERT_NEAR(r.between_class_variance, o.between_class_variance,
                1e-9 * std::max(1.0, o.between_class_variance));
  }
}

TEST(PixelMask, Examples) {
  const GrayFrame zero(6, 4, 0);
  EXPECT_EQ(count_moving(pixel_motion_mask(zero, 0)), 24);
  EXPECT_EQ(count_moving(pixel_motion_mask(zero, 1)), 0);
  gen::Rng rng(43);
  const GrayFrame d = gen::noise_gray(rng, 40, 9);
  for (int tau : {0, 1, 17, 128, 255, 256}) {
    const MotionMask m = pixel_motion_mask(d, tau);
    for (std::size_t i = 0; i < d.size(); ++i) ASSERT_EQ(m.moving[i], d[i] >= tau ? 1 : 0);
  }
}

TEST(SuperpixelMask, Examples) {
  const SuperpixelLabeling s = grid_labeling(20, 10, 5);  // 8 regions of 25 pixels
  MotionMask m{GrayFrame(20, 10, 0), 3};
  EXPECT_EQ(count_moving(superpixel_motion_mask(m, s)), 0);
  // A 10x5 region read as 50 pixels.
  const SuperpixelLabeling wide = grid_labeling(20, 10, 10);
  SuperpixelLabeling fifty = wide;
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 20; ++x) fifty.labels[y * 20 + x] = (y / 5) * 2 + x / 10;
  fifty.region_count = 4;
  m.moving.at(12, 7) = 1;
  const MotionMask out = superpixel_motion_mask(m, fifty);
  EXPECT_EQ(count_moving(out), 50);
  EXPECT_EQ(out.frame_index, 3);
  for (int y = 5; y < 10; ++y)
    for (int x = 10; x < 20; ++x) EXPECT_EQ(out.moving.at(x, y), 1);
  EXPECT_THROW(superpixel_motion_mask(MotionMask{GrayFrame(4, 4), 0}, s), Error);
}

TEST(SuperpixelMask, RegionAnyOracleSupersetAndIdempotent) {
  gen::Rng rng(44);
  for (int t = 0; t < 20; ++t) {
    const ColorFrame f = gen::blob_frame(rng, 80, 60);
    const SuperpixelLabeling s = segment(f, SlicParams{});
    MotionMask m{GrayFrame(80, 60, 0), 0};
    const int hits = gen::uniform(rng, 0, 40);
    for (int k = 0; k < hits; ++k) m.moving[gen::uniform(rng, 0, 80 * 60 - 1)] = 1;
    const MotionMask out = superpixel_motion_mask(m, s);
    std::vector<bool> any(s.region_count, false);
    for (std::size_t p = 0; p < s.labels.size(); ++p) any[s.labels[p]] = any[s.labels[p]] || m.moving[p];
    for (std::size_t p = 0; p < s.labels.size(); ++p) {
      ASSERT_EQ(out.moving[p] != 0, any[s.labels[p]]);
      if (m.moving[p]) {
        ASSERT_EQ(out.moving[p], 1);
      }
    }
    EXPECT_EQ(superpixel_motion_mask(out, s).moving, out.moving);
  }
}

TEST(MotionParams, Validation) {
  EXPECT_NO_THROW(MotionParams{}.validate());
  EXPECT_THROW((MotionParams{0.0}.validate()), Error);
  EXPECT_THROW((MotionParams{1.0, 0}.validate()), Error);
  EXPECT_THROW((MotionParams{1.0, 2, -1.0}.validate()), Error);
}

TEST(MotionMasks, StaticSequenceIsAllMotionless) {
  SyntheticScene scene;
  scene.background = textured_background(96, 64, 1);
  scene.noise_sigma = 1.0;
  const SyntheticSequence seq = generate_synthetic(scene, 8, 5);
  std::vector<SuperpixelLabeling> labelings;
  for (const auto& f : seq.frames) labelings.push_back(segment(f, SlicParams{}));
  const auto masks = motion_masks_for_subsequence(seq.frames, labelings, MotionParams{});
  ASSERT_EQ(masks.size(), 8u);
  for (const auto& m : masks) EXPECT_EQ(count_moving(m), 0);
  // The guard is what keeps the noise out.
  const FrameMotion fm = detect_frame_motion(to_gray(seq.frames[1]), to_gray(seq.frames[0]),
                                             labelings[1], MotionParams{});
  EXPECT_TRUE(fm.static_guard);
}

TEST(MotionMasks, MovingBoxIsCovered) {
  SyntheticScene scene;
  scene.background = textured_background(160, 120, 2);
  scene.noise_sigma = 2.0;
  ObjectScript box;
  box.width = box.height = 20;
  // Brighter than any background pixel, so every box pixel differs in gray.
  box.color = {250, 250, 250};
  box.texture = Texture::kNoise;
  box.texture_param = 30;
  box.x0 = 10;
  box.y0 = 50;
  box.x1 = 130;
  box.y1 = 50;
  box.end_frame = 12;
  scene.objects.push_back(box);
  const SyntheticSequence seq = generate_synthetic(scene, 12, 6);
  std::vector<SuperpixelLabeling> labelings;
  for (const auto& f : seq.frames) labelings.push_back(segment(f, SlicParams{}));
  const auto masks = motion_masks_for_subsequence(seq.frames, labelings, MotionParams{});
  auto box_x = [](int n) { return static_cast<int>(std::lround(10 + 120.0 * n / 11)); };
  for (int n = 1; n < 12; ++n) {
    // Where the box overlaps its previous position the difference is texture
    // against shifted texture, so only the newly covered part must be moving.
    const int bx = box_x(n);
    for (int y = 50; y < 70; ++y)
      for (int x = std::max(bx, box_x(n - 1) + 20); x < bx + 20; ++x) ASSERT_EQ(masks[n].moving.at(x, y), 1) << n << " " << x << "," << y;
    EXPECT_LT(count_moving(masks[n]), 160 * 120 / 4);
    EXPECT_EQ(masks[n].frame_index, n);
  }
  EXPECT_EQ(masks[0].moving, masks[1].moving);
}

TEST(MotionMasks, TwoFramesShareTheMask) {
  gen::Rng rng(45);
  const std::vector<GrayFrame> g = {gen::noise_gray(rng, 40, 30), gen::noise_gray(rng, 40, 30)};
  const std::vector<SuperpixelLabeling> s(2, grid_labeling(40, 30, 5));
  const auto masks = motion_masks_for_subsequence(g, s, MotionParams{});
  ASSERT_EQ(masks.size(), 2u);
  EXPECT_EQ(masks[0].moving, masks[1].moving);
  EXPECT_EQ(masks[0].frame_index, 0);
}

TEST(MotionMasks, SingleFrameAndErrors) {
  const std::vector<GrayFrame> one = {GrayFrame(8, 8, 3)};
  const auto masks = motion_masks_for_subsequence(one, {grid_labeling(8, 8, 4)}, MotionParams{});
  ASSERT_EQ(masks.size(), 1u);
  EXPECT_EQ(count_moving(masks[0]), 0);
  try {
    motion_masks_for_subsequence(std::vector<GrayFrame>{}, {}, MotionParams{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidInput);
  }
  EXPECT_THROW(motion_masks_for_subsequence(one, {}, MotionParams{}), Error);
}
