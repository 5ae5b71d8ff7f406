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

#pragma once

#include <vector>

#include "bginit/image.hpp"
#include "bginit/imaging.hpp"
#include "bginit/slic.hpp"

namespace bginit {

struct MotionMask {
  GrayFrame moving;  // 1 = moving, 0 = motionless
  int frame_index = 0;

  int width() const noexcept { return moving.width(); }
  int height() const noexcept { return moving.height(); }
  bool same_shape(const auto& other) const noexcept {
    return moving.same_shape(other);
  }
};

struct OtsuResult {
  int threshold = 0;
  double between_class_variance = 0.0;
};

struct MotionParams {
  double blur_sigma = 1.0;
  int blur_radius = 2;
  // A frame pair is declared motionless when the best Otsu split separates
  // less variance than this, or when the smoothed difference never reaches
  // `guard_min_peak` gray levels.
  double guard_min_variance = 1.0;
  int guard_min_peak = 4;

  void validate() const;
};

GrayFrame frame_difference(const GrayFrame& cur, const GrayFrame& prev);

// Threshold g maximizing between-class variance of {v < g} vs {v >= g} over
// g in [0, 255]; the smallest such g on ties.
OtsuResult otsu_threshold(const Histogram256& hist);
OtsuResult otsu_threshold(const GrayFrame& gray);

MotionMask pixel_motion_mask(const GrayFrame& diff_smoothed, int tau_opt);

// Marks a whole region moving as soon as any of its pixels moves.
MotionMask superpixel_motion_mask(const MotionMask& pixel_mask,
                                  const SuperpixelLabeling& labeling);

struct FrameMotion {
  MotionMask mask;
  OtsuResult otsu;
  bool static_guard = false;
};

// Difference against the previous frame, smoothing, Otsu, pixel mask and
// region dilation with `labeling` (the labeling of `cur`).
FrameMotion detect_frame_motion(const GrayFrame& cur, const GrayFrame& prev,
                                const SuperpixelLabeling& labeling,
                                const MotionParams& params);

// Masks for every frame of the subsequence. Frame 0 has no predecessor and
// copies the mask of frame 1. A single frame yields one all-motionless mask.
std::vector<MotionMask> motion_masks_for_subsequence(
    const std::vector<GrayFrame>& gray_frames,
    const std::vector<SuperpixelLabeling>& labelings, const MotionParams& params);

std::vector<MotionMask> motion_masks_for_subsequence(
    const FrameSequence& frames, const std::vector<SuperpixelLabeling>& labelings,
    const MotionParams& params);

}  // namespace bginit
