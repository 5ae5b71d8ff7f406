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

#include "bginit/motion.hpp"

#include <algorithm>
#include <utility>

#include "bginit/kernels.hpp"

namespace bginit {
namespace {

using u128 = unsigned __int128;

// Between-class variance up to the positive factor 1 / N^2, kept as the
// exact fraction num^2 / den.
struct SplitScore {
  std::uint64_t num = 0;  // |s0 * n1 - s1 * n0|
  std::uint64_t den = 1;  // n0 * n1

  double variance(std::uint64_t total) const {
    const double t = static_cast<double>(total);
    const double n = static_cast<double>(num);
    return n * n / (static_cast<double>(den) * t * t);
  }
};

// Exact p / q > r / s for positive denominators, by comparing the
// continued-fraction expansions term by term.
bool fraction_greater(u128 p, u128 q, u128 r, u128 s) {
  bool flipped = false;
  for (;;) {
    const u128 a = p / q, b = r / s;
    if (a != b) return (a > b) != flipped;
    p -= a * q;
    r -= b * s;
    if (p == 0 && r == 0) return false;
    if (p == 0 || r == 0) return (p != 0) != flipped;
    std::swap(p, q);
    std::swap(r, s);
    flipped = !flipped;
  }
}

bool greater(const SplitScore& a, const SplitScore& b) {
  return fraction_greater(static_cast<u128>(a.num) * a.num, a.den,
                          static_cast<u128>(b.num) * b.num, b.den);
}

}  // namespace

void MotionParams::validate() const {
  if (!(blur_sigma > 0.0) || blur_radius < 1) {
    throw Error(ErrorKind::kInvalidConfig,
                "motion blur needs sigma > 0 and radius >= 1");
  }
  if (guard_min_variance < 0.0 || guard_min_peak < 0 || guard_min_peak > 256) {
    throw Error(ErrorKind::kInvalidConfig, "static-scene guard out of range");
  }
}

GrayFrame frame_difference(const GrayFrame& cur, const GrayFrame& prev) {
  require_same_shape(cur, prev, "frame difference");
  GrayFrame out(cur.width(), cur.height());
  kernels::active_kernels().abs_diff(cur.data(), prev.data(), out.data(), cur.size());
  return out;
}

OtsuResult otsu_threshold(const Histogram256& hist) {
  std::uint64_t total = 0;
  std::uint64_t total_sum = 0;
  for (int k = 0; k < 256; ++k) {
    total += hist.bins[k];
    total_sum += hist.bins[k] * static_cast<std::uint64_t>(k);
  }
  if (total == 0) {
    throw Error(ErrorKind::kInvalidInput, "otsu threshold of an empty histogram");
  }
  SplitScore best;
  int best_g = 0;
  std::uint64_t n0 = 0;
  std::uint64_t s0 = 0;
  // g = 0 leaves the lower class empty; its score is zero, as initialized.
  for (int g = 1; g < 256; ++g) {
    n0 += hist.bins[g - 1];
    s0 += hist.bins[g - 1] * static_cast<std::uint64_t>(g - 1);
    const std::uint64_t n1 = total - n0;
    if (n0 == 0 || n1 == 0) continue;
    const std::uint64_t s1 = total_sum - s0;
    // s0 * n1 and s1 * n0 fit comfortably: both are below 255 * total^2.
    const u128 lhs = static_cast<u128>(s1) * n0;
    const u128 rhs = static_cast<u128>(s0) * n1;
    const SplitScore score{static_cast<std::uint64_t>(lhs > rhs ? lhs - rhs : rhs - lhs),
                           n0 * n1};
    if (greater(score, best)) {
      best = score;
      best_g = g;
    }
  }
  return {best_g, best.variance(total)};
}

OtsuResult otsu_threshold(const GrayFrame& gray) {
  return otsu_threshold(histogram(gray));
}

MotionMask pixel_motion_mask(const GrayFrame& diff_smoothed, int tau_opt) {
  MotionMask mask{GrayFrame(diff_smoothed.width(), diff_smoothed.height()), 0};
  if (tau_opt <= 0) {
    std::fill(mask.moving.pixels().begin(), mask.moving.pixels().end(), 1);
  } else if (tau_opt <= 255) {
    kernels::active_kernels().threshold_ge(diff_smoothed.data(),
                                           static_cast<std::uint8_t>(tau_opt),
                                           mask.moving.data(), diff_smoothed.size());
  }
  return mask;
}

MotionMask superpixel_motion_mask(const MotionMask& pixel_mask,
                                  const SuperpixelLabeling& labeling) {
  if (!labeling.same_shape(pixel_mask)) {
    throw Error(ErrorKind::kDimensionMismatch,
                "motion mask and labeling differ in size");
  }
  std::vector<std::uint8_t> region_moving(labeling.region_count, 0);
  const std::size_t n = labeling.labels.size();
  for (std::size_t p = 0; p < n; ++p) {
    region_moving[labeling.labels[p]] |= pixel_mask.moving[p];
  }
  MotionMask out{GrayFrame(pixel_mask.width(), pixel_mask.height()),
                 pixel_mask.frame_index};
  for (std::size_t p = 0; p < n; ++p) out.moving[p] = region_moving[labeling.labels[p]];
  return out;
}

FrameMotion detect_frame_motion(const GrayFrame& cur, const GrayFrame& prev,
                                const SuperpixelLabeling& labeling,
                                const MotionParams& params) {
  const GrayFrame diff = frame_difference(cur, prev);
  const GrayFrame smoothed =
      round_to_gray(gaussian_blur(diff, params.blur_sigma, params.blur_radius));
  const Histogram256 hist = histogram(smoothed);
  FrameMotion result;
  result.otsu = otsu_threshold(hist);
  int peak = 255;
  while (peak > 0 && hist.bins[peak] == 0) --peak;
  result.static_guard = result.otsu.between_class_variance < params.guard_min_variance ||
                        peak < params.guard_min_peak;
  if (result.static_guard) {
    result.mask = MotionMask{GrayFrame(cur.width(), cur.height(), 0), 0};
    return result;
  }
  result.mask =
      superpixel_motion_mask(pixel_motion_mask(smoothed, result.otsu.threshold), labeling);
  return result;
}

std::vector<MotionMask> motion_masks_for_subsequence(
    const std::vector<GrayFrame>& gray_frames,
    const std::vector<SuperpixelLabeling>& labelings, const MotionParams& params) {
  if (gray_frames.empty()) {
    throw Error(ErrorKind::kInvalidInput, "motion masks need at least one frame");
  }
  if (labelings.size() != gray_frames.size()) {
    throw Error(ErrorKind::kInvalidInput, "one labeling per frame is required");
  }
  const int n = static_cast<int>(gray_frames.size());
  std::vector<MotionMask> masks(n);
  if (n == 1) {
    masks[0] = MotionMask{GrayFrame(gray_frames[0].width(), gray_frames[0].height(), 0), 0};
    return masks;
  }
  for (int i = 1; i < n; ++i) {
    masks[i] = detect_frame_motion(gray_frames[i], gray_frames[i - 1], labelings[i],
                                   params).mask;
    masks[i].frame_index = i;
  }
  masks[0] = MotionMask{masks[1].moving, 0};
  return masks;
}

std::vector<MotionMask> motion_masks_for_subsequence(
    const FrameSequence& frames, const std::vector<SuperpixelLabeling>& labelings,
    const MotionParams& params) {
  std::vector<GrayFrame> gray;
  gray.reserve(frames.size());
  for (const ColorFrame& f : frames) gray.push_back(to_gray(f));
  return motion_masks_for_subsequence(gray, labelings, params);
}

}  // namespace bginit
