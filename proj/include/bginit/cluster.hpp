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

#include <cstdint>
#include <span>
#include <vector>

#include "bginit/image.hpp"
#include "bginit/motion.hpp"

namespace bginit {

// One motionless observation of a pixel position. The color is looked up
// from the frame when needed.
struct Sample {
  std::uint8_t gray = 0;
  std::int32_t frame = 0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct MotionlessSeries {
  int x = 0;
  int y = 0;
  std::vector<Sample> samples;
};

struct PixelCluster {
  std::uint8_t lo = 0;         // smallest member gray value
  std::uint8_t hi = 0;         // largest member gray value
  std::uint8_t candidate = 0;  // lower median of the members
  int count = 0;
  std::vector<std::int32_t> members;  // frame indices, ascending by gray value
};

struct PixelClusterSet {
  int x = 0;
  int y = 0;
  std::vector<PixelCluster> clusters;  // ascending, disjoint intervals
};

struct ClusterParams {
  int epsilon = 10;
  int min_pts = 3;

  void validate() const;
};

// MinPts as a function of the series length: max(floor, ceil(fraction * U)).
struct MinPtsPolicy {
  int floor = 3;
  double fraction = 0.02;

  int for_count(std::size_t sample_count) const;
  void validate() const;
};

// Sorts (gray, frame) ascending in place.
void sort_samples(std::span<Sample> samples);

// Density-based sweep over samples already sorted by sort_samples(): core
// objects are samples with at least min_pts neighbors within epsilon
// (themselves included). Starting from the smallest unvisited core, the run
// extends right while another core lies inside the current right boundary.
// Samples reachable from no core belong to no cluster.
std::vector<PixelCluster> cluster_sorted(std::span<const Sample> sorted,
                                         const ClusterParams& params);

// Sorts a copy of the series, then clusters it.
PixelClusterSet cluster_pixel(const MotionlessSeries& series,
                              const ClusterParams& params);

struct ClusterGrid {
  int width = 0;
  int height = 0;
  std::vector<PixelClusterSet> cells;

  const PixelClusterSet& at(int x, int y) const {
    return cells[static_cast<std::size_t>(y) * width + x];
  }
};

// Gathers each position's motionless samples and clusters them, with MinPts
// chosen per position from its sample count.
ClusterGrid cluster_all_pixels(const std::vector<GrayFrame>& gray_frames,
                               const std::vector<MotionMask>& masks, int epsilon,
                               const MinPtsPolicy& min_pts, int workers = 1);

ClusterGrid cluster_all_pixels(const FrameSequence& frames,
                               const std::vector<MotionMask>& masks, int epsilon,
                               const MinPtsPolicy& min_pts, int workers = 1);

}  // namespace bginit
