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
#include <optional>
#include <span>
#include <vector>

#include "bginit/cluster.hpp"
#include "bginit/image.hpp"
#include "bginit/motion.hpp"

namespace bginit {

// Per-pixel mean of the first and last gray frames, rounded half up.
struct ReferenceFrame {
  GrayFrame gray;
};

ReferenceFrame build_reference(std::span<const GrayFrame> gray_frames);
ReferenceFrame build_reference(const FrameSequence& frames);

enum class Provenance : std::uint8_t {
  kClustered = 0,        // decided from clusters of motionless samples
  kUnmaskedCluster = 1,  // no motionless cluster; clustered all samples instead
  kTemporalMedian = 2,   // nothing clustered at all; per-channel median
};

const char* to_string(Provenance p);

struct BackgroundEstimate {
  ColorFrame color;
  GrayFrame gray;
  Image<Provenance> provenance;

  std::size_t fallback_count() const;
};

struct Decision {
  int cluster_index = 0;
  std::uint8_t value = 0;
};

// argmax over clusters of count / max(|candidate - reference|, 1); ties go
// to the larger count, then the closer candidate, then the lower candidate.
// Empty input yields nullopt (the caller falls back).
std::optional<Decision> decide_pixel(std::span<const PixelCluster> clusters,
                                     std::uint8_t reference);
std::optional<Decision> decide_pixel(const PixelClusterSet& clusters,
                                     std::uint8_t reference);

// Per-channel lower median of one pixel position over the given frames.
Rgb median_color(const FrameSequence& frames, std::span<const std::int32_t> frame_indices,
                 std::size_t position);

// Color image from per-pixel winning member frames. A position with no
// members takes the per-channel median over all frames.
ColorFrame reconstruct_color(const FrameSequence& frames,
                             const std::vector<std::vector<std::int32_t>>& members);

struct DecideParams {
  int epsilon = 10;
  MinPtsPolicy min_pts;
};

// Decides every position of a precomputed cluster grid. Positions without
// clusters recluster their unmasked gray values and, failing that, take the
// temporal median.
BackgroundEstimate estimate_background(const FrameSequence& frames,
                                       const std::vector<GrayFrame>& gray_frames,
                                       const ClusterGrid& grid, const DecideParams& params,
                                       int workers = 1);

// Same result as cluster_all_pixels() followed by estimate_background(), but
// clusters, decides and reconstructs one position at a time so the cluster
// grid is never materialized.
BackgroundEstimate estimate_background_streaming(const FrameSequence& frames,
                                                 const std::vector<GrayFrame>& gray_frames,
                                                 const std::vector<MotionMask>& masks,
                                                 const DecideParams& params,
                                                 int workers = 1);

}  // namespace bginit
