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

#include "bginit/cluster.hpp"

#include <algorithm>
#include <cmath>

#include "bginit/imaging.hpp"
#include "bginit/parallel.hpp"

namespace bginit {

void ClusterParams::validate() const {
  if (epsilon < 1) throw Error(ErrorKind::kInvalidConfig, "epsilon must be >= 1");
  if (min_pts < 2) throw Error(ErrorKind::kInvalidConfig, "min_pts must be >= 2");
}

int MinPtsPolicy::for_count(std::size_t sample_count) const {
  const auto scaled =
      static_cast<int>(std::ceil(fraction * static_cast<double>(sample_count)));
  return std::max(floor, scaled);
}

void MinPtsPolicy::validate() const {
  if (floor < 2) throw Error(ErrorKind::kInvalidConfig, "min_pts floor must be >= 2");
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw Error(ErrorKind::kInvalidConfig, "min_pts fraction must lie in [0, 1]");
  }
}

void sort_samples(std::span<Sample> samples) {
  std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
    return a.gray != b.gray ? a.gray < b.gray : a.frame < b.frame;
  });
}

std::vector<PixelCluster> cluster_sorted(std::span<const Sample> sorted,
                                         const ClusterParams& params) {
  std::vector<PixelCluster> out;
  const std::size_t n = sorted.size();
  if (n == 0) return out;

  // Neighborhood [first[i], last[i]] of each sample; both ends are monotone
  // in i because the samples are sorted.
  std::vector<std::size_t> first(n), last(n), cores;
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int v = sorted[i].gray;
    while (sorted[lo].gray < v - params.epsilon) ++lo;
    if (hi < i) hi = i;
    while (hi + 1 < n && sorted[hi + 1].gray <= v + params.epsilon) ++hi;
    first[i] = lo;
    last[i] = hi;
    if (hi - lo + 1 >= static_cast<std::size_t>(params.min_pts)) cores.push_back(i);
  }

  std::size_t next_core = 0;
  std::size_t claimed_end = 0;  // samples before this index already belong to a cluster
  while (next_core < cores.size()) {
    const std::size_t k = cores[next_core];
    const std::size_t left = std::max(first[k], claimed_end);
    std::size_t right = last[k];
    std::size_t j = next_core;
    while (j + 1 < cores.size() && cores[j + 1] <= right) {
      ++j;
      right = std::max(right, last[cores[j]]);
    }
    next_core = j + 1;
    claimed_end = right + 1;

    PixelCluster c;
    c.lo = sorted[left].gray;
    c.hi = sorted[right].gray;
    c.count = static_cast<int>(right - left + 1);
    c.candidate = sorted[left + (c.count - 1) / 2].gray;
    c.members.reserve(c.count);
    for (std::size_t m = left; m <= right; ++m) c.members.push_back(sorted[m].frame);
    out.push_back(std::move(c));
  }
  return out;
}

PixelClusterSet cluster_pixel(const MotionlessSeries& series,
                              const ClusterParams& params) {
  params.validate();
  std::vector<Sample> sorted = series.samples;
  sort_samples(sorted);
  return {series.x, series.y, cluster_sorted(sorted, params)};
}

ClusterGrid cluster_all_pixels(const std::vector<GrayFrame>& gray_frames,
                               const std::vector<MotionMask>& masks, int epsilon,
                               const MinPtsPolicy& min_pts, int workers) {
  if (gray_frames.empty()) throw Error(ErrorKind::kEmptyInput, "no frames to cluster");
  if (masks.size() != gray_frames.size()) {
    throw Error(ErrorKind::kInvalidInput, "one motion mask per frame is required");
  }
  for (std::size_t i = 0; i < masks.size(); ++i) {
    require_same_shape(gray_frames[i], gray_frames[0], "cluster frames");
    require_same_shape(masks[i].moving, gray_frames[0], "cluster masks");
  }
  min_pts.validate();
  const int w = gray_frames[0].width();
  const int h = gray_frames[0].height();
  ClusterGrid grid{w, h, std::vector<PixelClusterSet>(static_cast<std::size_t>(w) * h)};
  parallel_for(grid.cells.size(), workers, [&](std::size_t begin, std::size_t end) {
    std::vector<Sample> samples;
    for (std::size_t p = begin; p < end; ++p) {
      samples.clear();
      for (std::size_t n = 0; n < gray_frames.size(); ++n) {
        if (masks[n].moving[p] == 0) {
          samples.push_back({gray_frames[n][p], static_cast<std::int32_t>(n)});
        }
      }
      PixelClusterSet& cell = grid.cells[p];
      cell.x = static_cast<int>(p % w);
      cell.y = static_cast<int>(p / w);
      if (samples.empty()) continue;
      sort_samples(samples);
      const ClusterParams params{epsilon, min_pts.for_count(samples.size())};
      cell.clusters = cluster_sorted(samples, params);
    }
  });
  return grid;
}

ClusterGrid cluster_all_pixels(const FrameSequence& frames,
                               const std::vector<MotionMask>& masks, int epsilon,
                               const MinPtsPolicy& min_pts, int workers) {
  std::vector<GrayFrame> gray;
  gray.reserve(frames.size());
  for (const ColorFrame& f : frames) gray.push_back(to_gray(f));
  return cluster_all_pixels(gray, masks, epsilon, min_pts, workers);
}

}  // namespace bginit
