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

#include "bginit/decide.hpp"

#include <algorithm>
#include <cstdlib>

#include "bginit/imaging.hpp"
#include "bginit/parallel.hpp"

namespace bginit {
namespace {

struct Outcome {
  std::uint8_t gray = 0;
  Rgb color;
  Provenance provenance = Provenance::kClustered;
};

std::uint8_t lower_median(std::vector<std::uint8_t>& values) {
  const auto mid = values.begin() + (values.size() - 1) / 2;
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

// Recovery path for a position whose motionless samples produced no cluster.
Outcome fallback(const FrameSequence& frames, const std::vector<GrayFrame>& gray_frames,
                 std::size_t p, std::uint8_t reference, const DecideParams& params,
                 std::vector<Sample>& samples, std::vector<std::uint8_t>& scratch) {
  samples.clear();
  for (std::size_t n = 0; n < gray_frames.size(); ++n) {
    samples.push_back({gray_frames[n][p], static_cast<std::int32_t>(n)});
  }
  sort_samples(samples);
  const ClusterParams cp{params.epsilon, params.min_pts.for_count(samples.size())};
  const std::vector<PixelCluster> clusters = cluster_sorted(samples, cp);
  if (const auto d = decide_pixel(clusters, reference)) {
    return {d->value, median_color(frames, clusters[d->cluster_index].members, p),
            Provenance::kUnmaskedCluster};
  }
  scratch.clear();
  for (const GrayFrame& g : gray_frames) scratch.push_back(g[p]);
  std::vector<std::int32_t> all(frames.size());
  for (std::size_t n = 0; n < all.size(); ++n) all[n] = static_cast<std::int32_t>(n);
  return {lower_median(scratch), median_color(frames, all, p),
          Provenance::kTemporalMedian};
}

BackgroundEstimate make_estimate(int w, int h) {
  return {ColorFrame(w, h), GrayFrame(w, h),
          Image<Provenance>(w, h, Provenance::kClustered)};
}

void check_inputs(const FrameSequence& frames, const std::vector<GrayFrame>& gray_frames) {
  if (frames.empty()) throw Error(ErrorKind::kEmptyInput, "no frames to decide from");
  if (gray_frames.size() != frames.size()) {
    throw Error(ErrorKind::kInvalidInput, "gray frames do not match color frames");
  }
}

}  // namespace

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::kClustered:
      return "clustered";
    case Provenance::kUnmaskedCluster:
      return "unmasked-cluster";
    case Provenance::kTemporalMedian:
      return "temporal-median";
  }
  return "unknown";
}

std::size_t BackgroundEstimate::fallback_count() const {
  return static_cast<std::size_t>(std::count_if(
      provenance.pixels().begin(), provenance.pixels().end(),
      [](Provenance p) { return p != Provenance::kClustered; }));
}

ReferenceFrame build_reference(std::span<const GrayFrame> gray_frames) {
  if (gray_frames.empty()) throw Error(ErrorKind::kEmptyInput, "no frames for reference");
  const GrayFrame& first = gray_frames.front();
  const GrayFrame& last = gray_frames.back();
  require_same_shape(first, last, "reference frames");
  GrayFrame r(first.width(), first.height());
  for (std::size_t p = 0; p < r.size(); ++p) {
    r[p] = static_cast<std::uint8_t>((first[p] + last[p] + 1) / 2);
  }
  return {std::move(r)};
}

ReferenceFrame build_reference(const FrameSequence& frames) {
  if (frames.empty()) throw Error(ErrorKind::kEmptyInput, "no frames for reference");
  const GrayFrame g[2] = {to_gray(frames.front()), to_gray(frames.back())};
  return build_reference(std::span<const GrayFrame>(g, 2));
}

std::optional<Decision> decide_pixel(std::span<const PixelCluster> clusters,
                                     std::uint8_t reference) {
  std::optional<Decision> best;
  std::int64_t best_q = 0;
  std::int64_t best_d = 1;
  for (std::size_t v = 0; v < clusters.size(); ++v) {
    const PixelCluster& c = clusters[v];
    const std::int64_t q = c.count;
    const std::int64_t dist = std::abs(static_cast<int>(c.candidate) - reference);
    const std::int64_t d = std::max<std::int64_t>(dist, 1);
    bool take = !best.has_value();
    if (!take) {
      // q / d vs best_q / best_d, compared exactly.
      const std::int64_t lhs = q * best_d;
      const std::int64_t rhs = best_q * d;
      const std::int64_t best_dist =
          std::abs(static_cast<int>(clusters[best->cluster_index].candidate) - reference);
      if (lhs != rhs) {
        take = lhs > rhs;
      } else if (q != best_q) {
        take = q > best_q;
      } else if (dist != best_dist) {
        take = dist < best_dist;
      } else {
        take = c.candidate < best->value;
      }
    }
    if (take) {
      best = Decision{static_cast<int>(v), c.candidate};
      best_q = q;
      best_d = d;
    }
  }
  return best;
}

std::optional<Decision> decide_pixel(const PixelClusterSet& clusters,
                                     std::uint8_t reference) {
  return decide_pixel(std::span<const PixelCluster>(clusters.clusters), reference);
}

Rgb median_color(const FrameSequence& frames, std::span<const std::int32_t> frame_indices,
                 std::size_t position) {
  if (frame_indices.empty()) {
    throw Error(ErrorKind::kInvalidInput, "median color of no frames");
  }
  std::vector<std::uint8_t> r, g, b;
  r.reserve(frame_indices.size());
  g.reserve(frame_indices.size());
  b.reserve(frame_indices.size());
  for (const std::int32_t f : frame_indices) {
    const Rgb c = frames[f][position];
    r.push_back(c.r);
    g.push_back(c.g);
    b.push_back(c.b);
  }
  return {lower_median(r), lower_median(g), lower_median(b)};
}

ColorFrame reconstruct_color(const FrameSequence& frames,
                             const std::vector<std::vector<std::int32_t>>& members) {
  if (frames.empty()) throw Error(ErrorKind::kEmptyInput, "no frames to reconstruct from");
  const ColorFrame& first = frames.front();
  if (members.size() != first.size()) {
    throw Error(ErrorKind::kInvalidInput, "member lists do not cover the frame");
  }
  std::vector<std::int32_t> all(frames.size());
  for (std::size_t n = 0; n < all.size(); ++n) all[n] = static_cast<std::int32_t>(n);
  ColorFrame out(first.width(), first.height());
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = median_color(frames, members[p].empty() ? all : members[p], p);
  }
  return out;
}

BackgroundEstimate estimate_background(const FrameSequence& frames,
                                       const std::vector<GrayFrame>& gray_frames,
                                       const ClusterGrid& grid, const DecideParams& params,
                                       int workers) {
  check_inputs(frames, gray_frames);
  const ReferenceFrame ref = build_reference(gray_frames);
  if (grid.cells.size() != ref.gray.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "cluster grid does not match frames");
  }
  BackgroundEstimate est = make_estimate(ref.gray.width(), ref.gray.height());
  parallel_for(ref.gray.size(), workers, [&](std::size_t begin, std::size_t end) {
    std::vector<Sample> samples;
    std::vector<std::uint8_t> scratch;
    for (std::size_t p = begin; p < end; ++p) {
      const PixelClusterSet& cell = grid.cells[p];
      Outcome o;
      if (const auto d = decide_pixel(cell, ref.gray[p])) {
        o = {d->value, median_color(frames, cell.clusters[d->cluster_index].members, p),
             Provenance::kClustered};
      } else {
        o = fallback(frames, gray_frames, p, ref.gray[p], params, samples, scratch);
      }
      est.gray[p] = o.gray;
      est.color[p] = o.color;
      est.provenance[p] = o.provenance;
    }
  });
  return est;
}

BackgroundEstimate estimate_background_streaming(const FrameSequence& frames,
                                                 const std::vector<GrayFrame>& gray_frames,
                                                 const std::vector<MotionMask>& masks,
                                                 const DecideParams& params,
                                                 int workers) {
  check_inputs(frames, gray_frames);
  if (masks.size() != frames.size()) {
    throw Error(ErrorKind::kInvalidInput, "one motion mask per frame is required");
  }
  params.min_pts.validate();
  const ReferenceFrame ref = build_reference(gray_frames);
  BackgroundEstimate est = make_estimate(ref.gray.width(), ref.gray.height());
  parallel_for(ref.gray.size(), workers, [&](std::size_t begin, std::size_t end) {
    std::vector<Sample> samples;
    std::vector<Sample> scratch_samples;
    std::vector<std::uint8_t> scratch;
    for (std::size_t p = begin; p < end; ++p) {
      samples.clear();
      for (std::size_t n = 0; n < gray_frames.size(); ++n) {
        if (masks[n].moving[p] == 0) {
          samples.push_back({gray_frames[n][p], static_cast<std::int32_t>(n)});
        }
      }
      Outcome o;
      bool decided = false;
      if (!samples.empty()) {
        sort_samples(samples);
        const ClusterParams cp{params.epsilon, params.min_pts.for_count(samples.size())};
        const std::vector<PixelCluster> clusters = cluster_sorted(samples, cp);
        if (const auto d = decide_pixel(clusters, ref.gray[p])) {
          o = {d->value, median_color(frames, clusters[d->cluster_index].members, p),
               Provenance::kClustered};
          decided = true;
        }
      }
      if (!decided) {
        o = fallback(frames, gray_frames, p, ref.gray[p], params, scratch_samples, scratch);
      }
      est.gray[p] = o.gray;
      est.color[p] = o.color;
      est.provenance[p] = o.provenance;
    }
  });
  return est;
}

}  // namespace bginit
