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

#include <span>
#include <vector>

#include "bginit/image.hpp"
#include "bginit/imaging.hpp"

namespace bginit {

struct IlluminationParams {
  double tau_h = 0.20;   // histogram distance above which a change is suspected
  double tau_eh = 0.10;  // equalized-histogram distance below which it is confirmed
  // The equalized histograms are compared after merging adjacent levels into
  // this many bins. Equalization leaves a comb of single-level spikes whose
  // positions move with any small change of the CDF, so a full-resolution
  // comparison never reports a match on noisy footage. Power of two, 2..256.
  int equalized_bins = 16;

  void validate() const;
};

struct SubsequenceSelection {
  int start_index = 0;
  int end_index = 0;  // inclusive
  // Frame indices at which a new illumination span begins (frame 0 excluded).
  std::vector<int> boundaries;

  int length() const noexcept { return end_index - start_index + 1; }
};

// sqrt(1 - bc) with bc the Bhattacharyya coefficient of the two count
// histograms. Throws kInvalidInput when either histogram is empty.
double hellinger_distance(const Histogram256& h1, const Histogram256& h2);

// Sums runs of 256 / bins adjacent levels into bins [0, bins).
Histogram256 coarsen(const Histogram256& h, int bins);

// Per-frame statistics the change test needs, cached so a scan computes them
// once per frame.
struct IlluminationSignature {
  int width = 0;
  int height = 0;
  Histogram256 value_hist;
  Histogram256 equalized_hist;
};

IlluminationSignature illumination_signature(const ColorFrame& frame);

bool is_illumination_change(const IlluminationSignature& ref,
                            const IlluminationSignature& cur,
                            const IlluminationParams& params);

bool is_illumination_change(const ColorFrame& ref_frame,
                            const ColorFrame& cur_frame,
                            const IlluminationParams& params);

// Compares every frame against the current reference; a detected change
// opens a new span and makes that frame the reference. Returns the longest
// span, the later one on ties.
SubsequenceSelection select_stable_subsequence(
    std::span<const IlluminationSignature> signatures,
    const IlluminationParams& params);

SubsequenceSelection select_stable_subsequence(const FrameSequence& frames,
                                               const IlluminationParams& params);

}  // namespace bginit
