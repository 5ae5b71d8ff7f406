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

#include "bginit/illumination.hpp"

#include <algorithm>
#include <cmath>

namespace bginit {

void IlluminationParams::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in_unit(tau_h) || !in_unit(tau_eh)) {
    throw Error(ErrorKind::kInvalidConfig,
                "illumination thresholds must lie in (0, 1)");
  }
  if (equalized_bins < 2 || equalized_bins > 256 ||
      (equalized_bins & (equalized_bins - 1)) != 0) {
    throw Error(ErrorKind::kInvalidConfig,
                "equalized_bins must be a power of two in [2, 256]");
  }
}

double hellinger_distance(const Histogram256& h1, const Histogram256& h2) {
  const std::uint64_t n1 = h1.total();
  const std::uint64_t n2 = h2.total();
  if (n1 == 0 || n2 == 0) {
    throw Error(ErrorKind::kInvalidInput,
                "hellinger distance of an empty histogram");
  }
  double overlap = 0.0;
  for (int i = 0; i < 256; ++i) {
    overlap += std::sqrt(static_cast<double>(h1.bins[i]) *
                         static_cast<double>(h2.bins[i]));
  }
  const double bc =
      overlap / std::sqrt(static_cast<double>(n1) * static_cast<double>(n2));
  return std::sqrt(std::max(0.0, 1.0 - bc));
}

Histogram256 coarsen(const Histogram256& h, int bins) {
  if (bins < 1 || bins > 256 || 256 % bins != 0) {
    throw Error(ErrorKind::kInvalidInput, "bin count must divide 256");
  }
  const int width = 256 / bins;
  Histogram256 out;
  for (int i = 0; i < 256; ++i) out.bins[i / width] += h.bins[i];
  return out;
}

IlluminationSignature illumination_signature(const ColorFrame& frame) {
  const GrayFrame value = to_hsv_value_channel(frame);
  return {frame.width(), frame.height(), histogram(value),
          histogram(equalize(value))};
}

bool is_illumination_change(const IlluminationSignature& ref,
                            const IlluminationSignature& cur,
                            const IlluminationParams& params) {
  if (ref.width != cur.width || ref.height != cur.height) {
    throw Error(ErrorKind::kDimensionMismatch,
                "illumination test needs frames of equal size");
  }
  if (hellinger_distance(ref.value_hist, cur.value_hist) <= params.tau_h) {
    return false;
  }
  return hellinger_distance(coarsen(ref.equalized_hist, params.equalized_bins),
                            coarsen(cur.equalized_hist, params.equalized_bins)) <
         params.tau_eh;
}

bool is_illumination_change(const ColorFrame& ref_frame,
                            const ColorFrame& cur_frame,
                            const IlluminationParams& params) {
  require_same_shape(ref_frame, cur_frame, "illumination test");
  return is_illumination_change(illumination_signature(ref_frame),
                                illumination_signature(cur_frame), params);
}

SubsequenceSelection select_stable_subsequence(
    std::span<const IlluminationSignature> signatures,
    const IlluminationParams& params) {
  if (signatures.empty()) {
    throw Error(ErrorKind::kEmptyInput, "no frames to select from");
  }
  const int count = static_cast<int>(signatures.size());
  SubsequenceSelection out;
  std::vector<int> starts{0};
  int reference = 0;
  for (int t = 1; t < count; ++t) {
    if (is_illumination_change(signatures[reference], signatures[t], params)) {
      out.boundaries.push_back(t);
      starts.push_back(t);
      reference = t;
    }
  }
  starts.push_back(count);
  int best_len = -1;
  for (std::size_t s = 0; s + 1 < starts.size(); ++s) {
    const int len = starts[s + 1] - starts[s];
    if (len >= best_len) {
      best_len = len;
      out.start_index = starts[s];
      out.end_index = starts[s + 1] - 1;
    }
  }
  return out;
}

SubsequenceSelection select_stable_subsequence(const FrameSequence& frames,
                                               const IlluminationParams& params) {
  std::vector<IlluminationSignature> signatures;
  signatures.reserve(frames.size());
  for (const ColorFrame& f : frames) signatures.push_back(illumination_signature(f));
  return select_stable_subsequence(signatures, params);
}

}  // namespace bginit
