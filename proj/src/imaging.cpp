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

#include "bginit/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bginit/kernels.hpp"

namespace bginit {

std::uint64_t Histogram256::total() const noexcept {
  return std::accumulate(bins.begin(), bins.end(), std::uint64_t{0});
}

GrayFrame to_gray(const ColorFrame& frame) {
  GrayFrame out(frame.width(), frame.height());
  kernels::active_kernels().rgb_to_gray(frame.data(), out.data(), frame.size());
  return out;
}

GrayFrame to_hsv_value_channel(const ColorFrame& frame) {
  GrayFrame out(frame.width(), frame.height());
  kernels::active_kernels().rgb_to_value(frame.data(), out.data(), frame.size());
  return out;
}

Histogram256 histogram(const GrayFrame& gray) {
  // Four partial tables break the store-to-load dependency on runs of equal
  // intensities.
  std::array<std::array<std::uint64_t, 256>, 4> partial{};
  const std::uint8_t* p = gray.data();
  const std::size_t n = gray.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    ++partial[0][p[i]];
    ++partial[1][p[i + 1]];
    ++partial[2][p[i + 2]];
    ++partial[3][p[i + 3]];
  }
  for (; i < n; ++i) ++partial[0][p[i]];
  Histogram256 h;
  for (int k = 0; k < 256; ++k) {
    h.bins[k] = partial[0][k] + partial[1][k] + partial[2][k] + partial[3][k];
  }
  return h;
}

GrayFrame equalize(const GrayFrame& gray) {
  const Histogram256 h = histogram(gray);
  const std::uint64_t n = gray.size();
  std::array<std::uint8_t, 256> lut{};
  std::uint64_t cdf = 0;
  for (int k = 0; k < 256; ++k) {
    cdf += h.bins[k];
    lut[k] = static_cast<std::uint8_t>((255 * cdf) / n);
  }
  GrayFrame out(gray.width(), gray.height());
  for (std::size_t i = 0; i < n; ++i) out[i] = lut[gray[i]];
  return out;
}

std::vector<float> gaussian_kernel(double sigma, int radius) {
  if (!(sigma > 0.0) || radius < 1) {
    throw Error(ErrorKind::kInvalidInput,
                "gaussian kernel needs sigma > 0 and radius >= 1");
  }
  std::vector<double> w(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    w[k + radius] = std::exp(-(k * k) / (2.0 * sigma * sigma));
    sum += w[k + radius];
  }
  std::vector<float> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = static_cast<float>(w[i] / sum);
  return out;
}

RealFrame gaussian_blur(const GrayFrame& gray, double sigma, int radius) {
  const std::vector<float> weights = gaussian_kernel(sigma, radius);
  const auto& k = kernels::active_kernels();
  const int w = gray.width();
  const int h = gray.height();
  const int taps = 2 * radius + 1;

  RealFrame horizontal(w, h);
  std::vector<float> padded(static_cast<std::size_t>(w) + 2 * radius);
  for (int y = 0; y < h; ++y) {
    k.u8_to_f32(gray.row(y).data(), padded.data() + radius, w);
    std::fill(padded.begin(), padded.begin() + radius, padded[radius]);
    std::fill(padded.end() - radius, padded.end(), padded[radius + w - 1]);
    k.convolve_row(padded.data(), weights.data(), taps, horizontal.row(y).data(), w);
  }

  RealFrame out(w, h);
  std::vector<const float*> rows(taps);
  for (int y = 0; y < h; ++y) {
    for (int t = 0; t < taps; ++t) {
      const int sy = std::clamp(y + t - radius, 0, h - 1);
      rows[t] = horizontal.row(sy).data();
    }
    k.convolve_columns(rows.data(), weights.data(), taps, out.row(y).data(), w);
  }
  return out;
}

GrayFrame round_to_gray(const RealFrame& frame) {
  GrayFrame out(frame.width(), frame.height());
  kernels::active_kernels().round_to_u8(frame.data(), out.data(), frame.size());
  return out;
}

}  // namespace bginit
