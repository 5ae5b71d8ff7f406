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

#include <algorithm>
#include <cmath>

#include "bginit/kernels.hpp"
#include "kernels/variants.hpp"

namespace bginit::kernels {
namespace {

void rgb_to_gray(const Rgb* src, std::uint8_t* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t v =
        299u * src[i].r + 587u * src[i].g + 114u * src[i].b + 500u;
    dst[i] = static_cast<std::uint8_t>(v / 1000u);
  }
}

void rgb_to_value(const Rgb* src, std::uint8_t* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = std::max({src[i].r, src[i].g, src[i].b});
  }
}

void abs_diff(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst,
              std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  }
}

void threshold_ge(const std::uint8_t* src, std::uint8_t tau, std::uint8_t* dst,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] >= tau ? 1 : 0;
}

void u8_to_f32(const std::uint8_t* src, float* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<float>(src[i]);
}

void round_to_u8(const float* src, std::uint8_t* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const float r = std::floor(src[i] + 0.5f);
    dst[i] = static_cast<std::uint8_t>(std::clamp(r, 0.f, 255.f));
  }
}

void convolve_row(const float* src, const float* weights, int taps, float* dst,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    float acc = weights[0] * src[i];
    for (int k = 1; k < taps; ++k) acc = acc + weights[k] * src[i + k];
    dst[i] = acc;
  }
}

void convolve_columns(const float* const* rows, const float* weights, int taps,
                      float* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    float acc = weights[0] * rows[0][i];
    for (int k = 1; k < taps; ++k) acc = acc + weights[k] * rows[k][i];
    dst[i] = acc;
  }
}

void slic_assign_span(const float* l, const float* a, const float* b, int x0,
                      std::size_t n, float dy2, const SlicCenter& c,
                      float spatial_weight, std::int32_t label,
                      float* best_dist, std::int32_t* best_label) {
  for (std::size_t i = 0; i < n; ++i) {
    const float dl = l[i] - c.l;
    const float da = a[i] - c.a;
    const float db = b[i] - c.b;
    const float dc2 = dl * dl + da * da + db * db;
    const float dx = static_cast<float>(x0 + static_cast<int>(i)) - c.x;
    const float ds2 = dx * dx + dy2;
    const float d = dc2 + ds2 * spatial_weight;
    if (d < best_dist[i]) {
      best_dist[i] = d;
      best_label[i] = label;
    }
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      Isa::kScalar,  rgb_to_gray,  rgb_to_value,     abs_diff,
      threshold_ge,  u8_to_f32,    round_to_u8,      convolve_row,
      convolve_columns, slic_assign_span,
  };
  return table;
}

}  // namespace bginit::kernels
