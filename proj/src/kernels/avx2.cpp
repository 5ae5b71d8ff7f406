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

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "bginit/kernels.hpp"
#include "kernels/variants.hpp"

namespace bginit::kernels::detail {
namespace {

// Spreads the R, G and B bytes of four packed pixels (12 bytes) into 32-bit
// lanes.
inline void split_rgb4(__m128i px, __m128i& r, __m128i& g, __m128i& b) {
  const __m128i mr = _mm_setr_epi8(0, -1, -1, -1, 3, -1, -1, -1, 6, -1, -1, -1,
                                   9, -1, -1, -1);
  const __m128i mg = _mm_setr_epi8(1, -1, -1, -1, 4, -1, -1, -1, 7, -1, -1, -1,
                                   10, -1, -1, -1);
  const __m128i mb = _mm_setr_epi8(2, -1, -1, -1, 5, -1, -1, -1, 8, -1, -1, -1,
                                   11, -1, -1, -1);
  r = _mm_shuffle_epi8(px, mr);
  g = _mm_shuffle_epi8(px, mg);
  b = _mm_shuffle_epi8(px, mb);
}

// Loads eight pixels. Reads four bytes past the eighth pixel, so callers keep
// at least two pixels of slack before the end of the buffer.
inline void load_rgb8(const Rgb* src, __m256i& r, __m256i& g, __m256i& b) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(src);
  const __m128i lo = _mm_loadu_si128(reinterpret_cast<const __m128i*>(bytes));
  const __m128i hi =
      _mm_loadu_si128(reinterpret_cast<const __m128i*>(bytes + 12));
  __m128i rl, gl, bl, rh, gh, bh;
  split_rgb4(lo, rl, gl, bl);
  split_rgb4(hi, rh, gh, bh);
  r = _mm256_set_m128i(rh, rl);
  g = _mm256_set_m128i(gh, gl);
  b = _mm256_set_m128i(bh, bl);
}

inline void store_epi32_as_u8(__m256i v, std::uint8_t* dst) {
  const __m128i w16 = _mm_packus_epi32(_mm256_castsi256_si128(v),
                                       _mm256_extracti128_si256(v, 1));
  const __m128i w8 = _mm_packus_epi16(w16, w16);
  _mm_storel_epi64(reinterpret_cast<__m128i*>(dst), w8);
}

void rgb_to_gray(const Rgb* src, std::uint8_t* dst, std::size_t n) {
  const __m256i wr = _mm256_set1_epi32(299);
  const __m256i wg = _mm256_set1_epi32(587);
  const __m256i wb = _mm256_set1_epi32(114);
  const __m256i half = _mm256_set1_epi32(500);
  const __m256 thousand = _mm256_set1_ps(1000.f);
  std::size_t i = 0;
  for (; i + 10 <= n; i += 8) {
    __m256i r, g, b;
    load_rgb8(src + i, r, g, b);
    __m256i v = _mm256_add_epi32(_mm256_mullo_epi32(r, wr),
                                 _mm256_mullo_epi32(g, wg));
    v = _mm256_add_epi32(v, _mm256_mullo_epi32(b, wb));
    v = _mm256_add_epi32(v, half);
    // v < 2^24 is exact in float, and a correctly rounded v / 1000 never
    // crosses an integer, so floor() matches the integer division.
    const __m256 q = _mm256_floor_ps(_mm256_div_ps(_mm256_cvtepi32_ps(v), thousand));
    store_epi32_as_u8(_mm256_cvttps_epi32(q), dst + i);
  }
  scalar_kernels().rgb_to_gray(src + i, dst + i, n - i);
}

void rgb_to_value(const Rgb* src, std::uint8_t* dst, std::size_t n) {
  std::size_t i = 0;
  for (; i + 10 <= n; i += 8) {
    __m256i r, g, b;
    load_rgb8(src + i, r, g, b);
    const __m256i v = _mm256_max_epi32(_mm256_max_epi32(r, g), b);
    store_epi32_as_u8(v, dst + i);
  }
  scalar_kernels().rgb_to_value(src + i, dst + i, n - i);
}

void abs_diff(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst,
              std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i d =
        _mm256_or_si256(_mm256_subs_epu8(va, vb), _mm256_subs_epu8(vb, va));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), d);
  }
  scalar_kernels().abs_diff(a + i, b + i, dst + i, n - i);
}

void threshold_ge(const std::uint8_t* src, std::uint8_t tau, std::uint8_t* dst,
                  std::size_t n) {
  const __m256i vt = _mm256_set1_epi8(static_cast<char>(tau));
  const __m256i one = _mm256_set1_epi8(1);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i ge = _mm256_cmpeq_epi8(_mm256_max_epu8(v, vt), v);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        _mm256_and_si256(ge, one));
  }
  scalar_kernels().threshold_ge(src + i, tau, dst + i, n - i);
}

void u8_to_f32(const std::uint8_t* src, float* dst, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m128i b8 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(src + i));
    _mm256_storeu_ps(dst + i, _mm256_cvtepi32_ps(_mm256_cvtepu8_epi32(b8)));
  }
  scalar_kernels().u8_to_f32(src + i, dst + i, n - i);
}

void round_to_u8(const float* src, std::uint8_t* dst, std::size_t n) {
  const __m256 half = _mm256_set1_ps(0.5f);
  const __m256 lo = _mm256_setzero_ps();
  const __m256 hi = _mm256_set1_ps(255.f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 r = _mm256_floor_ps(_mm256_add_ps(_mm256_loadu_ps(src + i), half));
    r = _mm256_min_ps(_mm256_max_ps(r, lo), hi);
    store_epi32_as_u8(_mm256_cvttps_epi32(r), dst + i);
  }
  scalar_kernels().round_to_u8(src + i, dst + i, n - i);
}

void convolve_row(const float* src, const float* weights, int taps, float* dst,
                  std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 acc = _mm256_mul_ps(_mm256_set1_ps(weights[0]), _mm256_loadu_ps(src + i));
    for (int k = 1; k < taps; ++k) {
      acc = _mm256_add_ps(
          acc, _mm256_mul_ps(_mm256_set1_ps(weights[k]), _mm256_loadu_ps(src + i + k)));
    }
    _mm256_storeu_ps(dst + i, acc);
  }
  scalar_kernels().convolve_row(src + i, weights, taps, dst + i, n - i);
}

void convolve_columns(const float* const* rows, const float* weights, int taps,
                      float* dst, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 acc = _mm256_mul_ps(_mm256_set1_ps(weights[0]), _mm256_loadu_ps(rows[0] + i));
    for (int k = 1; k < taps; ++k) {
      acc = _mm256_add_ps(
          acc, _mm256_mul_ps(_mm256_set1_ps(weights[k]), _mm256_loadu_ps(rows[k] + i)));
    }
    _mm256_storeu_ps(dst + i, acc);
  }
  for (; i < n; ++i) {
    float acc = weights[0] * rows[0][i];
    for (int k = 1; k < taps; ++k) acc = acc + weights[k] * rows[k][i];
    dst[i] = acc;
  }
}

void slic_assign_span(const float* l, const float* a, const float* b, int x0,
                      std::size_t n, float dy2, const SlicCenter& c,
                      float spatial_weight, std::int32_t label,
                      float* best_dist, std::int32_t* best_label) {
  const __m256 cl = _mm256_set1_ps(c.l);
  const __m256 ca = _mm256_set1_ps(c.a);
  const __m256 cb = _mm256_set1_ps(c.b);
  const __m256 cx = _mm256_set1_ps(c.x);
  const __m256 vdy2 = _mm256_set1_ps(dy2);
  const __m256 sw = _mm256_set1_ps(spatial_weight);
  const __m256i vlabel = _mm256_set1_epi32(label);
  const __m256i iota = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 dl = _mm256_sub_ps(_mm256_loadu_ps(l + i), cl);
    const __m256 da = _mm256_sub_ps(_mm256_loadu_ps(a + i), ca);
    const __m256 db = _mm256_sub_ps(_mm256_loadu_ps(b + i), cb);
    const __m256 dc2 = _mm256_add_ps(
        _mm256_add_ps(_mm256_mul_ps(dl, dl), _mm256_mul_ps(da, da)),
        _mm256_mul_ps(db, db));
    const __m256i xi = _mm256_add_epi32(
        _mm256_set1_epi32(x0 + static_cast<int>(i)), iota);
    const __m256 dx = _mm256_sub_ps(_mm256_cvtepi32_ps(xi), cx);
    const __m256 ds2 = _mm256_add_ps(_mm256_mul_ps(dx, dx), vdy2);
    const __m256 d = _mm256_add_ps(dc2, _mm256_mul_ps(ds2, sw));
    const __m256 best = _mm256_loadu_ps(best_dist + i);
    const __m256 take = _mm256_cmp_ps(d, best, _CMP_LT_OQ);
    _mm256_storeu_ps(best_dist + i, _mm256_blendv_ps(best, d, take));
    const __m256i lab =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(best_label + i));
    const __m256i merged =
        _mm256_blendv_epi8(lab, vlabel, _mm256_castps_si256(take));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(best_label + i), merged);
  }
  scalar_kernels().slic_assign_span(l + i, a + i, b + i, x0 + static_cast<int>(i),
                                    n - i, dy2, c, spatial_weight, label,
                                    best_dist + i, best_label + i);
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{
      Isa::kAvx2,    rgb_to_gray,  rgb_to_value,     abs_diff,
      threshold_ge,  u8_to_f32,    round_to_u8,      convolve_row,
      convolve_columns, slic_assign_span,
  };
  return table;
}

}  // namespace bginit::kernels::detail
