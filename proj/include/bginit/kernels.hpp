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

// Pixel-level inner loops. Each routine has a scalar reference version and,
// where the build and CPU allow it, an AVX2 version chosen at runtime. Every
// variant must be bit-identical to the scalar reference; the equivalence
// tests enforce this.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bginit/image.hpp"

namespace bginit::kernels {

enum class Isa { kScalar, kAvx2 };

const char* to_string(Isa isa);

struct SlicCenter {
  float l = 0.f;
  float a = 0.f;
  float b = 0.f;
  float x = 0.f;
  float y = 0.f;
};

struct KernelTable {
  Isa isa;

  // round(0.299 R + 0.587 G + 0.114 B), halves rounded up.
  void (*rgb_to_gray)(const Rgb* src, std::uint8_t* dst, std::size_t n);
  // max(R, G, B), the HSV value channel.
  void (*rgb_to_value)(const Rgb* src, std::uint8_t* dst, std::size_t n);
  void (*abs_diff)(const std::uint8_t* a, const std::uint8_t* b,
                   std::uint8_t* dst, std::size_t n);
  // dst[i] = (src[i] >= tau) ? 1 : 0
  void (*threshold_ge)(const std::uint8_t* src, std::uint8_t tau,
                       std::uint8_t* dst, std::size_t n);
  void (*u8_to_f32)(const std::uint8_t* src, float* dst, std::size_t n);
  // floor(x + 0.5) clamped to [0, 255].
  void (*round_to_u8)(const float* src, std::uint8_t* dst, std::size_t n);

  // dst[i] = sum_{k < taps} weights[k] * src[i + k], accumulated in k order.
  void (*convolve_row)(const float* src, const float* weights, int taps,
                       float* dst, std::size_t n);
  // dst[i] = sum_{k < taps} weights[k] * rows[k][i], accumulated in k order.
  void (*convolve_columns)(const float* const* rows, const float* weights,
                           int taps, float* dst, std::size_t n);

  // One SLIC assignment sweep over a horizontal run of n pixels starting at
  // column x0. Pixel distance is
  //   (dl^2 + da^2 + db^2) + ((x - cx)^2 + dy2) * spatial_weight
  // and a pixel is taken over only on a strictly smaller distance, so the
  // earliest center wins ties.
  void (*slic_assign_span)(const float* l, const float* a, const float* b,
                           int x0, std::size_t n, float dy2,
                           const SlicCenter& center, float spatial_weight,
                           std::int32_t label, float* best_dist,
                           std::int32_t* best_label);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();

// Every variant usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();

// The table used by the library. Defaults to the widest supported ISA; the
// BGINIT_ISA environment variable ("scalar" or "avx2") overrides it.
const KernelTable& active_kernels();

// Returns false (and leaves the selection unchanged) if `isa` is unavailable.
bool select_isa(Isa isa);

}  // namespace bginit::kernels
