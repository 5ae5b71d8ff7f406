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

#include <array>
#include <cstdint>
#include <vector>

#include "bginit/image.hpp"

namespace bginit {

struct Histogram256 {
  std::array<std::uint64_t, 256> bins{};

  std::uint64_t total() const noexcept;
  friend bool operator==(const Histogram256&, const Histogram256&) = default;
};

// BT.601 luma, rounded half up.
GrayFrame to_gray(const ColorFrame& frame);

// HSV value channel, max(R, G, B).
GrayFrame to_hsv_value_channel(const ColorFrame& frame);

Histogram256 histogram(const GrayFrame& gray);

// Cumulative-distribution remap: k -> floor(255 * cdf(k) / pixel_count).
// A constant frame therefore maps to 255 everywhere.
GrayFrame equalize(const GrayFrame& gray);

// Normalized 1-D Gaussian weights of length 2 * radius + 1.
std::vector<float> gaussian_kernel(double sigma, int radius);

// Separable Gaussian smoothing, kernel truncated at `radius`, edges replicated.
RealFrame gaussian_blur(const GrayFrame& gray, double sigma, int radius);

// floor(v + 0.5) clamped to [0, 255].
GrayFrame round_to_gray(const RealFrame& frame);

}  // namespace bginit
