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
#include <vector>

#include "bginit/image.hpp"

namespace bginit {

// CIELAB (D65) image stored as three planes so the assignment kernel can
// stream each component.
struct LabFrame {
  int width = 0;
  int height = 0;
  std::vector<float> l;
  std::vector<float> a;
  std::vector<float> b;
};

LabFrame to_lab(const ColorFrame& frame);

struct LabColor {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
};

LabColor srgb_to_lab(Rgb c);

struct SlicParams {
  double sigma_n = 20.0;   // superpixel size is min(W, H) / sigma_n
  double compactness = 10.0;
  int max_iterations = 10;
  double convergence_px = 0.5;  // stop once mean center motion drops below

  void validate() const;
};

struct SuperpixelLabeling {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> labels;
  int region_count = 0;
  int superpixel_size = 0;

  std::int32_t at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
  bool same_shape(const auto& other) const noexcept {
    return width == other.width() && height == other.height();
  }
};

// floor(min(W, H) / sigma_n), never below 2.
int adaptive_superpixel_size(int width, int height, double sigma_n);

// A point in the joint color + position space.
struct SlicPoint {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
  double x = 0.0;
  double y = 0.0;
};

// sqrt(dc^2 + (ds / L)^2 * m^2)
double slic_distance(const SlicPoint& p, const SlicPoint& q, double superpixel_size,
                     double compactness);

// Grid-seeded iterative clustering with windowed search, followed by a pass
// that folds fragments smaller than L^2 / 4 into their dominant neighbor and
// renumbers regions so each one is a single 4-connected component.
SuperpixelLabeling segment(const ColorFrame& frame, const SlicParams& params);
SuperpixelLabeling segment(const LabFrame& lab, const SlicParams& params);

// Makes every label a single 4-connected component, merging components
// smaller than `min_size` into the neighbor sharing the longest border.
// Exposed for tests; segment() runs it as its last step.
void enforce_connectivity(SuperpixelLabeling& labeling, int min_size);

}  // namespace bginit
