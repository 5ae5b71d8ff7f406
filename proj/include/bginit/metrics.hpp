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

#include <string>

#include "bginit/image.hpp"

namespace bginit {

inline constexpr double kPsnrCap = 100.0;
inline constexpr int kErrorPixelThreshold = 20;
inline constexpr double kCqmLumaWeight = 0.9449;
inline constexpr double kCqmChromaWeight = 0.0551;

struct MetricReport {
  double age = 0.0;
  double peps = 0.0;
  double pceps = 0.0;
  double psnr = 0.0;
  double ms_ssim = 0.0;
  double cqm = 0.0;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

// Average gray-level error.
double age(const ColorFrame& gt, const ColorFrame& est);

// Fraction of pixels whose gray difference exceeds tau.
double peps(const ColorFrame& gt, const ColorFrame& est, int tau = kErrorPixelThreshold);

// Fraction of error pixels whose four neighbors are error pixels too. Border
// pixels never qualify.
double pceps(const ColorFrame& gt, const ColorFrame& est, int tau = kErrorPixelThreshold);

// Gray-level PSNR with peak 255, capped at kPsnrCap.
double psnr(const ColorFrame& gt, const ColorFrame& est);

// Multi-scale SSIM on gray images (11x11 Gaussian window, sigma 1.5). Uses
// up to five scales; smaller images drop the coarsest scales and renormalize
// the remaining exponents. Negative contrast-structure terms are clamped to 0.
double ms_ssim(const ColorFrame& gt, const ColorFrame& est);

// Number of scales ms_ssim() will use for an image of this size (0 if none fit).
int ms_ssim_scale_count(int width, int height);

// PSNR_Y * 0.9449 + mean(PSNR_U, PSNR_V) * 0.0551 on full-range BT.601 YUV.
double cqm(const ColorFrame& gt, const ColorFrame& est);

MetricReport evaluate(const ColorFrame& gt, const ColorFrame& est);

// One JSON object per sequence: {"name": ..., "age": ..., ...}.
std::string to_json(const MetricReport& report, const std::string& name);
MetricReport metric_report_from_json(const std::string& text, std::string* name = nullptr);

std::string csv_header();
std::string to_csv_row(const MetricReport& report, const std::string& name);

}  // namespace bginit
