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

#include <filesystem>
#include <string>
#include <vector>

#include "bginit/config.hpp"
#include "bginit/decide.hpp"
#include "bginit/illumination.hpp"
#include "bginit/image.hpp"

namespace bginit {

struct StageTime {
  std::string name;
  double seconds = 0.0;
};

struct RunStats {
  int input_frames = 0;
  SubsequenceSelection selection;
  std::vector<StageTime> stages;
  double total_seconds = 0.0;
  double frames_per_second = 0.0;
  std::size_t fallback_pixels = 0;
  int static_guard_frames = 0;
  const char* isa = "";

  double stage_sum() const;
};

struct SpmdResult {
  BackgroundEstimate estimate;
  RunStats stats;
};

// Illumination-stable span selection, per-frame superpixel segmentation and
// motion masks, per-position clustering and the final decision. When
// `debug_dir` is non-empty, masks, superpixel overlays and the provenance map
// are written there as PNGs.
SpmdResult run_spmd(const FrameSequence& frames, const PipelineConfig& config,
                    const std::filesystem::path& debug_dir = {});

std::string stats_to_json(const RunStats& stats);

}  // namespace bginit
