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
#include <filesystem>
#include <string_view>
#include <vector>

#include "bginit/image.hpp"

namespace bginit {

enum class Texture {
  kSolid,
  kChecker,  // alternating full / half intensity cells, `texture_param` px wide
  kNoise,    // fixed per-object pattern, +-`texture_param` gray levels
};

struct ObjectScript {
  int width = 10;
  int height = 10;
  Rgb color{255, 255, 255};
  Texture texture = Texture::kSolid;
  int texture_param = 0;
  // Top-left corner at the first and last visible frame; linear in between.
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  int first_frame = 0;  // visible for frames [first_frame, end_frame)
  int end_frame = 0;
  bool wrap = false;    // positions wrap around the frame instead of clipping
};

struct IlluminationScript {
  enum class Kind { kStep, kRamp };
  Kind kind = Kind::kStep;
  int start_frame = 0;  // step: offset applies from here on
  int end_frame = 0;    // ramp: reaches the full offset here
  int offset = 0;       // added to every channel, clamped to [0, 255]
};

struct SyntheticScene {
  ColorFrame background;
  std::vector<ObjectScript> objects;
  std::vector<IlluminationScript> illumination;
  double noise_sigma = 0.0;

  // Set by the text format; generate_synthetic() takes explicit values.
  int frames = 0;
  std::uint64_t seed = 0;

  // Global offset applied at frame t (sum of all illumination events).
  int illumination_offset(int t) const;
};

struct SyntheticSequence {
  FrameSequence frames;
  // Background seen under the illumination of the final frame.
  ColorFrame ground_truth;
};

// Smooth multi-frequency color pattern with fine grain, every channel inside
// [30, 185] so a +60 illumination step does not clip.
ColorFrame textured_background(int width, int height, std::uint64_t seed);

// Deterministic for a given seed. Throws kInvalidScript when a non-wrapping
// object leaves the frame or an interval is malformed.
SyntheticSequence generate_synthetic(const SyntheticScene& scene, int n_frames,
                                     std::uint64_t seed);

// Line-oriented scene description:
//   size <w> <h>
//   frames <n>
//   seed <s>
//   noise <sigma>
//   background textured [<seed>] | background solid <r> <g> <b>
//   object size=<w>x<h> color=<r>,<g>,<b> [texture=solid|checker:<px>|noise:<amp>]
//          from=<x>,<y> to=<x>,<y> frames=<first>-<end> [wrap]
//   illumination step at=<frame> offset=<v>
//   illumination ramp from=<frame> to=<frame> offset=<v>
// `#` starts a comment.
SyntheticScene parse_scene(std::string_view text);
SyntheticScene load_scene(const std::filesystem::path& path);

}  // namespace bginit
