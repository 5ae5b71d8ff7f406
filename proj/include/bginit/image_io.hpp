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

#include "bginit/image.hpp"

namespace bginit {

// Decodes a PNG or JPEG file (anything OpenCV's imgcodecs reads) as RGB.
ColorFrame read_image(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const ColorFrame& image);

// 8-bit gray PNG, or a 1-bit PNG when `bilevel` is set (non-zero = white).
void write_png(const std::filesystem::path& path, const GrayFrame& image,
               bool bilevel = false);

// Image files (.png, .jpg, .jpeg, any case) directly inside `dir`, sorted by
// file name.
std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& dir);

// Loads a frame directory. When `dir` holds an `input/` subdirectory (the
// SBMnet layout, input/inNNNNNN.jpg) the frames are read from there.
FrameSequence load_sequence(const std::filesystem::path& dir);

}  // namespace bginit
