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
#include <string_view>

#include "bginit/cluster.hpp"
#include "bginit/illumination.hpp"
#include "bginit/motion.hpp"
#include "bginit/slic.hpp"

namespace bginit {

struct PipelineConfig {
  IlluminationParams illumination;
  SlicParams slic;
  MotionParams motion;
  int epsilon = 10;
  MinPtsPolicy min_pts;
  int workers = 1;
  bool debug_dumps = false;

  void validate() const;
  friend bool operator==(const PipelineConfig& a, const PipelineConfig& b);
};

// Flat `key = value` text, one setting per line, `#` starts a comment.
// Missing keys keep their defaults; unknown keys and malformed values throw
// kInvalidConfig naming the line.
PipelineConfig parse_config(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);

// Every key, in a stable order, with values that parse back exactly.
std::string serialize_config(const PipelineConfig& config);

}  // namespace bginit
