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

#include "bginit/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace bginit {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool parse_value(std::string_view text, double& out) {
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_value(std::string_view text, int& out) {
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_value(std::string_view text, bool& out) {
  if (text == "true" || text == "1") {
    out = true;
    return true;
  }
  if (text == "false" || text == "0") {
    out = false;
    return true;
  }
  return false;
}

struct Field {
  const char* key;
  std::function<bool(PipelineConfig&, std::string_view)> parse;
  std::function<std::string(const PipelineConfig&)> print;
};

template <typename T>
Field field(const char* key, T PipelineConfig::*member) {
  return {key, [member](PipelineConfig& c, std::string_view v) { return parse_value(v, c.*member); },
          [member](const PipelineConfig& c) {
            if constexpr (std::is_same_v<T, double>) return format_double(c.*member);
            else if constexpr (std::is_same_v<T, bool>) return std::string(c.*member ? "true" : "false");
            else return std::to_string(c.*member);
          }};
}

template <typename Owner, typename T>
Field nested(const char* key, Owner PipelineConfig::*owner, T Owner::*member) {
  return {key,
          [owner, member](PipelineConfig& c, std::string_view v) {
            return parse_value(v, (c.*owner).*member);
          },
          [owner, member](const PipelineConfig& c) {
            if constexpr (std::is_same_v<T, double>) return format_double((c.*owner).*member);
            else return std::to_string((c.*owner).*member);
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> all = {
      nested("tau_h", &PipelineConfig::illumination, &IlluminationParams::tau_h),
      nested("tau_eh", &PipelineConfig::illumination, &IlluminationParams::tau_eh),
      nested("equalized_bins", &PipelineConfig::illumination, &IlluminationParams::equalized_bins),
      nested("sigma_n", &PipelineConfig::slic, &SlicParams::sigma_n),
      nested("compactness", &PipelineConfig::slic, &SlicParams::compactness),
      nested("max_iterations", &PipelineConfig::slic, &SlicParams::max_iterations),
      nested("convergence_px", &PipelineConfig::slic, &SlicParams::convergence_px),
      nested("blur_sigma", &PipelineConfig::motion, &MotionParams::blur_sigma),
      nested("blur_radius", &PipelineConfig::motion, &MotionParams::blur_radius),
      nested("guard_min_variance", &PipelineConfig::motion, &MotionParams::guard_min_variance),
      nested("guard_min_peak", &PipelineConfig::motion, &MotionParams::guard_min_peak),
      field("epsilon", &PipelineConfig::epsilon),
      nested("min_pts_floor", &PipelineConfig::min_pts, &MinPtsPolicy::floor),
      nested("min_pts_fraction", &PipelineConfig::min_pts, &MinPtsPolicy::fraction),
      field("workers", &PipelineConfig::workers),
      field("debug_dumps", &PipelineConfig::debug_dumps),
  };
  return all;
}

}  // namespace

void PipelineConfig::validate() const {
  illumination.validate();
  slic.validate();
  motion.validate();
  if (epsilon < 1) throw Error(ErrorKind::kInvalidConfig, "epsilon must be >= 1");
  min_pts.validate();
  if (workers < 1) throw Error(ErrorKind::kInvalidConfig, "workers must be >= 1");
}

bool operator==(const PipelineConfig& a, const PipelineConfig& b) {
  return serialize_config(a) == serialize_config(b);
}

PipelineConfig parse_config(std::string_view text) {
  PipelineConfig config;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kInvalidConfig,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    bool known = false;
    for (const Field& f : fields()) {
      if (key != f.key) continue;
      known = true;
      if (!f.parse(config, value)) {
        throw Error(ErrorKind::kInvalidConfig, "line " + std::to_string(line_no) +
                                                   ": bad value '" + std::string(value) +
                                                   "' for " + std::string(key));
      }
    }
    if (!known) {
      throw Error(ErrorKind::kInvalidConfig, "line " + std::to_string(line_no) +
                                                 ": unknown key '" + std::string(key) + "'");
    }
  }
  config.validate();
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const PipelineConfig& config) {
  std::string out;
  for (const Field& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.print(config);
    out += '\n';
  }
  return out;
}

}  // namespace bginit
