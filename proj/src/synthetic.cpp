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

#include "bginit/synthetic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace bginit {
namespace {

std::uint8_t clamp_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

Rgb shift(Rgb c, int offset) {
  auto s = [offset](std::uint8_t v) {
    return static_cast<std::uint8_t>(std::clamp(v + offset, 0, 255));
  };
  return {s(c.r), s(c.g), s(c.b)};
}

std::vector<int> object_pattern(const ObjectScript& obj, std::uint64_t seed, std::size_t index) {
  std::vector<int> pattern(static_cast<std::size_t>(obj.width) * obj.height, 0);
  if (obj.texture != Texture::kNoise) return pattern;
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  std::uniform_int_distribution<int> dist(-obj.texture_param, obj.texture_param);
  for (int& v : pattern) v = dist(rng);
  return pattern;
}

Rgb object_pixel(const ObjectScript& obj, const std::vector<int>& pattern, int i, int j) {
  switch (obj.texture) {
    case Texture::kSolid:
      return obj.color;
    case Texture::kChecker: {
      const int cell = std::max(obj.texture_param, 1);
      if (((i / cell) + (j / cell)) % 2 == 0) return obj.color;
      return {static_cast<std::uint8_t>(obj.color.r / 2),
              static_cast<std::uint8_t>(obj.color.g / 2),
              static_cast<std::uint8_t>(obj.color.b / 2)};
    }
    case Texture::kNoise:
      return shift(obj.color, pattern[static_cast<std::size_t>(j) * obj.width + i]);
  }
  return obj.color;
}

void position_at(const ObjectScript& obj, int t, int& px, int& py) {
  const int span = obj.end_frame - 1 - obj.first_frame;
  const double alpha = span > 0 ? static_cast<double>(t - obj.first_frame) / span : 0.0;
  px = static_cast<int>(std::lround(obj.x0 + alpha * (obj.x1 - obj.x0)));
  py = static_cast<int>(std::lround(obj.y0 + alpha * (obj.y1 - obj.y0)));
}

void validate_object(const ObjectScript& obj, int w, int h, std::size_t index) {
  const std::string who = "object " + std::to_string(index) + ": ";
  if (obj.width < 1 || obj.height < 1) {
    throw Error(ErrorKind::kInvalidScript, who + "size must be positive");
  }
  if (obj.first_frame < 0 || obj.end_frame <= obj.first_frame) {
    throw Error(ErrorKind::kInvalidScript, who + "empty or negative visibility interval");
  }
  if (obj.wrap) return;
  for (const int t : {obj.first_frame, obj.end_frame - 1}) {
    int px, py;
    position_at(obj, t, px, py);
    if (px < 0 || py < 0 || px + obj.width > w || py + obj.height > h) {
      throw Error(ErrorKind::kInvalidScript,
                  who + "leaves the " + std::to_string(w) + "x" + std::to_string(h) +
                      " frame at frame " + std::to_string(t));
    }
  }
}

// --- text format -----------------------------------------------------------

[[noreturn]] void script_error(int line, const std::string& what) {
  throw Error(ErrorKind::kInvalidScript, "scene line " + std::to_string(line) + ": " + what);
}

template <typename T>
T number(std::string_view s, int line) {
  T v{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) script_error(line, "bad number '" + std::string(s) + "'");
  return v;
}

// Splits "a<sep>b" into two numbers.
template <typename T>
std::pair<T, T> number_pair(std::string_view s, char sep, int line) {
  const auto cut = s.find(sep);
  if (cut == std::string_view::npos) script_error(line, "expected pair in '" + std::string(s) + "'");
  return {number<T>(s.substr(0, cut), line), number<T>(s.substr(cut + 1), line)};
}

Rgb parse_color(std::string_view s, int line) {
  const auto a = s.find(',');
  const auto b = s.find(',', a == std::string_view::npos ? a : a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos) {
    script_error(line, "color must be r,g,b");
  }
  auto channel = [&](std::string_view c) {
    const int v = number<int>(c, line);
    if (v < 0 || v > 255) script_error(line, "color channel out of range");
    return static_cast<std::uint8_t>(v);
  };
  return {channel(s.substr(0, a)), channel(s.substr(a + 1, b - a - 1)), channel(s.substr(b + 1))};
}

struct KeyValue {
  std::string_view key;
  std::string_view value;
};

KeyValue split_kv(std::string_view token) {
  const auto eq = token.find('=');
  if (eq == std::string_view::npos) return {token, {}};
  return {token.substr(0, eq), token.substr(eq + 1)};
}

}  // namespace

int SyntheticScene::illumination_offset(int t) const {
  int total = 0;
  for (const IlluminationScript& ev : illumination) {
    if (ev.kind == IlluminationScript::Kind::kStep) {
      if (t >= ev.start_frame) total += ev.offset;
    } else if (t >= ev.end_frame) {
      total += ev.offset;
    } else if (t > ev.start_frame) {
      const double alpha = static_cast<double>(t - ev.start_frame) /
                           static_cast<double>(ev.end_frame - ev.start_frame);
      total += static_cast<int>(std::lround(alpha * ev.offset));
    }
  }
  return total;
}

ColorFrame textured_background(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> freq(0.04, 0.12);
  std::uniform_int_distribution<int> grain(-8, 8);
  struct Channel {
    double base, fx, fy, f2, p1, p2, p3;
  };
  Channel ch[3];
  const double bases[3] = {100.0, 115.0, 95.0};
  for (int c = 0; c < 3; ++c) {
    ch[c] = {bases[c], freq(rng), freq(rng), freq(rng) * 2.0, phase(rng), phase(rng), phase(rng)};
  }
  ColorFrame out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::uint8_t v[3];
      const int g = grain(rng);
      for (int c = 0; c < 3; ++c) {
        const Channel& k = ch[c];
        const double s = k.base + 45.0 * std::sin(x * k.fx + k.p1) * std::cos(y * k.fy + k.p2) +
                         20.0 * std::sin((x + 0.7 * y) * k.f2 + k.p3) + g;
        v[c] = static_cast<std::uint8_t>(std::clamp(std::lround(s), 30L, 185L));
      }
      out.at(x, y) = {v[0], v[1], v[2]};
    }
  }
  return out;
}

SyntheticSequence generate_synthetic(const SyntheticScene& scene, int n_frames,
                                     std::uint64_t seed) {
  if (scene.background.empty()) throw Error(ErrorKind::kInvalidScript, "scene has no background");
  if (n_frames < 1) throw Error(ErrorKind::kInvalidScript, "frame count must be positive");
  if (scene.noise_sigma < 0.0) throw Error(ErrorKind::kInvalidScript, "noise sigma must be >= 0");
  const int w = scene.background.width();
  const int h = scene.background.height();
  for (const IlluminationScript& ev : scene.illumination) {
    if (ev.kind == IlluminationScript::Kind::kRamp && ev.end_frame <= ev.start_frame) {
      throw Error(ErrorKind::kInvalidScript, "illumination ramp must end after it starts");
    }
  }
  std::vector<std::vector<int>> patterns;
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    validate_object(scene.objects[i], w, h, i);
    patterns.push_back(object_pattern(scene.objects[i], seed, i));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, scene.noise_sigma > 0 ? scene.noise_sigma : 1.0);

  SyntheticSequence out;
  out.frames.reserve(n_frames);
  for (int t = 0; t < n_frames; ++t) {
    ColorFrame frame = scene.background;
    for (std::size_t i = 0; i < scene.objects.size(); ++i) {
      const ObjectScript& obj = scene.objects[i];
      if (t < obj.first_frame || t >= obj.end_frame) continue;
      int px, py;
      position_at(obj, t, px, py);
      for (int j = 0; j < obj.height; ++j) {
        for (int k = 0; k < obj.width; ++k) {
          int x = px + k;
          int y = py + j;
          if (obj.wrap) {
            x = ((x % w) + w) % w;
            y = ((y % h) + h) % h;
          }
          frame.at(x, y) = object_pixel(obj, patterns[i], k, j);
        }
      }
    }
    const int offset = scene.illumination_offset(t);
    for (std::size_t p = 0; p < frame.size(); ++p) {
      Rgb c = shift(frame[p], offset);
      if (scene.noise_sigma > 0.0) {
        c = {clamp_u8(c.r + noise(rng)), clamp_u8(c.g + noise(rng)), clamp_u8(c.b + noise(rng))};
      }
      frame[p] = c;
    }
    out.frames.push_back(std::move(frame));
  }
  out.ground_truth = scene.background;
  const int final_offset = scene.illumination_offset(n_frames - 1);
  for (std::size_t p = 0; p < out.ground_truth.size(); ++p) {
    out.ground_truth[p] = shift(out.ground_truth[p], final_offset);
  }
  return out;
}

SyntheticScene parse_scene(std::string_view text) {
  SyntheticScene scene;
  int width = 0;
  int height = 0;
  bool textured = true;
  std::uint64_t background_seed = 0;
  bool background_seed_set = false;
  Rgb solid{};

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream words(raw);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    const std::string& cmd = tok[0];
    auto need = [&](std::size_t n) {
      if (tok.size() != n) script_error(line_no, "'" + cmd + "' expects " + std::to_string(n - 1) + " values");
    };
    if (cmd == "size") {
      need(3);
      width = number<int>(tok[1], line_no);
      height = number<int>(tok[2], line_no);
      if (width < 1 || height < 1) script_error(line_no, "size must be positive");
    } else if (cmd == "frames") {
      need(2);
      scene.frames = number<int>(tok[1], line_no);
    } else if (cmd == "seed") {
      need(2);
      scene.seed = number<std::uint64_t>(tok[1], line_no);
    } else if (cmd == "noise") {
      need(2);
      scene.noise_sigma = number<double>(tok[1], line_no);
    } else if (cmd == "background") {
      if (tok.size() >= 2 && tok[1] == "textured" && tok.size() <= 3) {
        textured = true;
        if (tok.size() == 3) {
          background_seed = number<std::uint64_t>(tok[2], line_no);
          background_seed_set = true;
        }
      } else if (tok.size() == 5 && tok[1] == "solid") {
        textured = false;
        solid = parse_color(tok[2] + "," + tok[3] + "," + tok[4], line_no);
      } else {
        script_error(line_no, "background must be 'textured [seed]' or 'solid r g b'");
      }
    } else if (cmd == "object") {
      ObjectScript obj;
      bool have_size = false, have_from = false, have_frames = false;
      bool have_to = false;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const KeyValue kv = split_kv(tok[i]);
        if (kv.key == "wrap" && kv.value.empty()) {
          obj.wrap = true;
        } else if (kv.key == "size") {
          std::tie(obj.width, obj.height) = number_pair<int>(kv.value, 'x', line_no);
          have_size = true;
        } else if (kv.key == "color") {
          obj.color = parse_color(kv.value, line_no);
        } else if (kv.key == "texture") {
          const auto colon = kv.value.find(':');
          const std::string_view kind = kv.value.substr(0, colon);
          if (kind == "solid") {
            obj.texture = Texture::kSolid;
          } else if (kind == "checker" || kind == "noise") {
            if (colon == std::string_view::npos) script_error(line_no, "texture needs ':<value>'");
            obj.texture = kind == "checker" ? Texture::kChecker : Texture::kNoise;
            obj.texture_param = number<int>(kv.value.substr(colon + 1), line_no);
          } else {
            script_error(line_no, "unknown texture '" + std::string(kind) + "'");
          }
        } else if (kv.key == "from") {
          std::tie(obj.x0, obj.y0) = number_pair<double>(kv.value, ',', line_no);
          have_from = true;
        } else if (kv.key == "to") {
          std::tie(obj.x1, obj.y1) = number_pair<double>(kv.value, ',', line_no);
          have_to = true;
        } else if (kv.key == "frames") {
          std::tie(obj.first_frame, obj.end_frame) = number_pair<int>(kv.value, '-', line_no);
          have_frames = true;
        } else {
          script_error(line_no, "unknown object attribute '" + tok[i] + "'");
        }
      }
      if (!have_size || !have_from || !have_frames) {
        script_error(line_no, "object needs size=, from= and frames=");
      }
      if (!have_to) {
        obj.x1 = obj.x0;
        obj.y1 = obj.y0;
      }
      scene.objects.push_back(obj);
    } else if (cmd == "illumination") {
      if (tok.size() < 2) script_error(line_no, "illumination needs a kind");
      IlluminationScript ev;
      ev.kind = tok[1] == "step" ? IlluminationScript::Kind::kStep
                                 : IlluminationScript::Kind::kRamp;
      if (tok[1] != "step" && tok[1] != "ramp") script_error(line_no, "illumination is step or ramp");
      bool have_offset = false;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        const KeyValue kv = split_kv(tok[i]);
        if (kv.key == "at" || kv.key == "from") {
          ev.start_frame = number<int>(kv.value, line_no);
        } else if (kv.key == "to") {
          ev.end_frame = number<int>(kv.value, line_no);
        } else if (kv.key == "offset") {
          ev.offset = number<int>(kv.value, line_no);
          have_offset = true;
        } else {
          script_error(line_no, "unknown illumination attribute '" + tok[i] + "'");
        }
      }
      if (!have_offset) script_error(line_no, "illumination needs offset=");
      scene.illumination.push_back(ev);
    } else {
      script_error(line_no, "unknown directive '" + cmd + "'");
    }
  }
  if (width == 0) throw Error(ErrorKind::kInvalidScript, "scene is missing 'size'");
  if (textured) {
    scene.background =
        textured_background(width, height, background_seed_set ? background_seed : scene.seed);
  } else {
    scene.background = ColorFrame(width, height, solid);
  }
  return scene;
}

SyntheticScene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read scene " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

}  // namespace bginit
