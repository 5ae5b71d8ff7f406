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

#include "bginit/tmf.hpp"

#include <array>

#include "bginit/parallel.hpp"

namespace bginit {

ColorFrame run_tmf(const FrameSequence& frames, int workers) {
  if (frames.empty()) throw Error(ErrorKind::kEmptyInput, "no frames for the median filter");
  for (const ColorFrame& f : frames) require_same_shape(f, frames.front(), "median filter");
  const ColorFrame& first = frames.front();
  ColorFrame out(first.width(), first.height());
  const std::size_t rank = (frames.size() - 1) / 2;
  parallel_for(out.size(), workers, [&](std::size_t begin, std::size_t end) {
    // Counting select: 8-bit channels make a 256-bin histogram cheaper than
    // sorting for long sequences.
    std::array<std::array<std::uint32_t, 256>, 3> counts;
    for (std::size_t p = begin; p < end; ++p) {
      for (auto& c : counts) c.fill(0);
      for (const ColorFrame& f : frames) {
        const Rgb c = f[p];
        ++counts[0][c.r];
        ++counts[1][c.g];
        ++counts[2][c.b];
      }
      std::uint8_t med[3];
      for (int ch = 0; ch < 3; ++ch) {
        std::size_t seen = 0;
        int v = 0;
        while (seen + counts[ch][v] <= rank) seen += counts[ch][v++];
        med[ch] = static_cast<std::uint8_t>(v);
      }
      out[p] = {med[0], med[1], med[2]};
    }
  });
  return out;
}

}  // namespace bginit
