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

#include "bginit/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <numeric>

#include "bginit/image_io.hpp"
#include "bginit/imaging.hpp"
#include "bginit/kernels.hpp"
#include "bginit/motion.hpp"
#include "bginit/parallel.hpp"
#include "bginit/slic.hpp"
#include "json.hpp"

namespace bginit {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string numbered(const char* stem, int index) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%06d.png", stem, index + 1);
  return buf;
}

ColorFrame boundary_overlay(const ColorFrame& frame, const SuperpixelLabeling& labeling) {
  ColorFrame out = frame;
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      const std::int32_t l = labeling.at(x, y);
      const bool edge = (x + 1 < frame.width() && labeling.at(x + 1, y) != l) ||
                        (y + 1 < frame.height() && labeling.at(x, y + 1) != l);
      if (edge) out.at(x, y) = {255, 0, 0};
    }
  }
  return out;
}

}  // namespace

double RunStats::stage_sum() const {
  return std::accumulate(stages.begin(), stages.end(), 0.0,
                         [](double acc, const StageTime& s) { return acc + s.seconds; });
}

SpmdResult run_spmd(const FrameSequence& frames, const PipelineConfig& config,
                    const std::filesystem::path& debug_dir) {
  config.validate();
  if (frames.empty()) throw Error(ErrorKind::kEmptyInput, "no frames to process");
  for (const ColorFrame& f : frames) require_same_shape(f, frames.front(), "input frames");
  const bool dump = !debug_dir.empty();
  const int workers = config.workers;

  SpmdResult result;
  RunStats& stats = result.stats;
  stats.input_frames = static_cast<int>(frames.size());
  stats.isa = kernels::to_string(kernels::active_kernels().isa);
  const Clock::time_point run_start = Clock::now();

  // Illumination: signatures in parallel, then the sequential scan.
  Clock::time_point t0 = Clock::now();
  std::vector<IlluminationSignature> signatures(frames.size());
  parallel_for(frames.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) signatures[i] = illumination_signature(frames[i]);
  });
  stats.selection = select_stable_subsequence(signatures, config.illumination);
  stats.stages.push_back({"illumination", seconds_since(t0)});

  const FrameSequence selected(frames.begin() + stats.selection.start_index,
                               frames.begin() + stats.selection.end_index + 1);
  const int n = static_cast<int>(selected.size());

  if (n == 1) {
    const Clock::time_point td = Clock::now();
    const ColorFrame& only = selected.front();
    result.estimate = {only, to_gray(only),
                       Image<Provenance>(only.width(), only.height(), Provenance::kTemporalMedian)};
    stats.stages.push_back({"decision", seconds_since(td)});
  } else {
    // Superpixels and motion, one frame per work item. Frame n's mask needs
    // gray frames n - 1 and n, so gray conversion runs first.
    t0 = Clock::now();
    std::vector<GrayFrame> gray(n);
    parallel_for(n, workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) gray[i] = to_gray(selected[i]);
    });
    const double gray_seconds = seconds_since(t0);

    t0 = Clock::now();
    std::vector<MotionMask> masks(n);
    std::vector<std::uint8_t> guarded(n, 0);
    std::vector<double> slic_cpu(n, 0.0), motion_cpu(n, 0.0);
    parallel_for(n - 1, workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        const std::size_t i = k + 1;
        const Clock::time_point ts = Clock::now();
        const SuperpixelLabeling labeling = segment(selected[i], config.slic);
        slic_cpu[i] = seconds_since(ts);
        const Clock::time_point tm = Clock::now();
        FrameMotion fm = detect_frame_motion(gray[i], gray[i - 1], labeling, config.motion);
        masks[i] = std::move(fm.mask);
        masks[i].frame_index = static_cast<int>(i);
        guarded[i] = fm.static_guard;
        motion_cpu[i] = seconds_since(tm);
        if (dump) {
          write_png(debug_dir / "superpixels" / numbered("overlay", static_cast<int>(i)),
                    boundary_overlay(selected[i], labeling));
        }
      }
    });
    masks[0] = MotionMask{masks[1].moving, 0};
    const double spmd_wall = seconds_since(t0);
    const double slic_total = std::accumulate(slic_cpu.begin(), slic_cpu.end(), 0.0);
    const double motion_total = std::accumulate(motion_cpu.begin(), motion_cpu.end(), 0.0);
    const double cpu_total = slic_total + motion_total;
    const double slic_share = cpu_total > 0 ? slic_total / cpu_total : 0.5;
    stats.stages.push_back({"superpixel", spmd_wall * slic_share});
    stats.stages.push_back({"motion", gray_seconds + spmd_wall * (1.0 - slic_share)});
    stats.static_guard_frames =
        static_cast<int>(std::count(guarded.begin() + 1, guarded.end(), std::uint8_t{1}));
    if (dump) {
      for (int i = 0; i < n; ++i) {
        write_png(debug_dir / "masks" / numbered("mask", i), masks[i].moving, true);
      }
    }

    t0 = Clock::now();
    const DecideParams dp{config.epsilon, config.min_pts};
    result.estimate = estimate_background_streaming(selected, gray, masks, dp, workers);
    stats.stages.push_back({"cluster+decision", seconds_since(t0)});
  }

  stats.fallback_pixels = result.estimate.fallback_count();
  if (dump) {
    GrayFrame prov(result.estimate.provenance.width(), result.estimate.provenance.height());
    for (std::size_t p = 0; p < prov.size(); ++p) {
      prov[p] = static_cast<std::uint8_t>(static_cast<int>(result.estimate.provenance[p]) * 127);
    }
    write_png(debug_dir / "provenance.png", prov);
  }
  stats.total_seconds = seconds_since(run_start);
  stats.frames_per_second =
      stats.total_seconds > 0 ? stats.input_frames / stats.total_seconds : 0.0;
  return result;
}

std::string stats_to_json(const RunStats& s) {
  nlohmann::ordered_json stages = nlohmann::ordered_json::object();
  for (const StageTime& st : s.stages) stages[st.name] = st.seconds;
  const nlohmann::ordered_json j = {
      {"input_frames", s.input_frames},
      {"subsequence", {{"start", s.selection.start_index},
                       {"end", s.selection.end_index},
                       {"boundaries", s.selection.boundaries}}},
      {"stage_seconds", stages},
      {"total_seconds", s.total_seconds},
      {"fps", s.frames_per_second},
      {"fallback_pixels", s.fallback_pixels},
      {"static_guard_frames", s.static_guard_frames},
      {"isa", s.isa},
  };
  return j.dump(2);
}

}  // namespace bginit
