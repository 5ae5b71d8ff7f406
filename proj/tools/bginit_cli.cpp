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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bginit/config.hpp"
#include "bginit/image_io.hpp"
#include "bginit/metrics.hpp"
#include "bginit/pipeline.hpp"
#include "bginit/synthetic.hpp"
#include "bginit/tmf.hpp"

namespace fs = std::filesystem;
using namespace bginit;

namespace {

constexpr int kUsageError = 2;

PipelineConfig config_from(const std::string& path, int workers) {
  PipelineConfig config = path.empty() ? PipelineConfig{} : load_config(path);
  if (workers > 0) config.workers = workers;
  config.validate();
  return config;
}

void write_text(const fs::path& path, const std::string& text, bool append = false) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

void print_stages(const RunStats& stats) {
  std::printf("frames       %d (selected %d-%d)\n", stats.input_frames,
              stats.selection.start_index, stats.selection.end_index);
  for (const StageTime& st : stats.stages) {
    const double fps = st.seconds > 0 ? stats.input_frames / st.seconds : 0.0;
    std::printf("%-16s %9.4f s  %10.1f fps\n", st.name.c_str(), st.seconds, fps);
  }
  std::printf("%-16s %9.4f s  %10.1f fps\n", "total", stats.total_seconds,
              stats.frames_per_second);
  std::printf("isa %s, fallback pixels %zu\n", stats.isa, stats.fallback_pixels);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Background initialization from a frame sequence (superpixel motion detection)."};
  app.require_subcommand(1);

  std::string in_dir, out_path, config_path, debug_dir, stats_path;
  int workers = 0;

  CLI::App* estimate = app.add_subcommand("estimate", "Estimate the background of a frame directory.");
  estimate->add_option("in-dir", in_dir, "Frame directory (or SBMnet sequence with input/)")
      ->required()
      ->check(CLI::ExistingDirectory);
  estimate->add_option("--out", out_path, "Output PNG")->required();
  estimate->add_option("--config", config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  estimate->add_option("--debug-dir", debug_dir, "Write masks, superpixel overlays and provenance");
  estimate->add_option("--workers", workers, "Worker threads (overrides the config)")
      ->check(CLI::PositiveNumber);
  estimate->add_option("--stats", stats_path, "Write run statistics as JSON");
  estimate->footer(
      "Only the longest illumination-stable span is used. When two spans are\n"
      "equally long the later one wins.");

  std::string est_path, gt_path, json_path, name, csv_path;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "Score an estimate against ground truth.");
  evaluate_cmd->add_option("est", est_path, "Estimated background")->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("gt", gt_path, "Ground-truth background")->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--json", json_path, "Metric report output")->required();
  evaluate_cmd->add_option("--name", name, "Sequence name recorded in the report");
  evaluate_cmd->add_option("--csv", csv_path, "Append a row to this CSV file");

  int repeat = 1;
  CLI::App* bench = app.add_subcommand("bench", "Time every pipeline stage.");
  bench->add_option("in-dir", in_dir, "Frame directory")->required()->check(CLI::ExistingDirectory);
  bench->add_option("--config", config_path, "Configuration file")->check(CLI::ExistingFile);
  bench->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--repeat", repeat, "Runs; the fastest is reported")->check(CLI::PositiveNumber);

  std::string scene_path, out_dir;
  CLI::App* synth = app.add_subcommand("synth", "Render a synthetic scene with ground truth.");
  synth->add_option("scene", scene_path, "Scene description file")->required()->check(CLI::ExistingFile);
  synth->add_option("--out-dir", out_dir, "Writes input/inNNNNNN.png and gt.png")->required();

  CLI::App* tmf = app.add_subcommand("baseline-tmf", "Temporal median filter baseline.");
  tmf->add_option("in-dir", in_dir, "Frame directory")->required()->check(CLI::ExistingDirectory);
  tmf->add_option("--out", out_path, "Output PNG")->required();
  tmf->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (estimate->parsed()) {
      PipelineConfig config = config_from(config_path, workers);
      fs::path dump_dir = debug_dir;
      if (dump_dir.empty() && config.debug_dumps) dump_dir = fs::path(out_path).string() + ".debug";
      const FrameSequence frames = load_sequence(in_dir);
      const SpmdResult result = run_spmd(frames, config, dump_dir);
      write_png(out_path, result.estimate.color);
      if (!stats_path.empty()) write_text(stats_path, stats_to_json(result.stats) + "\n");
      std::printf("wrote %s (%d frames, span %d-%d, %.1f fps)\n", out_path.c_str(),
                  result.stats.input_frames, result.stats.selection.start_index,
                  result.stats.selection.end_index, result.stats.frames_per_second);
    } else if (evaluate_cmd->parsed()) {
      const ColorFrame est = read_image(est_path);
      const ColorFrame gt = read_image(gt_path);
      const std::string label = name.empty() ? fs::path(est_path).stem().string() : name;
      const MetricReport report = evaluate(gt, est);
      write_text(json_path, to_json(report, label) + "\n");
      if (!csv_path.empty()) {
        const bool fresh = !fs::exists(csv_path) || fs::file_size(csv_path) == 0;
        write_text(csv_path, (fresh ? csv_header() + "\n" : "") + to_csv_row(report, label) + "\n",
                   true);
      }
      std::cout << to_json(report, label) << "\n";
    } else if (bench->parsed()) {
      const PipelineConfig config = config_from(config_path, workers);
      const FrameSequence frames = load_sequence(in_dir);
      RunStats best;
      for (int r = 0; r < repeat; ++r) {
        RunStats stats = run_spmd(frames, config).stats;
        if (r == 0 || stats.total_seconds < best.total_seconds) best = std::move(stats);
      }
      std::printf("workers %d\n", config.workers);
      print_stages(best);
    } else if (synth->parsed()) {
      const SyntheticScene scene = load_scene(scene_path);
      const SyntheticSequence seq = generate_synthetic(scene, scene.frames, scene.seed);
      const fs::path root = out_dir;
      for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        char file[32];
        std::snprintf(file, sizeof file, "in%06zu.png", i + 1);
        write_png(root / "input" / file, seq.frames[i]);
      }
      write_png(root / "gt.png", seq.ground_truth);
      std::printf("wrote %zu frames to %s\n", seq.frames.size(), (root / "input").c_str());
    } else if (tmf->parsed()) {
      const FrameSequence frames = load_sequence(in_dir);
      write_png(out_path, run_tmf(frames, workers > 0 ? workers : 1));
      std::printf("wrote %s\n", out_path.c_str());
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", to_string(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
