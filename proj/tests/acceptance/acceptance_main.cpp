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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "bginit/cluster.hpp"
#include "bginit/illumination.hpp"
#include "bginit/image_io.hpp"
#include "bginit/metrics.hpp"
#include "bginit/motion.hpp"
#include "bginit/pipeline.hpp"
#include "bginit/slic.hpp"
#include "bginit/synthetic.hpp"
#include "bginit/tmf.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/partition.hpp"

using namespace bginit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

SyntheticSequence scene(const char* name) {
  const SyntheticScene s = load_scene(std::string(BGINIT_TEST_DATA "/scenes/") + name + ".scene");
  return generate_synthetic(s, s.frames, s.seed);
}

ColorFrame crop(const ColorFrame& f, int x0, int y0, int w, int h) {
  ColorFrame out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out.at(x, y) = f.at(x0 + x, y0 + y);
  return out;
}

PipelineConfig single_worker() {
  PipelineConfig c;
  c.workers = 1;
  return c;
}

Outcome otsu_equivalence() {
  Outcome o;
  gen::Rng rng(1001);
  for (int t = 0; t < 500; ++t) {
    Histogram256 h;
    if (t % 2 == 0) {
      h = gen::histogram(rng);
    } else {
      const int w = gen::uniform(rng, 4, 64), hh = gen::uniform(rng, 4, 64);
      const int lo = gen::uniform(rng, 0, 200);
      const GrayFrame g = gen::noise_gray(rng, w, hh, lo, gen::uniform(rng, lo, 255));
      for (std::size_t i = 0; i < g.size(); ++i) ++h.bins[g[i]];
      if (otsu_threshold(g).threshold != otsu_threshold(h).threshold) {
        fail(o, "frame and histogram overloads disagree at case " + std::to_string(t));
      }
    }
    const OtsuResult got = otsu_threshold(h);
    const oracle::OtsuAnswer want = oracle::otsu(h);
    if (got.threshold != want.threshold) {
      fail(o, "case " + std::to_string(t) + ": threshold " + std::to_string(got.threshold) +
                  " vs " + std::to_string(want.threshold));
    }
  }
  if (o.pass) o.detail = "500/500 thresholds identical";
  return o;
}

Outcome clustering_equivalence() {
  Outcome o;
  gen::Rng rng(1002);
  int total_clusters = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = gen::uniform(rng, 0, 200);
    const ClusterParams p{gen::uniform(rng, 2, 30), gen::uniform(rng, 2, 8)};
    MotionlessSeries s;
    const int modes = gen::uniform(rng, 1, 4);
    std::vector<int> centers;
    for (int m = 0; m < modes; ++m) centers.push_back(gen::uniform(rng, 0, 255));
    const int spread = gen::uniform(rng, 1, 40);
    for (int i = 0; i < n; ++i) {
      int v = i % 5 == 0 ? gen::uniform(rng, 0, 255)
                         : centers[gen::uniform(rng, 0, modes - 1)] + gen::uniform(rng, -spread, spread);
      v = std::clamp(v, 0, 255);
      s.samples.push_back({static_cast<std::uint8_t>(v), i});
    }
    std::vector<Sample> sorted = s.samples;
    sort_samples(sorted);
    std::vector<int> values;
    for (const Sample& x : sorted) values.push_back(x.gray);
    const oracle::DbscanResult ref = oracle::dbscan(values, p.epsilon, p.min_pts);
    const PixelClusterSet got = cluster_pixel(s, p);
    total_clusters += ref.clusters;
    if (static_cast<int>(got.clusters.size()) != ref.clusters) {
      fail(o, "case " + std::to_string(t) + ": cluster count differs");
      continue;
    }
    std::map<std::int32_t, int> owner;
    for (std::size_t c = 0; c < got.clusters.size(); ++c)
      for (std::int32_t f : got.clusters[c].members) owner[f] = static_cast<int>(c);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const auto it = owner.find(sorted[i].frame);
      if ((it == owner.end() ? -1 : it->second) != ref.label[i]) {
        fail(o, "case " + std::to_string(t) + ": membership differs at sample " + std::to_string(i));
        break;
      }
    }
  }
  if (o.pass) o.detail = "500/500 memberships identical, " + std::to_string(total_clusters) + " clusters";
  return o;
}

Outcome slic_invariants() {
  Outcome o;
  gen::Rng rng(1003);
  std::vector<ColorFrame> images;
  for (int t = 0; t < 20; ++t) {
    const int w = gen::uniform(rng, 48, 200), h = gen::uniform(rng, 48, 160);
    switch (t % 4) {
      case 0:
        images.push_back(gen::blob_frame(rng, w, h));
        break;
      case 1:
        images.push_back(textured_background(w, h, rng()));
        break;
      case 2: {
        // A moving-object scene frame with sensor noise.
        SyntheticScene sc;
        sc.background = textured_background(w, h, rng());
        sc.noise_sigma = 2.0;
        ObjectScript o;
        o.width = w / 4;
        o.height = h / 4;
        o.color = {230, 40, 40};
        o.texture = Texture::kNoise;
        o.texture_param = 30;
        o.x0 = o.x1 = w / 3;
        o.y0 = o.y1 = h / 3;
        o.end_frame = 1;
        sc.objects.push_back(o);
        images.push_back(generate_synthetic(sc, 1, rng()).frames[0]);
        break;
      }
      default:
        images.push_back(ColorFrame(w, h, {static_cast<std::uint8_t>(gen::uniform(rng, 0, 255)), 120, 60}));
        break;
    }
  }
  const auto natural = list_frame_files(BGINIT_TEST_DATA "/natural");
  if (natural.size() != 5) fail(o, "expected 5 natural images");
  for (const auto& f : natural) images.push_back(read_image(f));
  double lo_ratio = 1e9, hi_ratio = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const SlicParams p;
    const SuperpixelLabeling s = segment(images[i], p);
    if (!partition::valid(s)) fail(o, "image " + std::to_string(i) + " is not a valid partition");
    const double grid = static_cast<double>(s.width) * s.height /
                        (static_cast<double>(s.superpixel_size) * s.superpixel_size);
    const double ratio = s.region_count / grid;
    lo_ratio = std::min(lo_ratio, ratio);
    hi_ratio = std::max(hi_ratio, ratio);
    if (ratio < 0.5 || ratio > 4.0) fail(o, "image " + std::to_string(i) + fmt(": count ratio %.3f", ratio));
    if (segment(images[i], p).labels != s.labels) fail(o, "image " + std::to_string(i) + " not deterministic");
  }
  if (o.pass) {
    o.detail = "25 images, region count ratio in [" + fmt("%.3f", lo_ratio) + ", " + fmt("%.3f", hi_ratio) + "]";
  }
  return o;
}

Outcome hellinger_properties() {
  Outcome o;
  Histogram256 h1, h2;
  h1.bins[0] = 1;
  h1.bins[1] = 1;
  h2.bins[0] = 1;
  const double example = hellinger_distance(h1, h2);
  if (std::abs(example - 0.54120) > 1e-4) fail(o, fmt("example gives %.6f", example));
  gen::Rng rng(1004);
  for (int t = 0; t < 500; ++t) {
    const Histogram256 a = gen::histogram(rng), b = gen::histogram(rng);
    const double d = hellinger_distance(a, b);
    if (d != hellinger_distance(b, a)) fail(o, "asymmetric at case " + std::to_string(t));
    if (!(d >= 0.0 && d <= 1.0)) fail(o, fmt("out of range: %.6f", d));
    if (hellinger_distance(a, a) != 0.0) fail(o, "self distance not zero");
    Histogram256 scaled = a;
    const std::uint64_t k = gen::uniform(rng, 2, 1000);
    for (auto& v : scaled.bins) v *= k;
    if (std::abs(hellinger_distance(scaled, b) - d) > 1e-9) fail(o, "not scale invariant");
  }
  if (o.pass) o.detail = fmt("example %.5f; 500 random pairs symmetric, bounded, scale invariant", example);
  return o;
}

Outcome metric_sanity() {
  Outcome o;
  gen::Rng rng(1005);
  const ColorFrame a = gen::blob_frame(rng, 96, 80);
  const MetricReport same = evaluate(a, a);
  if (!(same.age == 0 && same.peps == 0 && same.pceps == 0 && same.psnr == kPsnrCap &&
        same.ms_ssim == 1.0 && same.cqm == kPsnrCap)) {
    fail(o, "identical pair does not give 0/0/0/100/1/100");
  }
  for (int t = 0; t < 200; ++t) {
    const int w = gen::uniform(rng, 8, 64), h = gen::uniform(rng, 8, 64);
    const ColorFrame x = gen::noise_frame(rng, w, h);
    ColorFrame y = x;
    const int amp = gen::uniform(rng, 0, 80);
    for (std::size_t i = 0; i < y.size(); ++i) {
      Rgb& c = y[i];
      if (gen::uniform(rng, 0, 3) == 0) continue;
      auto jitter = [&](std::uint8_t v) {
        return static_cast<std::uint8_t>(std::clamp(v + gen::uniform(rng, -amp, amp), 0, 255));
      };
      c = {jitter(c.r), jitter(c.g), jitter(c.b)};
    }
    if (pceps(x, y) > peps(x, y)) fail(o, "pceps > peps at pair " + std::to_string(t));
    if (std::abs(cqm(x, y) - oracle::cqm(x, y)) > 1e-9) fail(o, "cqm differs from reference");
  }
  ColorFrame plus5 = a;
  for (std::size_t i = 0; i < plus5.size(); ++i) {
    Rgb& c = plus5[i];
    c = {static_cast<std::uint8_t>(std::min(c.r, std::uint8_t{250}) + 5),
         static_cast<std::uint8_t>(std::min(c.g, std::uint8_t{250}) + 5),
         static_cast<std::uint8_t>(std::min(c.b, std::uint8_t{250}) + 5)};
  }
  ColorFrame base = a;
  for (std::size_t i = 0; i < base.size(); ++i) {
    Rgb& c = base[i];
    c = {std::min(c.r, std::uint8_t{250}), std::min(c.g, std::uint8_t{250}), std::min(c.b, std::uint8_t{250})};
  }
  const double age5 = age(base, plus5);
  if (age5 != 5.0) fail(o, fmt("uniform +5 gives AGE %.6f", age5));
  if (kCqmLumaWeight != 0.9449 || kCqmChromaWeight != 0.0551) fail(o, "CQM weights");
  if (o.pass) o.detail = "identical pair exact, 200 random pairs, AGE(+5) = 5, CQM weights 0.9449/0.0551";
  return o;
}

Outcome basic_scene() {
  Outcome o;
  const SyntheticSequence seq = scene("basic");
  const auto t0 = std::chrono::steady_clock::now();
  const SpmdResult r = run_spmd(seq.frames, single_worker());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double a = age(seq.ground_truth, r.estimate.color);
  const double p = peps(seq.ground_truth, r.estimate.color);
  if (!(a < 1.0)) fail(o, fmt("AGE %.4f", a));
  if (p != 0.0) fail(o, fmt("pEPs %.6f", p));
  if (!(secs < 30.0)) fail(o, fmt("runtime %.2f s", secs));
  o.detail = fmt("AGE %.4f", a) + fmt(", pEPs %.4f", p) + fmt(", %.2f s single-threaded", secs);
  return o;
}

Outcome intermittent_scene() {
  Outcome o;
  const SyntheticSequence seq = scene("intermittent");
  const SpmdResult r = run_spmd(seq.frames, single_worker());
  const ColorFrame tmf = run_tmf(seq.frames);
  // The parked object's rectangle.
  const ColorFrame gt = crop(seq.ground_truth, 120, 90, 80, 60);
  const double a_spmd = age(gt, crop(r.estimate.color, 120, 90, 80, 60));
  const double a_tmf = age(gt, crop(tmf, 120, 90, 80, 60));
  if (!(a_spmd < 2.0)) fail(o, fmt("SPMD region AGE %.4f", a_spmd));
  if (!(a_tmf > 20.0)) fail(o, fmt("TMF region AGE %.4f", a_tmf));
  o.detail = fmt("SPMD region AGE %.4f", a_spmd) + fmt(", TMF region AGE %.4f", a_tmf);
  return o;
}

Outcome clutter_scene() {
  Outcome o;
  const SyntheticSequence seq = scene("clutter");
  const SpmdResult r = run_spmd(seq.frames, single_worker());
  const double a = age(seq.ground_truth, r.estimate.color);
  if (!(a < 3.0)) fail(o, fmt("AGE %.4f", a));
  o.detail = fmt("AGE %.4f", a);
  return o;
}

Outcome illumination_scene() {
  Outcome o;
  const SyntheticSequence seq = scene("illumination");
  const SubsequenceSelection sel = select_stable_subsequence(seq.frames, IlluminationParams{});
  const int last = static_cast<int>(seq.frames.size()) - 1;
  if (sel.start_index != 40 || sel.end_index != last) {
    fail(o, "selected [" + std::to_string(sel.start_index) + ", " + std::to_string(sel.end_index) + "]");
  }
  const SpmdResult r = run_spmd(seq.frames, single_worker());
  const double a = age(seq.ground_truth, r.estimate.color);
  if (!(a < 2.0)) fail(o, fmt("AGE %.4f", a));
  o.detail = "span [" + std::to_string(sel.start_index) + ", " + std::to_string(sel.end_index) + "]" +
             fmt(", AGE %.4f", a);
  return o;
}

Outcome static_scene() {
  Outcome o;
  const SyntheticSequence seq = scene("static");
  const SpmdResult r = run_spmd(seq.frames, single_worker());
  const double a = age(seq.ground_truth, r.estimate.color);
  const int guarded = r.stats.static_guard_frames;
  if (!(a < 1.0)) fail(o, fmt("AGE %.4f", a));
  if (guarded != static_cast<int>(seq.frames.size()) - 1) fail(o, "guard active on " + std::to_string(guarded) + " frames");
  o.detail = fmt("AGE %.4f", a) + ", guard active on " + std::to_string(guarded) + " frame pairs";
  return o;
}

Outcome performance() {
  Outcome o;
  const SyntheticSequence seq = scene("performance");
  if (seq.frames.size() != 200 || seq.frames[0].width() != 200 || seq.frames[0].height() != 144) {
    fail(o, "performance scene is not 200x144x200");
  }
  PipelineConfig c;
  double fps[2] = {0, 0};
  const int workers[2] = {1, 4};
  std::string isa;
  for (int k = 0; k < 2; ++k) {
    c.workers = workers[k];
    const RunStats stats = run_spmd(seq.frames, c).stats;
    fps[k] = stats.frames_per_second;
    isa = stats.isa;
  }
  if (!(fps[0] >= 10.0)) fail(o, fmt("%.1f fps with 1 worker", fps[0]));
  if (!(fps[1] >= 20.0)) fail(o, fmt("%.1f fps with 4 workers", fps[1]));
  o.detail = fmt("%.1f fps with 1 worker", fps[0]) + fmt(", %.1f fps with 4 workers", fps[1]) +
             ", isa " + isa;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"otsu matches exhaustive search", otsu_equivalence},
      {"clustering matches DBSCAN", clustering_equivalence},
      {"superpixel partition invariants", slic_invariants},
      {"hellinger distance properties", hellinger_properties},
      {"metric sanity", metric_sanity},
      {"basic scene", basic_scene},
      {"intermittent object", intermittent_scene},
      {"clutter", clutter_scene},
      {"illumination step", illumination_scene},
      {"static scene", static_scene},
      {"throughput at 200x144", performance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
