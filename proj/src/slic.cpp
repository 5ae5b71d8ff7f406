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

#include "bginit/slic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "bginit/kernels.hpp"

namespace bginit {
namespace {

const std::array<double, 256>& srgb_linear_table() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) {
      const double c = i / 255.0;
      t[i] = c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
    }
    return t;
  }();
  return table;
}

inline double lab_f(double t) {
  constexpr double kDelta = 6.0 / 29.0;
  constexpr double kDelta3 = kDelta * kDelta * kDelta;
  return t > kDelta3 ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

std::size_t flat(int x, int y, int width) {
  return static_cast<std::size_t>(y) * width + x;
}

float color_gradient(const LabFrame& lab, int x, int y) {
  const int w = lab.width;
  const int h = lab.height;
  const std::size_t xm = flat(std::max(x - 1, 0), y, w);
  const std::size_t xp = flat(std::min(x + 1, w - 1), y, w);
  const std::size_t ym = flat(x, std::max(y - 1, 0), w);
  const std::size_t yp = flat(x, std::min(y + 1, h - 1), w);
  auto sq = [&](std::size_t i, std::size_t j) {
    const float dl = lab.l[i] - lab.l[j];
    const float da = lab.a[i] - lab.a[j];
    const float db = lab.b[i] - lab.b[j];
    return dl * dl + da * da + db * db;
  };
  return sq(xp, xm) + sq(yp, ym);
}

struct Grid {
  int nx = 1;
  int ny = 1;
  double sx = 1.0;
  double sy = 1.0;
};

Grid seed_grid(int width, int height, int step) {
  Grid g;
  g.nx = std::max(1, width / step);
  g.ny = std::max(1, height / step);
  g.sx = static_cast<double>(width) / g.nx;
  g.sy = static_cast<double>(height) / g.ny;
  return g;
}

// Center of each grid cell nudged to the lowest color gradient in its 3x3
// neighborhood.
std::vector<kernels::SlicCenter> seed_centers(const LabFrame& lab, const Grid& g) {
  std::vector<kernels::SlicCenter> centers;
  centers.reserve(static_cast<std::size_t>(g.nx) * g.ny);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int cx = std::min(static_cast<int>((i + 0.5) * g.sx), lab.width - 1);
      const int cy = std::min(static_cast<int>((j + 0.5) * g.sy), lab.height - 1);
      int bx = cx;
      int by = cy;
      float best = std::numeric_limits<float>::max();
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int x = cx + dx;
          const int y = cy + dy;
          if (x < 0 || y < 0 || x >= lab.width || y >= lab.height) continue;
          const float grad = color_gradient(lab, x, y);
          if (grad < best) {
            best = grad;
            bx = x;
            by = y;
          }
        }
      }
      const std::size_t p = flat(bx, by, lab.width);
      centers.push_back({lab.l[p], lab.a[p], lab.b[p], static_cast<float>(bx),
                         static_cast<float>(by)});
    }
  }
  return centers;
}

}  // namespace

LabColor srgb_to_lab(Rgb c) {
  const auto& lin = srgb_linear_table();
  const double r = lin[c.r];
  const double g = lin[c.g];
  const double b = lin[c.b];
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
  const double fx = lab_f(x / 0.95047);
  const double fy = lab_f(y / 1.00000);
  const double fz = lab_f(z / 1.08883);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LabFrame to_lab(const ColorFrame& frame) {
  LabFrame lab;
  lab.width = frame.width();
  lab.height = frame.height();
  const std::size_t n = frame.size();
  lab.l.resize(n);
  lab.a.resize(n);
  lab.b.resize(n);
  // Neighboring pixels often repeat a color exactly; reuse the last result.
  Rgb last{};
  LabColor last_lab = srgb_to_lab(last);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(frame[i] == last)) {
      last = frame[i];
      last_lab = srgb_to_lab(last);
    }
    lab.l[i] = static_cast<float>(last_lab.l);
    lab.a[i] = static_cast<float>(last_lab.a);
    lab.b[i] = static_cast<float>(last_lab.b);
  }
  return lab;
}

void SlicParams::validate() const {
  if (!(sigma_n >= 2.0)) {
    throw Error(ErrorKind::kInvalidConfig, "sigma_n must be at least 2");
  }
  if (!(compactness > 0.0)) {
    throw Error(ErrorKind::kInvalidConfig, "compactness must be positive");
  }
  if (max_iterations < 1) {
    throw Error(ErrorKind::kInvalidConfig, "max_iterations must be positive");
  }
  if (!(convergence_px >= 0.0)) {
    throw Error(ErrorKind::kInvalidConfig, "convergence threshold must be >= 0");
  }
}

int adaptive_superpixel_size(int width, int height, double sigma_n) {
  if (width < 1 || height < 1 || !(sigma_n > 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "bad superpixel size arguments");
  }
  const int size = static_cast<int>(std::floor(std::min(width, height) / sigma_n));
  return std::max(size, 2);
}

double slic_distance(const SlicPoint& p, const SlicPoint& q, double superpixel_size,
                     double compactness) {
  const double dc2 = (p.l - q.l) * (p.l - q.l) + (p.a - q.a) * (p.a - q.a) +
                     (p.b - q.b) * (p.b - q.b);
  const double ds2 = (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y);
  return std::sqrt(dc2 + ds2 / (superpixel_size * superpixel_size) *
                             compactness * compactness);
}

SuperpixelLabeling segment(const ColorFrame& frame, const SlicParams& params) {
  return segment(to_lab(frame), params);
}

SuperpixelLabeling segment(const LabFrame& lab, const SlicParams& params) {
  params.validate();
  const int w = lab.width;
  const int h = lab.height;
  const int step = adaptive_superpixel_size(w, h, params.sigma_n);
  if (std::min(w, h) < 2 * step) {
    throw Error(ErrorKind::kInvalidInput,
                "frame " + std::to_string(w) + "x" + std::to_string(h) +
                    " is smaller than one superpixel grid cell");
  }
  const Grid grid = seed_grid(w, h, step);
  std::vector<kernels::SlicCenter> centers = seed_centers(lab, grid);
  const auto count = static_cast<std::int32_t>(centers.size());

  SuperpixelLabeling out;
  out.width = w;
  out.height = h;
  out.superpixel_size = step;
  out.labels.resize(static_cast<std::size_t>(w) * h);
  // Pixels no window reaches keep the label of the grid cell they sit in.
  for (int y = 0; y < h; ++y) {
    const int j = std::min(static_cast<int>(y / grid.sy), grid.ny - 1);
    for (int x = 0; x < w; ++x) {
      const int i = std::min(static_cast<int>(x / grid.sx), grid.nx - 1);
      out.labels[flat(x, y, w)] = j * grid.nx + i;
    }
  }

  const auto& k = kernels::active_kernels();
  const float spatial_weight =
      static_cast<float>(params.compactness * params.compactness / (step * step));
  std::vector<float> best(out.labels.size());
  struct Accum {
    double l = 0, a = 0, b = 0, x = 0, y = 0;
    std::int64_t n = 0;
  };
  std::vector<Accum> acc(centers.size());

  for (int iter = 0; iter < params.max_iterations; ++iter) {
    std::fill(best.begin(), best.end(), std::numeric_limits<float>::infinity());
    for (std::int32_t c = 0; c < count; ++c) {
      const kernels::SlicCenter& ctr = centers[c];
      const int cx = static_cast<int>(std::lround(ctr.x));
      const int cy = static_cast<int>(std::lround(ctr.y));
      const int x0 = std::max(cx - step, 0);
      const int x1 = std::min(cx + step, w - 1);
      const int y0 = std::max(cy - step, 0);
      const int y1 = std::min(cy + step, h - 1);
      if (x0 > x1 || y0 > y1) continue;
      const auto span = static_cast<std::size_t>(x1 - x0 + 1);
      for (int y = y0; y <= y1; ++y) {
        const float dy = static_cast<float>(y) - ctr.y;
        const std::size_t p = flat(x0, y, w);
        k.slic_assign_span(lab.l.data() + p, lab.a.data() + p, lab.b.data() + p,
                           x0, span, dy * dy, ctr, spatial_weight, c,
                           best.data() + p, out.labels.data() + p);
      }
    }

    std::fill(acc.begin(), acc.end(), Accum{});
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t p = flat(x, y, w);
        Accum& s = acc[out.labels[p]];
        s.l += lab.l[p];
        s.a += lab.a[p];
        s.b += lab.b[p];
        s.x += x;
        s.y += y;
        ++s.n;
      }
    }
    double moved = 0.0;
    for (std::int32_t c = 0; c < count; ++c) {
      const Accum& s = acc[c];
      if (s.n == 0) continue;
      const double inv = 1.0 / static_cast<double>(s.n);
      kernels::SlicCenter next{static_cast<float>(s.l * inv),
                               static_cast<float>(s.a * inv),
                               static_cast<float>(s.b * inv),
                               static_cast<float>(s.x * inv),
                               static_cast<float>(s.y * inv)};
      moved += std::hypot(next.x - centers[c].x, next.y - centers[c].y);
      centers[c] = next;
    }
    if (moved / count < params.convergence_px) break;
  }

  enforce_connectivity(out, step * step / 4);
  return out;
}

void enforce_connectivity(SuperpixelLabeling& labeling, int min_size) {
  const int w = labeling.width;
  const int h = labeling.height;
  const std::size_t n = labeling.labels.size();
  const std::vector<std::int32_t>& labels = labeling.labels;

  // Flood-fill 4-connected components in scan order. Pixels of component c
  // are members[offsets[c] .. offsets[c + 1]).
  std::vector<std::int32_t> component(n, -1);
  std::vector<std::int32_t> members;
  members.reserve(n);
  std::vector<std::size_t> offsets{0};
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (component[seed] >= 0) continue;
    const auto id = static_cast<std::int32_t>(offsets.size() - 1);
    const std::int32_t label = labels[seed];
    component[seed] = id;
    std::size_t head = members.size();
    members.push_back(static_cast<std::int32_t>(seed));
    while (head < members.size()) {
      const std::int32_t p = members[head++];
      const int x = p % w;
      const int y = p / w;
      const std::array<std::int32_t, 4> nbrs{
          x > 0 ? p - 1 : -1, x + 1 < w ? p + 1 : -1, y > 0 ? p - w : -1,
          y + 1 < h ? p + w : -1};
      for (const std::int32_t q : nbrs) {
        if (q >= 0 && component[q] < 0 && labels[q] == label) {
          component[q] = id;
          members.push_back(q);
        }
      }
    }
    offsets.push_back(members.size());
  }
  const auto components = static_cast<std::int32_t>(offsets.size() - 1);

  std::vector<std::int32_t> parent(components);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::int32_t c) {
    while (parent[c] != c) {
      parent[c] = parent[parent[c]];
      c = parent[c];
    }
    return c;
  };

  std::vector<std::int32_t> border_count;
  std::vector<std::int32_t> touched;
  border_count.assign(components, 0);
  for (std::int32_t c = 0; c < components; ++c) {
    const auto size = static_cast<int>(offsets[c + 1] - offsets[c]);
    if (size >= min_size) continue;
    const std::int32_t self = find(c);
    touched.clear();
    for (std::size_t m = offsets[c]; m < offsets[c + 1]; ++m) {
      const std::int32_t p = members[m];
      const int x = p % w;
      const int y = p / w;
      const std::array<std::int32_t, 4> nbrs{
          x > 0 ? p - 1 : -1, x + 1 < w ? p + 1 : -1, y > 0 ? p - w : -1,
          y + 1 < h ? p + w : -1};
      for (const std::int32_t q : nbrs) {
        if (q < 0 || component[q] == c) continue;
        const std::int32_t root = find(component[q]);
        if (root == self) continue;
        if (border_count[root]++ == 0) touched.push_back(root);
      }
    }
    std::int32_t target = -1;
    for (const std::int32_t r : touched) {
      if (target < 0 || border_count[r] > border_count[target] ||
          (border_count[r] == border_count[target] && r < target)) {
        target = r;
      }
    }
    for (const std::int32_t r : touched) border_count[r] = 0;
    if (target >= 0) parent[self] = target;
  }

  std::vector<std::int32_t> compact(components, -1);
  std::int32_t next = 0;
  for (std::size_t p = 0; p < n; ++p) {
    const std::int32_t root = find(component[p]);
    if (compact[root] < 0) compact[root] = next++;
    labeling.labels[p] = compact[root];
  }
  labeling.region_count = next;
}

}  // namespace bginit
