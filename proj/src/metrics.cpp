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

#include "bginit/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <vector>

#include "bginit/imaging.hpp"
#include "json.hpp"

namespace bginit {
namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr std::array<double, 5> kScaleWeights = {0.0448, 0.2856, 0.3001, 0.2363, 0.1333};

struct GrayPair {
  GrayFrame gt;
  GrayFrame est;
};

GrayPair gray_pair(const ColorFrame& gt, const ColorFrame& est, const char* what) {
  require_same_shape(gt, est, what);
  return {to_gray(gt), to_gray(est)};
}

double psnr_from_mse(double mse) {
  if (mse <= 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

// Error-pixel map: 1 where |gt - est| > tau.
std::vector<std::uint8_t> error_pixels(const GrayPair& g, int tau) {
  std::vector<std::uint8_t> ep(g.gt.size());
  for (std::size_t p = 0; p < ep.size(); ++p) {
    ep[p] = std::abs(static_cast<int>(g.gt[p]) - static_cast<int>(g.est[p])) > tau;
  }
  return ep;
}

// Dense double-precision plane for the SSIM stages.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> v;

  double at(int x, int y) const { return v[static_cast<std::size_t>(y) * width + x]; }
};

Plane to_plane(const GrayFrame& g) {
  Plane p{g.width(), g.height(), std::vector<double>(g.size())};
  for (std::size_t i = 0; i < g.size(); ++i) p.v[i] = g[i];
  return p;
}

// 2x2 box average followed by keeping every other sample, replicating the
// last row/column for odd sizes.
Plane downsample(const Plane& in) {
  Plane out{(in.width + 1) / 2, (in.height + 1) / 2, {}};
  out.v.resize(static_cast<std::size_t>(out.width) * out.height);
  for (int y = 0; y < out.height; ++y) {
    const int y0 = 2 * y;
    const int y1 = std::min(2 * y + 1, in.height - 1);
    for (int x = 0; x < out.width; ++x) {
      const int x0 = 2 * x;
      const int x1 = std::min(2 * x + 1, in.width - 1);
      out.v[static_cast<std::size_t>(y) * out.width + x] =
          0.25 * (in.at(x0, y0) + in.at(x1, y0) + in.at(x0, y1) + in.at(x1, y1));
    }
  }
  return out;
}

std::array<double, kSsimWindow> ssim_window() {
  std::array<double, kSsimWindow> w{};
  double sum = 0.0;
  for (int k = 0; k < kSsimWindow; ++k) {
    const double d = k - kSsimWindow / 2;
    w[k] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
    sum += w[k];
  }
  for (double& x : w) x /= sum;
  return w;
}

// Gaussian-weighted local mean over the valid region (window fully inside).
Plane filter_valid(const Plane& in) {
  static const auto w = ssim_window();
  const int ow = in.width - kSsimWindow + 1;
  const int oh = in.height - kSsimWindow + 1;
  Plane tmp{ow, in.height, std::vector<double>(static_cast<std::size_t>(ow) * in.height)};
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) acc += w[k] * in.at(x + k, y);
      tmp.v[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  Plane out{ow, oh, std::vector<double>(static_cast<std::size_t>(ow) * oh)};
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) acc += w[k] * tmp.at(x, y + k);
      out.v[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

struct SsimTerms {
  double ssim = 0.0;  // mean of luminance * contrast-structure
  double cs = 0.0;    // mean of contrast-structure
};

SsimTerms ssim_terms(const Plane& a, const Plane& b) {
  constexpr double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  constexpr double c2 = (0.03 * 255.0) * (0.03 * 255.0);
  Plane aa = a, bb = b, ab = a;
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    aa.v[i] = a.v[i] * a.v[i];
    bb.v[i] = b.v[i] * b.v[i];
    ab.v[i] = a.v[i] * b.v[i];
  }
  const Plane mu_a = filter_valid(a);
  const Plane mu_b = filter_valid(b);
  const Plane e_aa = filter_valid(aa);
  const Plane e_bb = filter_valid(bb);
  const Plane e_ab = filter_valid(ab);
  double ssim_sum = 0.0;
  double cs_sum = 0.0;
  const std::size_t n = mu_a.v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double ma = mu_a.v[i];
    const double mb = mu_b.v[i];
    const double va = e_aa.v[i] - ma * ma;
    const double vb = e_bb.v[i] - mb * mb;
    const double cov = e_ab.v[i] - ma * mb;
    const double cs = (2.0 * cov + c2) / (va + vb + c2);
    const double lum = (2.0 * ma * mb + c1) / (ma * ma + mb * mb + c1);
    ssim_sum += lum * cs;
    cs_sum += cs;
  }
  return {ssim_sum / static_cast<double>(n), cs_sum / static_cast<double>(n)};
}

}  // namespace

double age(const ColorFrame& gt, const ColorFrame& est) {
  const GrayPair g = gray_pair(gt, est, "age");
  std::uint64_t sum = 0;
  for (std::size_t p = 0; p < g.gt.size(); ++p) {
    sum += static_cast<std::uint64_t>(std::abs(static_cast<int>(g.gt[p]) - g.est[p]));
  }
  return static_cast<double>(sum) / static_cast<double>(g.gt.size());
}

double peps(const ColorFrame& gt, const ColorFrame& est, int tau) {
  const std::vector<std::uint8_t> ep = error_pixels(gray_pair(gt, est, "peps"), tau);
  const auto count = std::count(ep.begin(), ep.end(), std::uint8_t{1});
  return static_cast<double>(count) / static_cast<double>(ep.size());
}

double pceps(const ColorFrame& gt, const ColorFrame& est, int tau) {
  const std::vector<std::uint8_t> ep = error_pixels(gray_pair(gt, est, "pceps"), tau);
  const int w = gt.width();
  const int h = gt.height();
  std::size_t count = 0;
  for (int y = 1; y + 1 < h; ++y) {
    for (int x = 1; x + 1 < w; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * w + x;
      if (ep[p] && ep[p - 1] && ep[p + 1] && ep[p - w] && ep[p + w]) ++count;
    }
  }
  return static_cast<double>(count) / static_cast<double>(ep.size());
}

double psnr(const ColorFrame& gt, const ColorFrame& est) {
  const GrayPair g = gray_pair(gt, est, "psnr");
  double sum = 0.0;
  for (std::size_t p = 0; p < g.gt.size(); ++p) {
    const double d = static_cast<double>(g.gt[p]) - g.est[p];
    sum += d * d;
  }
  return psnr_from_mse(sum / static_cast<double>(g.gt.size()));
}

int ms_ssim_scale_count(int width, int height) {
  int scales = 0;
  int w = width;
  int h = height;
  while (scales < static_cast<int>(kScaleWeights.size()) && std::min(w, h) >= kSsimWindow) {
    ++scales;
    w = (w + 1) / 2;
    h = (h + 1) / 2;
  }
  return scales;
}

double ms_ssim(const ColorFrame& gt, const ColorFrame& est) {
  const GrayPair g = gray_pair(gt, est, "ms-ssim");
  const int scales = ms_ssim_scale_count(gt.width(), gt.height());
  if (scales == 0) {
    throw Error(ErrorKind::kInvalidInput, "image too small for MS-SSIM (needs 11x11)");
  }
  double weight_sum = 0.0;
  for (int s = 0; s < scales; ++s) weight_sum += kScaleWeights[s];

  Plane a = to_plane(g.gt);
  Plane b = to_plane(g.est);
  double result = 1.0;
  for (int s = 0; s < scales; ++s) {
    const SsimTerms t = ssim_terms(a, b);
    const double weight = kScaleWeights[s] / weight_sum;
    const double term = s + 1 == scales ? t.ssim : t.cs;
    result *= std::pow(std::max(term, 0.0), weight);
    if (s + 1 < scales) {
      a = downsample(a);
      b = downsample(b);
    }
  }
  return std::clamp(result, 0.0, 1.0);
}

double cqm(const ColorFrame& gt, const ColorFrame& est) {
  require_same_shape(gt, est, "cqm");
  std::array<double, 3> sse{};
  for (std::size_t p = 0; p < gt.size(); ++p) {
    const Rgb a = gt[p];
    const Rgb b = est[p];
    const double dr = static_cast<double>(a.r) - b.r;
    const double dg = static_cast<double>(a.g) - b.g;
    const double db = static_cast<double>(a.b) - b.b;
    const double dy = 0.299 * dr + 0.587 * dg + 0.114 * db;
    const double du = -0.168736 * dr - 0.331264 * dg + 0.5 * db;
    const double dv = 0.5 * dr - 0.418688 * dg - 0.081312 * db;
    sse[0] += dy * dy;
    sse[1] += du * du;
    sse[2] += dv * dv;
  }
  const double n = static_cast<double>(gt.size());
  const double py = psnr_from_mse(sse[0] / n);
  const double pu = psnr_from_mse(sse[1] / n);
  const double pv = psnr_from_mse(sse[2] / n);
  return py * kCqmLumaWeight + 0.5 * (pu + pv) * kCqmChromaWeight;
}

MetricReport evaluate(const ColorFrame& gt, const ColorFrame& est) {
  return {age(gt, est), peps(gt, est), pceps(gt, est), psnr(gt, est), ms_ssim(gt, est),
          cqm(gt, est)};
}

std::string to_json(const MetricReport& r, const std::string& name) {
  const nlohmann::ordered_json j = {{"name", name},         {"age", r.age},
                                    {"peps", r.peps},       {"pceps", r.pceps},
                                    {"psnr", r.psnr},       {"ms_ssim", r.ms_ssim},
                                    {"cqm", r.cqm}};
  return j.dump(2);
}

MetricReport metric_report_from_json(const std::string& text, std::string* name) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (name != nullptr) *name = j.value("name", std::string{});
    return {j.at("age").get<double>(),  j.at("peps").get<double>(),
            j.at("pceps").get<double>(), j.at("psnr").get<double>(),
            j.at("ms_ssim").get<double>(), j.at("cqm").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kDecodeFailed, std::string("metric report: ") + e.what());
  }
}

std::string csv_header() { return "name,age,peps,pceps,psnr,ms_ssim,cqm"; }

std::string to_csv_row(const MetricReport& r, const std::string& name) {
  std::ostringstream os;
  os << std::setprecision(10) << name << ',' << r.age << ',' << r.peps << ',' << r.pceps
     << ',' << r.psnr << ',' << r.ms_ssim << ',' << r.cqm;
  return os.str();
}

}  // namespace bginit
