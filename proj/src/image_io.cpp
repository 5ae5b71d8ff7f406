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

#include "bginit/image_io.hpp"

#include <algorithm>
#include <cctype>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace fs = std::filesystem;

namespace bginit {
namespace {

bool is_frame_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
}

void write_mat(const fs::path& path, const cv::Mat& mat, const std::vector<int>& flags) {
  ensure_parent(path);
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), mat, flags);
  } catch (const cv::Exception& e) {
    throw Error(ErrorKind::kIo, "cannot write " + path.string() + ": " + e.what());
  }
  if (!ok) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

}  // namespace

ColorFrame read_image(const fs::path& path) {
  cv::Mat bgr;
  try {
    bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  } catch (const cv::Exception& e) {
    throw Error(ErrorKind::kDecodeFailed, "cannot decode " + path.string() + ": " + e.what());
  }
  if (bgr.empty() || bgr.type() != CV_8UC3) {
    throw Error(ErrorKind::kDecodeFailed, "cannot decode " + path.string());
  }
  ColorFrame out(bgr.cols, bgr.rows);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* src = bgr.ptr<cv::Vec3b>(y);
    auto row = out.row(y);
    for (int x = 0; x < bgr.cols; ++x) row[x] = {src[x][2], src[x][1], src[x][0]};
  }
  return out;
}

void write_png(const fs::path& path, const ColorFrame& image) {
  cv::Mat bgr(image.height(), image.width(), CV_8UC3);
  for (int y = 0; y < image.height(); ++y) {
    auto* dst = bgr.ptr<cv::Vec3b>(y);
    const auto row = image.row(y);
    for (int x = 0; x < image.width(); ++x) dst[x] = {row[x].b, row[x].g, row[x].r};
  }
  write_mat(path, bgr, {});
}

void write_png(const fs::path& path, const GrayFrame& image, bool bilevel) {
  cv::Mat gray(image.height(), image.width(), CV_8UC1);
  for (int y = 0; y < image.height(); ++y) {
    auto* dst = gray.ptr<std::uint8_t>(y);
    const auto row = image.row(y);
    for (int x = 0; x < image.width(); ++x) {
      dst[x] = bilevel ? (row[x] ? 255 : 0) : row[x];
    }
  }
  std::vector<int> flags;
  if (bilevel) flags = {cv::IMWRITE_PNG_BILEVEL, 1};
  write_mat(path, gray, flags);
}

std::vector<fs::path> list_frame_files(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorKind::kIo, "not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_frame_file(entry.path())) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  return files;
}

FrameSequence load_sequence(const fs::path& dir) {
  fs::path source = dir;
  std::error_code ec;
  if (fs::is_directory(dir / "input", ec)) source = dir / "input";
  const std::vector<fs::path> files = list_frame_files(source);
  if (files.empty()) {
    throw Error(ErrorKind::kEmptyInput, "no PNG/JPEG frames in " + source.string());
  }
  FrameSequence frames;
  frames.reserve(files.size());
  for (const fs::path& f : files) {
    ColorFrame frame = read_image(f);
    if (!frames.empty() && !frame.same_shape(frames.front())) {
      throw Error(ErrorKind::kDimensionMismatch,
                  f.string() + " is " + std::to_string(frame.width()) + "x" +
                      std::to_string(frame.height()) + ", expected " +
                      std::to_string(frames.front().width()) + "x" +
                      std::to_string(frames.front().height()));
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

}  // namespace bginit
