// Copyright 2026 The physiq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "physiq/motionmask.hpp"

#include <cmath>
#include <cstdio>

#include "physiq/png_io.hpp"
#include "json_util.hpp"

namespace physiq {

namespace {

inline int clamp_index(int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); }

// Morphology helper: min or max over the kernel window, edge replicated.
// Even kernels anchor at k/2 like the common convention.
template <typename Op>
PlaneU8 morph(const PlaneU8& mask, int kernel, Op op, std::uint8_t init) {
  const int h = static_cast<int>(mask.rows());
  const int w = static_cast<int>(mask.cols());
  const int lo = -((kernel - 1) / 2);
  const int hi = kernel / 2;
  PlaneU8 out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint8_t v = init;
      for (int dy = lo; dy <= hi; ++dy) {
        const int yy = clamp_index(y + dy, h - 1);
        for (int dx = lo; dx <= hi; ++dx) {
          const int xx = clamp_index(x + dx, w - 1);
          v = op(v, mask(yy, xx));
        }
      }
      out(y, x) = v;
    }
  }
  return out;
}

}  // namespace

PlaneF to_gray(const Frame& frame) {
  return 0.299f * frame.r.cast<float>() + 0.587f * frame.g.cast<float>() +
         0.114f * frame.b.cast<float>();
}

PlaneF gaussian_blur(const PlaneF& in, int radius, float sigma) {
  if (radius == 0) return in;
  std::vector<float> kernel(2 * radius + 1);
  float sum = 0.0f;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-static_cast<float>(i * i) / (2.0f * sigma * sigma));
    sum += kernel[i + radius];
  }
  for (float& k : kernel) k /= sum;

  const int h = static_cast<int>(in.rows());
  const int w = static_cast<int>(in.cols());
  PlaneF tmp = PlaneF::Zero(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      float acc = 0.0f;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[i + radius] * in(y, clamp_index(x + i, w - 1));
      }
      tmp(y, x) = acc;
    }
  }
  PlaneF out = PlaneF::Zero(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      float acc = 0.0f;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[i + radius] * tmp(clamp_index(y + i, h - 1), x);
      }
      out(y, x) = acc;
    }
  }
  return out;
}

PlaneU8 erode(const PlaneU8& mask, int kernel) {
  return morph(mask, kernel, [](std::uint8_t a, std::uint8_t b) { return std::min(a, b); },
               std::uint8_t{1});
}

PlaneU8 dilate(const PlaneU8& mask, int kernel) {
  return morph(mask, kernel, [](std::uint8_t a, std::uint8_t b) { return std::max(a, b); },
               std::uint8_t{0});
}

MaskVideo compute_mask_video(const FrameSequence& seq, const MaskParams& params) {
  seq.validate();
  params.validate();
  if (seq.frame_count() < params.window) {
    throw std::invalid_argument(
        "compute_mask_video: sequence shorter than the averaging window");
  }

  std::vector<PlaneF> pre;
  pre.reserve(seq.frame_count());
  for (const Frame& f : seq.frames) {
    pre.push_back(gaussian_blur(to_gray(f), params.blur_radius, params.blur_sigma));
  }

  // Background and difference stay in floating point; the threshold is the
  // only binarization step.
  PlaneF background = pre[0];
  for (int i = 1; i < params.window; ++i) {
    background += pre[i];
  }
  background /= static_cast<float>(params.window);

  MaskVideo out;
  out.frames.reserve(seq.frame_count());
  for (const PlaneF& f : pre) {
    background = (1.0f - params.alpha) * background + params.alpha * f;
    PlaneU8 mask = ((f - background).abs() > params.tau).cast<std::uint8_t>();
    mask = dilate(erode(mask, params.morph_kernel), params.morph_kernel);  // opening
    mask = erode(dilate(mask, params.morph_kernel), params.morph_kernel);  // closing
    out.frames.push_back(std::move(mask));
  }
  return out;
}

MotionMap collapse_spatial(const MaskVideo& mask) {
  MotionMap map;
  map.kind = MapKind::kBinary;
  if (mask.frames.empty()) return map;
  PlaneU8 acc = mask.frames.front();
  for (const PlaneU8& f : mask.frames) {
    acc = acc.max(f);
  }
  map.data = acc.cast<float>();
  return map;
}

MotionMap collapse_weighted(const MaskVideo& mask) {
  MotionMap map;
  map.kind = MapKind::kWeighted;
  if (mask.frames.empty()) return map;
  PlaneF acc = PlaneF::Zero(mask.frames.front().rows(), mask.frames.front().cols());
  for (const PlaneU8& f : mask.frames) {
    acc += f.cast<float>();
  }
  map.data = acc / static_cast<float>(mask.frame_count());
  return map;
}

MaskVideo load_mask_video(const std::filesystem::path& dir) {
  nlohmann::json j = detail::read_json_file(dir / "meta.json");
  const int num_frames = j.at("num_frames").get<int>();
  MaskVideo mask;
  mask.frames.reserve(num_frames);
  for (int i = 0; i < num_frames; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%06d.png", i);
    std::filesystem::path file = dir / buf;
    if (!std::filesystem::exists(file)) {
      throw std::runtime_error("frame count mismatch in mask video " + dir.string());
    }
    PlaneU8 plane = read_png_gray(file);
    mask.frames.push_back((plane >= std::uint8_t{128}).cast<std::uint8_t>());
  }
  mask.validate();
  return mask;
}

void save_mask_video(const MaskVideo& mask, double fps,
                     const std::filesystem::path& dir) {
  mask.validate();
  std::filesystem::create_directories(dir);
  for (int i = 0; i < mask.frame_count(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%06d.png", i);
    PlaneU8 scaled = (mask.frames[i] * std::uint8_t{255}).eval();
    write_png_gray(dir / buf, scaled);
  }
  nlohmann::json j;
  j["fps"] = fps;
  j["width"] = mask.width();
  j["height"] = mask.height();
  j["num_frames"] = mask.frame_count();
  j["channels"] = 1;
  detail::write_json_file(dir / "meta.json", j);
}

}  // namespace physiq
