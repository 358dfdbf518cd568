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

#pragma once

#include <filesystem>

#include "physiq/types.hpp"

namespace physiq {

/// Parameters of the background-subtraction mask pipeline. The defaults are
/// conventional settings; the reference values behind the pipeline are not
/// published, so every knob is exposed through configuration.
struct MaskParams {
  float tau = 25.0f;        // intensity-difference threshold, [0, 255]
  float alpha = 0.05f;      // background update rate, (0, 1)
  int window = 5;           // frames averaged into the initial background
  int blur_radius = 2;      // Gaussian taps = 2 * radius + 1
  float blur_sigma = 1.5f;
  int morph_kernel = 3;     // square structuring element side

  void validate() const {
    if (!(tau > 0.0f) || tau > 255.0f)
      throw std::invalid_argument("MaskParams: tau must be in (0, 255]");
    if (!(alpha > 0.0f) || !(alpha < 1.0f))
      throw std::invalid_argument("MaskParams: alpha must be in (0, 1)");
    if (window < 1) throw std::invalid_argument("MaskParams: window must be >= 1");
    if (blur_radius < 0)
      throw std::invalid_argument("MaskParams: blur_radius must be >= 0");
    if (!(blur_sigma > 0.0f))
      throw std::invalid_argument("MaskParams: blur_sigma must be positive");
    if (morph_kernel < 1)
      throw std::invalid_argument("MaskParams: morph_kernel must be >= 1");
  }
};

/// Binary h x w x t motion-mask volume; plane values are 0 or 1.
struct MaskVideo {
  std::vector<PlaneU8> frames;

  int frame_count() const { return static_cast<int>(frames.size()); }
  int width() const { return frames.empty() ? 0 : static_cast<int>(frames.front().cols()); }
  int height() const { return frames.empty() ? 0 : static_cast<int>(frames.front().rows()); }

  void validate() const {
    for (const PlaneU8& f : frames) {
      if (f.rows() != frames.front().rows() || f.cols() != frames.front().cols())
        throw std::invalid_argument("MaskVideo: inhomogeneous mask sizes");
      if ((f > std::uint8_t{1}).any())
        throw std::invalid_argument("MaskVideo: values must be 0 or 1");
    }
  }
};

enum class MapKind { kBinary, kWeighted };

/// h x w spatial collapse of a mask video. Binary maps hold {0, 1}; weighted
/// maps hold per-pixel activity fractions in [0, 1].
struct MotionMap {
  MapKind kind = MapKind::kBinary;
  PlaneF data;

  int width() const { return static_cast<int>(data.cols()); }
  int height() const { return static_cast<int>(data.rows()); }
};

/// ITU-R BT.601 luma of an RGB frame (0.299 R + 0.587 G + 0.114 B).
PlaneF to_gray(const Frame& frame);

/// Separable Gaussian blur with edge replication.
PlaneF gaussian_blur(const PlaneF& in, int radius, float sigma);

/// Binary erosion / dilation with a square structuring element and edge
/// replication. Exposed for tests; compute_mask_video composes them into the
/// opening + closing cleanup step.
PlaneU8 erode(const PlaneU8& mask, int kernel);
PlaneU8 dilate(const PlaneU8& mask, int kernel);

/// Generates the binary motion-mask video for a sequence: per frame grayscale
/// + blur, running-average background (seeded with the mean of the first
/// `window` preprocessed frames), |frame - background| > tau thresholding and
/// morphological opening then closing. Emits one mask frame per input frame,
/// including the warm-up window.
MaskVideo compute_mask_video(const FrameSequence& seq, const MaskParams& params);

/// Max over time: output(x, y) = max_t mask(x, y, t).
MotionMap collapse_spatial(const MaskVideo& mask);

/// Mean over time: output(x, y) = (1/t) sum_t mask(x, y, t).
MotionMap collapse_weighted(const MaskVideo& mask);

/// Mask-video storage: the frame-sequence directory layout with 1-channel
/// binary PNGs (0 / 255) plus meta.json.
MaskVideo load_mask_video(const std::filesystem::path& dir);
void save_mask_video(const MaskVideo& mask, double fps,
                     const std::filesystem::path& dir);

}  // namespace physiq
