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

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace physiq {

/// Dense row-major pixel plane, the storage unit behind frames, masks and
/// motion maps. Row index is y, column index is x.
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using PlaneU8 = Plane<std::uint8_t>;
using PlaneF = Plane<float>;

/// One RGB frame with 8-bit channels stored as three planes.
struct Frame {
  PlaneU8 r, g, b;

  static constexpr int kChannels = 3;

  Frame() = default;

  /// Black frame of the given size.
  Frame(int width, int height)
      : r(PlaneU8::Zero(height, width)),
        g(PlaneU8::Zero(height, width)),
        b(PlaneU8::Zero(height, width)) {}

  Frame(PlaneU8 red, PlaneU8 green, PlaneU8 blue)
      : r(std::move(red)), g(std::move(green)), b(std::move(blue)) {
    if (g.rows() != r.rows() || g.cols() != r.cols() || b.rows() != r.rows() ||
        b.cols() != r.cols()) {
      throw std::invalid_argument("Frame: channel planes must share dimensions");
    }
  }

  int width() const { return static_cast<int>(r.cols()); }
  int height() const { return static_cast<int>(r.rows()); }

  const PlaneU8& channel(int c) const {
    switch (c) {
      case 0: return r;
      case 1: return g;
      case 2: return b;
      default: throw std::out_of_range("Frame: channel index");
    }
  }
  PlaneU8& channel(int c) {
    return const_cast<PlaneU8&>(static_cast<const Frame&>(*this).channel(c));
  }

  bool same_shape(const Frame& o) const {
    return width() == o.width() && height() == o.height();
  }

  bool operator==(const Frame& o) const {
    return same_shape(o) && (r == o.r).all() && (g == o.g).all() && (b == o.b).all();
  }
};

/// Ordered list of frames plus frame rate. Immutable by convention once
/// constructed; all operations on sequences are pure functions.
struct FrameSequence {
  std::vector<Frame> frames;
  double fps = 0.0;

  // Optional sidecar metadata; empty / -1 when unset.
  std::string scenario_id;
  int switch_index = -1;

  FrameSequence() = default;

  FrameSequence(std::vector<Frame> frames_in, double fps_in)
      : frames(std::move(frames_in)), fps(fps_in) {
    validate();
  }

  int frame_count() const { return static_cast<int>(frames.size()); }
  int width() const { return frames.empty() ? 0 : frames.front().width(); }
  int height() const { return frames.empty() ? 0 : frames.front().height(); }
  double duration_seconds() const { return frame_count() / fps; }

  /// Enforces the sequence invariants: at least one frame, positive finite
  /// fps, homogeneous frame dimensions. Throws std::invalid_argument.
  void validate() const {
    if (frames.empty()) {
      throw std::invalid_argument("FrameSequence: at least one frame required");
    }
    if (!(fps > 0.0) || !std::isfinite(fps)) {
      throw std::invalid_argument("FrameSequence: fps must be positive and finite");
    }
    const Frame& first = frames.front();
    if (first.width() <= 0 || first.height() <= 0) {
      throw std::invalid_argument("FrameSequence: frames must be non-empty");
    }
    for (const Frame& f : frames) {
      if (!f.same_shape(first)) {
        throw std::invalid_argument("FrameSequence: inhomogeneous frame sizes");
      }
    }
  }
};

/// Rounding used for frame counts derived from durations (half away from zero).
inline long long round_count(double x) { return std::llround(x); }

/// Quantizes a float intensity back to 8 bits, rounding half to even and
/// clamping to [0, 255]. Relies on the default FE_TONEAREST rounding mode.
inline std::uint8_t quantize_u8(float v) {
  float r = std::nearbyintf(v);
  if (r < 0.0f) r = 0.0f;
  if (r > 255.0f) r = 255.0f;
  return static_cast<std::uint8_t>(r);
}

/// Placement of the conditioning/test split. `switch_index` is the 0-based
/// index of the last conditioning frame in the sequence's own frame rate.
struct SplitSpec {
  int switch_index = -1;
  double conditioning_seconds = 3.0;
  double test_seconds = 5.0;

  int conditioning_frames(double fps) const {
    return static_cast<int>(round_count(conditioning_seconds * fps));
  }
  int test_frames(double fps) const {
    return static_cast<int>(round_count(test_seconds * fps));
  }

  /// Checks this placement against a concrete sequence:
  /// switch_index = round(conditioning_seconds * fps) - 1 and the test
  /// segment must fit behind it.
  void validate(const FrameSequence& seq) const {
    const int cond = conditioning_frames(seq.fps);
    if (switch_index != cond - 1) {
      throw std::invalid_argument(
          "SplitSpec: switch_index " + std::to_string(switch_index) +
          " does not equal round(conditioning_seconds * fps) - 1 = " +
          std::to_string(cond - 1));
    }
    if (switch_index + 1 + test_frames(seq.fps) > seq.frame_count()) {
      throw std::invalid_argument(
          "SplitSpec: sequence too short for " +
          std::to_string(conditioning_seconds) + " s + " +
          std::to_string(test_seconds) + " s at fps " + std::to_string(seq.fps));
    }
  }
};

}  // namespace physiq
