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

#include "physiq/bench.hpp"
#include "physiq/metrics.hpp"
#include "physiq/motionmask.hpp"
#include "physiq/types.hpp"

namespace physiq::synth {

enum class Kind {
  kStatic,
  kTranslatingSquare,
  kFallingBall,
  kPendulum,
  kDiffusingBlob,
};

std::string kind_str(Kind k);
Kind parse_kind(const std::string& s);

/// Deterministic synthetic scenario. Objects render at intensity 200 on a
/// black background with hard (anti-aliasing-free) rasterization, so the
/// analytic footprints are exact pixel sets.
struct SynthSpec {
  Kind kind = Kind::kTranslatingSquare;
  double duration_seconds = 8.0;
  double fps = 8.0;
  int width = 64;
  int height = 64;

  int object_size = 16;  // square side, ball/bob/initial-blob diameter
  int start_x = 0;       // square top-left / disc center / pendulum pivot
  int start_y = 24;

  double velocity = 5.0;           // px/s, translating square
  double gravity = 1.25;           // px/s^2, falling ball
  double angular_amplitude = 0.7;  // rad, pendulum
  double angular_period = 3.0;     // s
  double arm_length = 24.0;        // px, pendulum
  double rod_half_width = 2.0;     // px, pendulum
  double growth_rate = 2.0;        // px/s, diffusing blob

  std::uint64_t noise_seed = 0;
  double noise_amplitude = 0.0;  // 0 = takes identical; 1 = +-2 px, +-5 % jitter

  void validate() const;
  int frame_count() const { return static_cast<int>(round_count(duration_seconds * fps)); }
};

/// A canonical spec per kind for the given canvas; the shared fixture behind
/// the mini benchmark and the pipeline tests.
SynthSpec default_spec(Kind kind, double fps = 8.0, int size = 64,
                       double duration_seconds = 8.0, std::uint64_t noise_seed = 0,
                       double noise_amplitude = 0.0);

/// Renders one take. Take 1 follows the spec exactly; take 2 re-renders with
/// seeded trajectory jitter (initial position up to +-2 px, rate parameters
/// up to +-5 %, both scaled by noise_amplitude). Bit-reproducible across runs.
/// Throws when the object would leave the frame.
FrameSequence render_scenario(const SynthSpec& spec, int take);

/// Exact analytic footprint of the object in one frame of take 1.
PlaneU8 footprint(const SynthSpec& spec, int frame_index);

/// Analytic per-frame motion footprints over the 3 s / 5 s test segment as a
/// mask video; requires a noise-free spec. Rigid movers contribute their full
/// footprint, the diffusing blob only its newly covered rim (the interior
/// never changes intensity), static scenes nothing.
MaskVideo oracle_footprint_video(const SynthSpec& spec);

/// Union of the analytic motion footprints over the test segment; the blur-
/// and lag-free ground truth for the motion-mask pipeline. Requires a
/// noise-free spec; static scenes yield an empty map.
MotionMap oracle_motion_map(const SynthSpec& spec);

/// Brute-force metric enumeration over two mask videos (or motion maps):
/// every metric is computed by naive full scans with no shortcuts, as the
/// independent comparator for the metrics module. Inputs are capped at
/// 32 x 32 x 16.
std::vector<MetricValue> oracle_metrics(const MaskVideo& a, const MaskVideo& b);
std::vector<MetricValue> oracle_metrics(const MotionMap& a, const MotionMap& b);

/// Seeded uniform pixel noise in [-amplitude, amplitude], clamped to [0, 255];
/// the standard corruption used by degradation tests.
FrameSequence corrupt_with_noise(const FrameSequence& seq, double amplitude,
                                 std::uint64_t seed);

/// Renders the desk-scale benchmark: 5 scenarios (one per kind) x 1
/// perspective x 2 takes under `out_dir`, with a ready-to-validate
/// dataset.json. Returns the manifest.
struct MiniBenchmarkOptions {
  std::uint64_t seed = 1;
  double noise_amplitude = 0.5;
  double fps = 8.0;
  int size = 64;
  double duration_seconds = 8.0;
};
bench::DatasetManifest generate_mini_benchmark(const MiniBenchmarkOptions& options,
                                               const std::filesystem::path& out_dir);

}  // namespace physiq::synth
