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
#include <optional>
#include <utility>

#include "physiq/types.hpp"

namespace physiq {

/// Target dimensions for an optional resize during resampling.
struct OutDims {
  int width = 0;
  int height = 0;
};

/// Loads a frame sequence from disk. Two layouts are supported:
///  - a directory holding `frame_000000.png ...` plus `meta.json`,
///  - a raw `.piqf` file (16-byte header: magic "PIQF", u32 width, u32
///    height, u32 frame count, little endian; then planar RGB8 frames) with
///    a `<stem>.meta.json` sidecar carrying fps and optional metadata.
/// Throws std::runtime_error on missing metadata, frame-count mismatches,
/// inhomogeneous frame sizes or unreadable images.
FrameSequence load_sequence(const std::filesystem::path& path);

/// Saves a sequence. A path ending in `.piqf` selects the raw format,
/// anything else is written as a PNG frame directory. Loading the result
/// reproduces frames bit-exact and fps exactly.
void save_sequence(const FrameSequence& seq, const std::filesystem::path& path);

/// Temporal resampling by linear interpolation between neighbouring frames,
/// optionally followed by a bilinear resize. The output holds
/// round(duration * fps_new) frames (at least one); frame j blends inputs i
/// and i+1 with weight beta where alpha = j*(n-1)/(n_new-1), i = floor(alpha),
/// beta = alpha - i. Arithmetic runs in floating point and is quantized back
/// to 8 bits once, at the end.
FrameSequence resample_fps(const FrameSequence& seq, double fps_new,
                           std::optional<OutDims> out_dims = std::nullopt);

/// Bilinear resize of a float plane using half-pixel centers with edge clamp.
PlaneF bilinear_resize(const PlaneF& in, int out_width, int out_height);

/// Splits a sequence at the switch frame: conditioning = frames
/// [0, switch_index], test = the following round(test_seconds * fps) frames.
std::pair<FrameSequence, FrameSequence> split_at_switch(const FrameSequence& seq,
                                                        const SplitSpec& spec);

}  // namespace physiq
