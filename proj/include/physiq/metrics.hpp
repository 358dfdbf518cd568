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

#include <optional>
#include <string>

#include "physiq/motionmask.hpp"
#include "physiq/types.hpp"

namespace physiq {

enum class MetricName {
  kSpatialIou,
  kSpatiotemporalIou,
  kWeightedSpatialIou,
  kMse,
};

enum class Direction { kHigherBetter, kLowerBetter };

/// Spatiotemporal IoU mode: `kVolume` evaluates one IoU over the full 3D
/// volume; `kFrameMean` averages per-frame IoUs across t (empty-union frames
/// count as 1.0).
enum class StMode { kVolume, kFrameMean };

struct MetricValue {
  MetricName name;
  double value = 0.0;
  Direction direction = Direction::kHigherBetter;
  std::optional<StMode> mode;  // set for spatiotemporal IoU only
};

std::string metric_name_str(MetricName name);
std::string st_mode_str(StMode mode);
StMode parse_st_mode(const std::string& s);

/// |a intersect b| / |a union b| over two binary motion maps. Two empty maps
/// agree that nothing moved and score 1.0.
MetricValue spatial_iou(const MotionMap& a, const MotionMap& b);

/// IoU of two mask videos, in the configured mode.
MetricValue spatiotemporal_iou(const MaskVideo& a, const MaskVideo& b,
                               StMode mode = StMode::kVolume);

/// sum_i min(a_i, b_i) / sum_i max(a_i, b_i) over two weighted motion maps;
/// 1.0 when both maps are all-zero.
MetricValue weighted_spatial_iou(const MotionMap& a, const MotionMap& b);

/// Mean squared error over two frame sequences with intensities scaled to
/// [0, 1], averaged over every frame, pixel and channel.
MetricValue mse(const FrameSequence& a, const FrameSequence& b);

/// Brings a real test segment and a generated continuation onto common
/// footing: the real segment is resampled to the generated sequence's frame
/// rate and resolution, then both are truncated to
/// min(compare_seconds, both durations).
struct AlignedPair {
  FrameSequence real;
  FrameSequence generated;
};
AlignedPair align_for_comparison(const FrameSequence& real_test,
                                 const FrameSequence& generated,
                                 double compare_seconds = 5.0);

}  // namespace physiq
