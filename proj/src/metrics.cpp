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

#include "physiq/metrics.hpp"

#include <algorithm>

#include "physiq/frameseq.hpp"

namespace physiq {

namespace {

void require_binary(const MotionMap& m, const char* who) {
  if (m.kind != MapKind::kBinary) {
    throw std::invalid_argument(std::string(who) + ": binary motion map required");
  }
  for (Eigen::Index y = 0; y < m.data.rows(); ++y) {
    for (Eigen::Index x = 0; x < m.data.cols(); ++x) {
      const float v = m.data(y, x);
      if (v != 0.0f && v != 1.0f) {
        throw std::invalid_argument(std::string(who) + ": non-binary input");
      }
    }
  }
}

void require_weighted(const MotionMap& m, const char* who) {
  if (m.kind != MapKind::kWeighted) {
    throw std::invalid_argument(std::string(who) + ": weighted motion map required");
  }
  if ((m.data < 0.0f).any() || (m.data > 1.0f).any()) {
    throw std::invalid_argument(std::string(who) + ": values outside [0, 1]");
  }
}

void require_same_shape(const MotionMap& a, const MotionMap& b, const char* who) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
}

// Single-frame intersection/union counts.
void iou_counts(const PlaneU8& a, const PlaneU8& b, long long& inter, long long& uni) {
  inter += ((a == std::uint8_t{1}) && (b == std::uint8_t{1})).count();
  uni += ((a == std::uint8_t{1}) || (b == std::uint8_t{1})).count();
}

}  // namespace

std::string metric_name_str(MetricName name) {
  switch (name) {
    case MetricName::kSpatialIou: return "spatial_iou";
    case MetricName::kSpatiotemporalIou: return "spatiotemporal_iou";
    case MetricName::kWeightedSpatialIou: return "weighted_spatial_iou";
    case MetricName::kMse: return "mse";
  }
  throw std::logic_error("metric_name_str: bad enum");
}

std::string st_mode_str(StMode mode) {
  return mode == StMode::kVolume ? "volume" : "frame_mean";
}

StMode parse_st_mode(const std::string& s) {
  if (s == "volume") return StMode::kVolume;
  if (s == "frame_mean" || s == "frame-mean") return StMode::kFrameMean;
  throw std::invalid_argument("unknown spatiotemporal mode: " + s);
}

MetricValue spatial_iou(const MotionMap& a, const MotionMap& b) {
  require_binary(a, "spatial_iou");
  require_binary(b, "spatial_iou");
  require_same_shape(a, b, "spatial_iou");
  long long inter = 0, uni = 0;
  for (Eigen::Index y = 0; y < a.data.rows(); ++y) {
    for (Eigen::Index x = 0; x < a.data.cols(); ++x) {
      const bool av = a.data(y, x) != 0.0f;
      const bool bv = b.data(y, x) != 0.0f;
      inter += (av && bv) ? 1 : 0;
      uni += (av || bv) ? 1 : 0;
    }
  }
  const double value =
      (uni == 0) ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
  return {MetricName::kSpatialIou, value, Direction::kHigherBetter, std::nullopt};
}

MetricValue spatiotemporal_iou(const MaskVideo& a, const MaskVideo& b, StMode mode) {
  a.validate();
  b.validate();
  if (a.frame_count() != b.frame_count() || a.width() != b.width() ||
      a.height() != b.height()) {
    throw std::invalid_argument("spatiotemporal_iou: dimension mismatch");
  }
  double value = 0.0;
  if (mode == StMode::kVolume) {
    long long inter = 0, uni = 0;
    for (int t = 0; t < a.frame_count(); ++t) {
      iou_counts(a.frames[t], b.frames[t], inter, uni);
    }
    value = (uni == 0) ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
  } else {
    double sum = 0.0;
    for (int t = 0; t < a.frame_count(); ++t) {
      long long inter = 0, uni = 0;
      iou_counts(a.frames[t], b.frames[t], inter, uni);
      sum += (uni == 0) ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
    }
    value = sum / static_cast<double>(a.frame_count());
  }
  return {MetricName::kSpatiotemporalIou, value, Direction::kHigherBetter, mode};
}

MetricValue weighted_spatial_iou(const MotionMap& a, const MotionMap& b) {
  require_weighted(a, "weighted_spatial_iou");
  require_weighted(b, "weighted_spatial_iou");
  require_same_shape(a, b, "weighted_spatial_iou");
  // Deterministic row-major accumulation in double.
  double min_sum = 0.0, max_sum = 0.0;
  for (Eigen::Index y = 0; y < a.data.rows(); ++y) {
    for (Eigen::Index x = 0; x < a.data.cols(); ++x) {
      min_sum += std::min(a.data(y, x), b.data(y, x));
      max_sum += std::max(a.data(y, x), b.data(y, x));
    }
  }
  const double value = (max_sum == 0.0) ? 1.0 : min_sum / max_sum;
  return {MetricName::kWeightedSpatialIou, value, Direction::kHigherBetter,
          std::nullopt};
}

MetricValue mse(const FrameSequence& a, const FrameSequence& b) {
  a.validate();
  b.validate();
  if (a.frame_count() != b.frame_count()) {
    throw std::invalid_argument("mse: frame-count mismatch");
  }
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("mse: dimension mismatch");
  }
  double sum = 0.0;
  for (int t = 0; t < a.frame_count(); ++t) {
    const Frame& fa = a.frames[t];
    const Frame& fb = b.frames[t];
    for (int y = 0; y < a.height(); ++y) {
      for (int x = 0; x < a.width(); ++x) {
        for (int c = 0; c < Frame::kChannels; ++c) {
          const double d = (static_cast<double>(fa.channel(c)(y, x)) -
                            static_cast<double>(fb.channel(c)(y, x))) /
                           255.0;
          sum += d * d;
        }
      }
    }
  }
  const double n = static_cast<double>(a.frame_count()) * a.width() * a.height() *
                   Frame::kChannels;
  return {MetricName::kMse, sum / n, Direction::kLowerBetter, std::nullopt};
}

AlignedPair align_for_comparison(const FrameSequence& real_test,
                                 const FrameSequence& generated,
                                 double compare_seconds) {
  real_test.validate();
  generated.validate();

  FrameSequence real = real_test;
  if (real.fps != generated.fps || real.width() != generated.width() ||
      real.height() != generated.height()) {
    std::optional<OutDims> dims;
    if (real.width() != generated.width() || real.height() != generated.height()) {
      dims = OutDims{generated.width(), generated.height()};
    }
    real = resample_fps(real, generated.fps, dims);
  }

  const long long budget = round_count(compare_seconds * generated.fps);
  const int keep = static_cast<int>(std::min<long long>(
      {budget, real.frame_count(), generated.frame_count()}));
  if (keep < 1) {
    throw std::invalid_argument("align_for_comparison: empty comparison window");
  }

  AlignedPair out;
  out.real = real;
  out.real.frames.resize(keep);
  out.generated = generated;
  out.generated.frames.resize(keep);
  return out;
}

}  // namespace physiq
