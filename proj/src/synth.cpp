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

#include "physiq/synth.hpp"

#include <algorithm>
#include <cmath>

#include "physiq/frameseq.hpp"

namespace physiq::synth {

namespace {

constexpr std::uint8_t kObjectIntensity = 200;

// --- deterministic helpers ---------------------------------------------------

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform in [-1, 1).
double symmetric_unit(std::uint64_t& state) {
  return 2.0 * (static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53) - 1.0;
}

constexpr double kPi = 3.14159265358979323846264338327950288;

// Taylor sine on |z| <= pi/2; basic IEEE operations only, so results are
// identical on every platform (libm's sin/cos are not).
double poly_sin(double z) {
  const double z2 = z * z;
  double term = z;
  double sum = z;
  for (int k = 3; k <= 19; k += 2) {
    term *= -z2 / static_cast<double>(k * (k - 1));
    sum += term;
  }
  return sum;
}

double det_sin(double x) {
  const double two_pi = 2.0 * kPi;
  double r = x - two_pi * std::floor(x / two_pi);  // [0, 2 pi)
  if (r < kPi / 2.0) return poly_sin(r);
  if (r < 3.0 * kPi / 2.0) return poly_sin(kPi - r);
  return poly_sin(r - two_pi);
}

double det_cos(double x) { return det_sin(x + kPi / 2.0); }

// --- trajectory resolution ----------------------------------------------------

// Spec parameters after take-2 jitter has been applied.
struct Resolved {
  double x0 = 0.0, y0 = 0.0;
  double velocity = 0.0;
  double gravity = 0.0;
  double amplitude = 0.0;
  double period = 0.0;
  double growth = 0.0;
};

Resolved resolve(const SynthSpec& spec, int take) {
  Resolved r;
  r.x0 = spec.start_x;
  r.y0 = spec.start_y;
  r.velocity = spec.velocity;
  r.gravity = spec.gravity;
  r.amplitude = spec.angular_amplitude;
  r.period = spec.angular_period;
  r.growth = spec.growth_rate;
  if (take == 2 && spec.kind != Kind::kStatic && spec.noise_amplitude > 0.0) {
    std::uint64_t state =
        spec.noise_seed ^ (0x6A09E667F3BCC909ull + static_cast<std::uint64_t>(spec.kind));
    const double jx = std::nearbyint(spec.noise_amplitude * 2.0 * symmetric_unit(state));
    const double jy = std::nearbyint(spec.noise_amplitude * 2.0 * symmetric_unit(state));
    const double rate_factor = 1.0 + spec.noise_amplitude * 0.05 * symmetric_unit(state);
    r.x0 += jx;
    r.y0 += jy;
    r.velocity *= rate_factor;
    r.gravity *= rate_factor;
    r.amplitude *= rate_factor;
    r.growth *= rate_factor;
  }
  return r;
}

struct Segment {
  double x0, y0, x1, y1;
};

double dist2_to_segment(double px, double py, const Segment& s) {
  const double vx = s.x1 - s.x0;
  const double vy = s.y1 - s.y0;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = ((px - s.x0) * vx + (py - s.y0) * vy) / len2;
    t = std::clamp(t, 0.0, 1.0);
  }
  const double dx = px - (s.x0 + t * vx);
  const double dy = py - (s.y0 + t * vy);
  return dx * dx + dy * dy;
}

[[noreturn]] void leave_frame(const SynthSpec& spec, int frame_index) {
  throw std::runtime_error("object leaves frame in kind '" + kind_str(spec.kind) +
                           "' at frame " + std::to_string(frame_index));
}

void check_bounds(const SynthSpec& spec, int frame_index, double min_x, double min_y,
                  double max_x, double max_y) {
  if (min_x < 0.0 || min_y < 0.0 || max_x > spec.width || max_y > spec.height) {
    leave_frame(spec, frame_index);
  }
}

PlaneU8 raster_square(const SynthSpec& spec, int frame_index, int x0, int y0) {
  check_bounds(spec, frame_index, x0, y0, x0 + spec.object_size, y0 + spec.object_size);
  PlaneU8 fp = PlaneU8::Zero(spec.height, spec.width);
  fp.block(y0, x0, spec.object_size, spec.object_size).setConstant(1);
  return fp;
}

PlaneU8 raster_disc(const SynthSpec& spec, int frame_index, int cx, int cy, int radius) {
  check_bounds(spec, frame_index, cx - radius, cy - radius, cx + radius + 1,
               cy + radius + 1);
  PlaneU8 fp = PlaneU8::Zero(spec.height, spec.width);
  for (int y = cy - radius; y <= cy + radius; ++y) {
    for (int x = cx - radius; x <= cx + radius; ++x) {
      const int dx = x - cx;
      const int dy = y - cy;
      if (dx * dx + dy * dy <= radius * radius) fp(y, x) = 1;
    }
  }
  return fp;
}

PlaneU8 footprint_resolved(const SynthSpec& spec, const Resolved& rp, int frame_index) {
  const double t_s = static_cast<double>(frame_index) / spec.fps;
  switch (spec.kind) {
    case Kind::kStatic: {
      const int side = spec.object_size;
      return raster_square(spec, frame_index, spec.width / 2 - side / 2,
                           spec.height / 2 - side / 2);
    }
    case Kind::kTranslatingSquare: {
      const int x = static_cast<int>(rp.x0 + std::floor(rp.velocity * t_s));
      return raster_square(spec, frame_index, x, static_cast<int>(rp.y0));
    }
    case Kind::kFallingBall: {
      const int radius = spec.object_size / 2;
      const int cy = static_cast<int>(rp.y0 + std::floor(0.5 * rp.gravity * t_s * t_s));
      return raster_disc(spec, frame_index, static_cast<int>(rp.x0), cy, radius);
    }
    case Kind::kPendulum: {
      const double theta =
          rp.amplitude * det_cos(2.0 * kPi * t_s / rp.period);
      const double bx = rp.x0 + spec.arm_length * det_sin(theta);
      const double by = rp.y0 + spec.arm_length * det_cos(theta);
      const int radius = spec.object_size / 2;
      const int bcx = static_cast<int>(std::nearbyint(bx));
      const int bcy = static_cast<int>(std::nearbyint(by));
      PlaneU8 fp = raster_disc(spec, frame_index, bcx, bcy, radius);
      // Rod band from the pivot to the bob center.
      const Segment rod{rp.x0, rp.y0, bx, by};
      const double hw = spec.rod_half_width;
      check_bounds(spec, frame_index, std::min(rp.x0, bx) - hw, std::min(rp.y0, by) - hw,
                   std::max(rp.x0, bx) + hw + 1.0, std::max(rp.y0, by) + hw + 1.0);
      const double hw2 = hw * hw;
      for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
          if (dist2_to_segment(x, y, rod) <= hw2) fp(y, x) = 1;
        }
      }
      return fp;
    }
    case Kind::kDiffusingBlob: {
      const int radius =
          spec.object_size / 2 + static_cast<int>(std::floor(rp.growth * t_s));
      return raster_disc(spec, frame_index, static_cast<int>(rp.x0),
                         static_cast<int>(rp.y0), radius);
    }
  }
  throw std::logic_error("footprint: bad kind");
}

// Where action happens in one frame: the rendered footprint for rigid movers,
// the newly covered rim for the diffusing blob (its interior never changes
// intensity), nothing for static scenes.
PlaneU8 motion_footprint(const SynthSpec& spec, const Resolved& rp, int frame_index) {
  switch (spec.kind) {
    case Kind::kStatic:
      return PlaneU8::Zero(spec.height, spec.width);
    case Kind::kDiffusingBlob: {
      PlaneU8 now = footprint_resolved(spec, rp, frame_index);
      if (frame_index == 0) return PlaneU8::Zero(spec.height, spec.width);
      const PlaneU8 before = footprint_resolved(spec, rp, frame_index - 1);
      return (now.cast<int>() - before.cast<int>()).max(0).cast<std::uint8_t>();
    }
    default:
      return footprint_resolved(spec, rp, frame_index);
  }
}

// Test-segment window of a benchmark-ready spec.
std::pair<int, int> test_window(const SynthSpec& spec) {
  const int switch_index = static_cast<int>(round_count(3.0 * spec.fps)) - 1;
  const int test_count = static_cast<int>(round_count(5.0 * spec.fps));
  if (switch_index + 1 + test_count > spec.frame_count()) {
    throw std::invalid_argument("spec too short for the 3 s + 5 s split");
  }
  return {switch_index + 1, test_count};
}

void require_noise_free(const SynthSpec& spec, const char* who) {
  if (spec.noise_amplitude != 0.0) {
    throw std::invalid_argument(std::string(who) +
                                ": analytic map undefined for noisy specs");
  }
}

constexpr int kOracleMaxWidth = 32;
constexpr int kOracleMaxHeight = 32;
constexpr int kOracleMaxFrames = 16;

void require_oracle_sized(int w, int h, int t) {
  if (w > kOracleMaxWidth || h > kOracleMaxHeight || t > kOracleMaxFrames) {
    throw std::invalid_argument("oracle_metrics: inputs exceed the enumeration size cap");
  }
}

}  // namespace

std::string kind_str(Kind k) {
  switch (k) {
    case Kind::kStatic: return "static";
    case Kind::kTranslatingSquare: return "translating-square";
    case Kind::kFallingBall: return "falling-ball";
    case Kind::kPendulum: return "pendulum";
    case Kind::kDiffusingBlob: return "diffusing-blob";
  }
  throw std::logic_error("kind_str: bad enum");
}

Kind parse_kind(const std::string& s) {
  for (Kind k : {Kind::kStatic, Kind::kTranslatingSquare, Kind::kFallingBall,
                 Kind::kPendulum, Kind::kDiffusingBlob}) {
    if (kind_str(k) == s) return k;
  }
  throw std::runtime_error("unknown scenario kind: '" + s + "'");
}

void SynthSpec::validate() const {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("SynthSpec: positive dimensions required");
  }
  if (!(fps > 0.0) || !(duration_seconds > 0.0)) {
    throw std::invalid_argument("SynthSpec: fps and duration must be positive");
  }
  if (object_size <= 0) {
    throw std::invalid_argument("SynthSpec: object_size must be positive");
  }
  if (noise_amplitude < 0.0) {
    throw std::invalid_argument("SynthSpec: noise_amplitude must be >= 0");
  }
  if (kind == Kind::kPendulum && (!(angular_period > 0.0) || !(arm_length > 0.0))) {
    throw std::invalid_argument("SynthSpec: pendulum needs positive period and arm");
  }
}

SynthSpec default_spec(Kind kind, double fps, int size, double duration_seconds,
                       std::uint64_t noise_seed, double noise_amplitude) {
  SynthSpec spec;
  spec.kind = kind;
  spec.fps = fps;
  spec.duration_seconds = duration_seconds;
  spec.width = size;
  spec.height = size;
  spec.noise_seed = noise_seed;
  spec.noise_amplitude = noise_amplitude;
  switch (kind) {
    case Kind::kStatic:
      spec.object_size = size / 4;
      break;
    case Kind::kTranslatingSquare:
      spec.object_size = size / 4;
      spec.start_x = 2;
      spec.start_y = size * 3 / 8;
      // Leaves headroom for full-strength take-2 jitter at the right edge.
      spec.velocity = 5.0 * (size / 64.0) * (8.0 / duration_seconds);
      break;
    case Kind::kFallingBall:
      spec.object_size = size / 4;
      spec.start_x = size / 2;
      spec.start_y = size / 6;
      spec.gravity = 1.25 * (size / 64.0) * (64.0 / (duration_seconds * duration_seconds));
      break;
    case Kind::kPendulum:
      spec.object_size = 14 * size / 64;
      spec.start_x = size / 2;
      spec.start_y = 6 * size / 64;
      spec.arm_length = 24.0 * size / 64.0;
      spec.angular_amplitude = 0.7;
      spec.angular_period = 3.0;
      spec.rod_half_width = 2.0 * size / 64.0;
      break;
    case Kind::kDiffusingBlob:
      // Small seed disc and brisk growth: most of the final area is swept
      // during the test window, where the mask pipeline can see it move.
      spec.object_size = std::max(4, size / 16);
      spec.start_x = size / 2;
      spec.start_y = size / 2;
      spec.growth_rate = 2.5 * (size / 64.0) * (8.0 / duration_seconds);
      break;
  }
  return spec;
}

PlaneU8 footprint(const SynthSpec& spec, int frame_index) {
  spec.validate();
  return footprint_resolved(spec, resolve(spec, 1), frame_index);
}

FrameSequence render_scenario(const SynthSpec& spec, int take) {
  spec.validate();
  if (take != 1 && take != 2) {
    throw std::invalid_argument("render_scenario: take must be 1 or 2");
  }
  const Resolved rp = resolve(spec, take);
  const int n = spec.frame_count();
  std::vector<Frame> frames;
  frames.reserve(n);
  for (int t = 0; t < n; ++t) {
    const PlaneU8 fp = footprint_resolved(spec, rp, t);
    Frame frame(spec.width, spec.height);
    frame.r = fp * kObjectIntensity;
    frame.g = frame.r;
    frame.b = frame.r;
    frames.push_back(std::move(frame));
  }
  return FrameSequence(std::move(frames), spec.fps);
}

MaskVideo oracle_footprint_video(const SynthSpec& spec) {
  spec.validate();
  require_noise_free(spec, "oracle_footprint_video");
  const auto [start, count] = test_window(spec);
  MaskVideo mask;
  mask.frames.reserve(count);
  const Resolved rp = resolve(spec, 1);
  for (int t = start; t < start + count; ++t) {
    mask.frames.push_back(motion_footprint(spec, rp, t));
  }
  return mask;
}

MotionMap oracle_motion_map(const SynthSpec& spec) {
  const MaskVideo footprints = oracle_footprint_video(spec);
  MotionMap map;
  map.kind = MapKind::kBinary;
  PlaneU8 acc = PlaneU8::Zero(spec.height, spec.width);
  for (const PlaneU8& f : footprints.frames) {
    acc = acc.max(f);
  }
  map.data = acc.cast<float>();
  return map;
}

std::vector<MetricValue> oracle_metrics(const MaskVideo& a, const MaskVideo& b) {
  a.validate();
  b.validate();
  if (a.frame_count() != b.frame_count() || a.width() != b.width() ||
      a.height() != b.height()) {
    throw std::invalid_argument("oracle_metrics: dimension mismatch");
  }
  const int t = a.frame_count();
  const int h = a.height();
  const int w = a.width();
  require_oracle_sized(w, h, t);

  // Spatial IoU of the max-collapsed maps.
  long long sp_inter = 0, sp_union = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int av = 0, bv = 0;
      for (int k = 0; k < t; ++k) {
        if (a.frames[k](y, x)) av = 1;
        if (b.frames[k](y, x)) bv = 1;
      }
      sp_inter += (av && bv) ? 1 : 0;
      sp_union += (av || bv) ? 1 : 0;
    }
  }
  const double spatial = sp_union == 0
                             ? 1.0
                             : static_cast<double>(sp_inter) / static_cast<double>(sp_union);

  // Volume IoU over all voxels.
  long long vol_inter = 0, vol_union = 0;
  for (int k = 0; k < t; ++k) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const bool av = a.frames[k](y, x) != 0;
        const bool bv = b.frames[k](y, x) != 0;
        vol_inter += (av && bv) ? 1 : 0;
        vol_union += (av || bv) ? 1 : 0;
      }
    }
  }
  const double volume =
      vol_union == 0 ? 1.0
                     : static_cast<double>(vol_inter) / static_cast<double>(vol_union);

  // Frame-mean IoU; empty-union frames contribute 1.0.
  double frame_sum = 0.0;
  for (int k = 0; k < t; ++k) {
    long long inter = 0, uni = 0;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const bool av = a.frames[k](y, x) != 0;
        const bool bv = b.frames[k](y, x) != 0;
        inter += (av && bv) ? 1 : 0;
        uni += (av || bv) ? 1 : 0;
      }
    }
    frame_sum += uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
  }
  const double frame_mean = frame_sum / static_cast<double>(t);

  // Weighted IoU of the mean-collapsed maps. The per-pixel weights go through
  // the same float division as the production collapse so the comparison is
  // exact, and the sums accumulate row-major in double.
  double min_sum = 0.0, max_sum = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int ca = 0, cb = 0;
      for (int k = 0; k < t; ++k) {
        ca += a.frames[k](y, x) ? 1 : 0;
        cb += b.frames[k](y, x) ? 1 : 0;
      }
      const float wa = static_cast<float>(ca) / static_cast<float>(t);
      const float wb = static_cast<float>(cb) / static_cast<float>(t);
      min_sum += std::min(wa, wb);
      max_sum += std::max(wa, wb);
    }
  }
  const double weighted = max_sum == 0.0 ? 1.0 : min_sum / max_sum;

  // MSE over the binary volumes.
  long long diff = 0;
  for (int k = 0; k < t; ++k) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int d = static_cast<int>(a.frames[k](y, x)) -
                      static_cast<int>(b.frames[k](y, x));
        diff += d * d;
      }
    }
  }
  const double mse_value =
      static_cast<double>(diff) / (static_cast<double>(t) * h * w);

  return {
      {MetricName::kSpatialIou, spatial, Direction::kHigherBetter, std::nullopt},
      {MetricName::kSpatiotemporalIou, volume, Direction::kHigherBetter, StMode::kVolume},
      {MetricName::kSpatiotemporalIou, frame_mean, Direction::kHigherBetter,
       StMode::kFrameMean},
      {MetricName::kWeightedSpatialIou, weighted, Direction::kHigherBetter, std::nullopt},
      {MetricName::kMse, mse_value, Direction::kLowerBetter, std::nullopt},
  };
}

std::vector<MetricValue> oracle_metrics(const MotionMap& a, const MotionMap& b) {
  if (a.kind != b.kind) {
    throw std::invalid_argument("oracle_metrics: map kinds differ");
  }
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("oracle_metrics: dimension mismatch");
  }
  require_oracle_sized(a.width(), a.height(), 1);

  if (a.kind == MapKind::kBinary) {
    long long inter = 0, uni = 0;
    for (int y = 0; y < a.height(); ++y) {
      for (int x = 0; x < a.width(); ++x) {
        const bool av = a.data(y, x) != 0.0f;
        const bool bv = b.data(y, x) != 0.0f;
        inter += (av && bv) ? 1 : 0;
        uni += (av || bv) ? 1 : 0;
      }
    }
    const double v =
        uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
    return {{MetricName::kSpatialIou, v, Direction::kHigherBetter, std::nullopt}};
  }

  double min_sum = 0.0, max_sum = 0.0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      min_sum += std::min(a.data(y, x), b.data(y, x));
      max_sum += std::max(a.data(y, x), b.data(y, x));
    }
  }
  const double v = max_sum == 0.0 ? 1.0 : min_sum / max_sum;
  return {{MetricName::kWeightedSpatialIou, v, Direction::kHigherBetter, std::nullopt}};
}

FrameSequence corrupt_with_noise(const FrameSequence& seq, double amplitude,
                                 std::uint64_t seed) {
  seq.validate();
  if (amplitude < 0.0) {
    throw std::invalid_argument("corrupt_with_noise: amplitude must be >= 0");
  }
  const int span = 2 * static_cast<int>(amplitude) + 1;
  std::uint64_t state = seed;
  FrameSequence out = seq;
  for (Frame& frame : out.frames) {
    for (int y = 0; y < frame.height(); ++y) {
      for (int x = 0; x < frame.width(); ++x) {
        for (int c = 0; c < Frame::kChannels; ++c) {
          const int delta =
              static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(span)) -
              static_cast<int>(amplitude);
          const int v = static_cast<int>(frame.channel(c)(y, x)) + delta;
          frame.channel(c)(y, x) = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
        }
      }
    }
  }
  return out;
}

bench::DatasetManifest generate_mini_benchmark(const MiniBenchmarkOptions& options,
                                               const std::filesystem::path& out_dir) {
  struct Entry {
    Kind kind;
    bench::Category category;
  };
  // Category labels are metadata only; each kind exercises one column of the
  // category breakdown.
  const std::vector<Entry> entries = {
      {Kind::kTranslatingSquare, bench::Category::kSolidMechanics},
      {Kind::kFallingBall, bench::Category::kMagnetism},
      {Kind::kPendulum, bench::Category::kThermodynamics},
      {Kind::kDiffusingBlob, bench::Category::kFluidDynamics},
      {Kind::kStatic, bench::Category::kOptics},
  };

  std::filesystem::create_directories(out_dir);
  bench::DatasetManifest manifest;
  manifest.name = "synthetic-mini";
  manifest.root = out_dir;
  const int switch_index = static_cast<int>(round_count(3.0 * options.fps)) - 1;

  for (const Entry& entry : entries) {
    SynthSpec spec = default_spec(entry.kind, options.fps, options.size,
                                  options.duration_seconds, options.seed,
                                  options.noise_amplitude);
    // Stream-separate the per-scenario jitter.
    spec.noise_seed = options.seed + 0x100ull * static_cast<std::uint64_t>(entry.kind);
    const std::string id = kind_str(entry.kind);
    for (int take = 1; take <= 2; ++take) {
      FrameSequence seq = render_scenario(spec, take);
      seq.scenario_id = id;
      seq.switch_index = switch_index;
      const std::string rel =
          id + "/center/take" + std::to_string(take);
      save_sequence(seq, out_dir / rel);
      bench::ScenarioRecord rec;
      rec.scenario_id = id;
      rec.category = entry.category;
      rec.perspective = bench::Perspective::kCenter;
      rec.take = take;
      rec.switch_index = switch_index;
      rec.path = rel;
      manifest.records.push_back(std::move(rec));
    }
  }
  save_manifest(manifest, out_dir / "dataset.json");
  return manifest;
}

}  // namespace physiq::synth
