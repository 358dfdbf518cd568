// Shared test fixtures: deterministic RNG, temp dirs, tiny sequence builders.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "physiq/motionmask.hpp"
#include "physiq/types.hpp"

namespace physiq::testing {

// Deterministic RNG so every "random" test input is reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool coin() { return (next() & 1ull) != 0; }

 private:
  std::uint64_t state_;
};

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("physiq_test_" + tag + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline Frame gray_frame(int width, int height, std::uint8_t value) {
  Frame f(width, height);
  f.r.setConstant(value);
  f.g.setConstant(value);
  f.b.setConstant(value);
  return f;
}

inline FrameSequence gray_sequence(const std::vector<std::uint8_t>& values, double fps,
                                   int width = 4, int height = 4) {
  std::vector<Frame> frames;
  frames.reserve(values.size());
  for (std::uint8_t v : values) frames.push_back(gray_frame(width, height, v));
  return FrameSequence(std::move(frames), fps);
}

inline Frame random_frame(Rng& rng, int width, int height) {
  Frame f(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      f.r(y, x) = static_cast<std::uint8_t>(rng.below(256));
      f.g(y, x) = static_cast<std::uint8_t>(rng.below(256));
      f.b(y, x) = static_cast<std::uint8_t>(rng.below(256));
    }
  }
  return f;
}

inline FrameSequence random_sequence(Rng& rng, int frames, double fps, int width,
                                     int height) {
  std::vector<Frame> fs;
  fs.reserve(frames);
  for (int i = 0; i < frames; ++i) fs.push_back(random_frame(rng, width, height));
  return FrameSequence(std::move(fs), fps);
}

inline MaskVideo random_mask_video(Rng& rng, int width, int height, int frames,
                                   double density = 0.5) {
  MaskVideo mask;
  mask.frames.reserve(frames);
  for (int t = 0; t < frames; ++t) {
    PlaneU8 plane(height, width);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        plane(y, x) = rng.unit() < density ? 1 : 0;
      }
    }
    mask.frames.push_back(std::move(plane));
  }
  return mask;
}

// Mask video rendered as a gray frame sequence (1 -> 255), the route that
// feeds mask volumes through the frame-space MSE metric.
inline FrameSequence mask_as_sequence(const MaskVideo& mask, double fps) {
  std::vector<Frame> frames;
  frames.reserve(mask.frame_count());
  for (const PlaneU8& m : mask.frames) {
    Frame f(mask.width(), mask.height());
    f.r = m * std::uint8_t{255};
    f.g = f.r;
    f.b = f.r;
    frames.push_back(std::move(f));
  }
  return FrameSequence(std::move(frames), fps);
}

inline bool same_frames(const FrameSequence& a, const FrameSequence& b) {
  if (a.frame_count() != b.frame_count()) return false;
  for (int i = 0; i < a.frame_count(); ++i) {
    if (!(a.frames[i] == b.frames[i])) return false;
  }
  return true;
}

}  // namespace physiq::testing
