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

#include "physiq/frameseq.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "physiq/png_io.hpp"
#include "json_util.hpp"

namespace physiq {

namespace {

constexpr char kRawMagic[4] = {'P', 'I', 'Q', 'F'};

struct Meta {
  double fps = 0.0;
  int width = 0;
  int height = 0;
  int num_frames = 0;
  std::string scenario_id;
  int switch_index = -1;
};

std::filesystem::path meta_path_for_dir(const std::filesystem::path& dir) {
  return dir / "meta.json";
}

std::filesystem::path meta_path_for_raw(const std::filesystem::path& raw) {
  std::filesystem::path p = raw;
  p.replace_extension(".meta.json");
  return p;
}

Meta read_meta(const std::filesystem::path& path) {
  nlohmann::json j = detail::read_json_file(path);
  Meta m;
  try {
    m.fps = j.at("fps").get<double>();
    m.width = j.at("width").get<int>();
    m.height = j.at("height").get<int>();
    m.num_frames = j.at("num_frames").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("missing metadata field in " + path.string() + ": " +
                             e.what());
  }
  if (j.contains("scenario_id")) m.scenario_id = j.at("scenario_id").get<std::string>();
  if (j.contains("switch_index")) m.switch_index = j.at("switch_index").get<int>();
  return m;
}

void write_meta(const std::filesystem::path& path, const FrameSequence& seq) {
  nlohmann::json j;
  j["fps"] = seq.fps;
  j["width"] = seq.width();
  j["height"] = seq.height();
  j["num_frames"] = seq.frame_count();
  if (!seq.scenario_id.empty()) j["scenario_id"] = seq.scenario_id;
  if (seq.switch_index >= 0) j["switch_index"] = seq.switch_index;
  detail::write_json_file(path, j);
}

std::string frame_file_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%06d.png", index);
  return buf;
}

FrameSequence load_from_dir(const std::filesystem::path& dir) {
  Meta meta = read_meta(meta_path_for_dir(dir));
  std::vector<Frame> frames;
  frames.reserve(meta.num_frames);
  for (int i = 0; i < meta.num_frames; ++i) {
    std::filesystem::path file = dir / frame_file_name(i);
    if (!std::filesystem::exists(file)) {
      throw std::runtime_error("frame count mismatch: metadata declares " +
                               std::to_string(meta.num_frames) + " frames, " +
                               file.string() + " is missing");
    }
    frames.push_back(read_png_rgb(file));
  }
  if (std::filesystem::exists(dir / frame_file_name(meta.num_frames))) {
    throw std::runtime_error("frame count mismatch: directory holds more frames "
                             "than metadata declares (" +
                             std::to_string(meta.num_frames) + ")");
  }
  FrameSequence seq(std::move(frames), meta.fps);
  if (seq.width() != meta.width || seq.height() != meta.height) {
    throw std::runtime_error("frame size mismatch vs. metadata in " + dir.string());
  }
  seq.scenario_id = meta.scenario_id;
  seq.switch_index = meta.switch_index;
  return seq;
}

FrameSequence load_from_raw(const std::filesystem::path& file) {
  Meta meta = read_meta(meta_path_for_raw(file));
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + file.string());
  }
  char magic[4];
  std::uint32_t w = 0, h = 0, n = 0;
  in.read(magic, 4);
  auto read_u32 = [&in](std::uint32_t& v) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    v = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
        (static_cast<std::uint32_t>(b[2]) << 16) |
        (static_cast<std::uint32_t>(b[3]) << 24);
  };
  read_u32(w);
  read_u32(h);
  read_u32(n);
  if (!in || std::memcmp(magic, kRawMagic, 4) != 0) {
    throw std::runtime_error("not a PIQF file: " + file.string());
  }
  if (static_cast<int>(n) != meta.num_frames || static_cast<int>(w) != meta.width ||
      static_cast<int>(h) != meta.height) {
    throw std::runtime_error("frame count mismatch between header and metadata in " +
                             file.string());
  }
  std::vector<Frame> frames;
  frames.reserve(n);
  std::vector<std::uint8_t> plane(static_cast<std::size_t>(w) * h);
  for (std::uint32_t i = 0; i < n; ++i) {
    Frame f(static_cast<int>(w), static_cast<int>(h));
    for (int c = 0; c < Frame::kChannels; ++c) {
      in.read(reinterpret_cast<char*>(plane.data()),
              static_cast<std::streamsize>(plane.size()));
      if (!in) {
        throw std::runtime_error("truncated PIQF payload in " + file.string());
      }
      PlaneU8& dst = f.channel(c);
      std::memcpy(dst.data(), plane.data(), plane.size());
    }
    frames.push_back(std::move(f));
  }
  FrameSequence seq(std::move(frames), meta.fps);
  seq.scenario_id = meta.scenario_id;
  seq.switch_index = meta.switch_index;
  return seq;
}

void save_to_dir(const FrameSequence& seq, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (int i = 0; i < seq.frame_count(); ++i) {
    write_png_rgb(dir / frame_file_name(i), seq.frames[i]);
  }
  write_meta(meta_path_for_dir(dir), seq);
}

void save_to_raw(const FrameSequence& seq, const std::filesystem::path& file) {
  if (file.has_parent_path()) {
    std::filesystem::create_directories(file.parent_path());
  }
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + file.string());
  }
  out.write(kRawMagic, 4);
  auto write_u32 = [&out](std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
  };
  write_u32(static_cast<std::uint32_t>(seq.width()));
  write_u32(static_cast<std::uint32_t>(seq.height()));
  write_u32(static_cast<std::uint32_t>(seq.frame_count()));
  for (const Frame& f : seq.frames) {
    for (int c = 0; c < Frame::kChannels; ++c) {
      const PlaneU8& src = f.channel(c);
      out.write(reinterpret_cast<const char*>(src.data()),
                static_cast<std::streamsize>(src.size()));
    }
  }
  if (!out) {
    throw std::runtime_error("I/O failure writing " + file.string());
  }
  write_meta(meta_path_for_raw(file), seq);
}

}  // namespace

FrameSequence load_sequence(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) {
    return load_from_dir(path);
  }
  if (std::filesystem::is_regular_file(path)) {
    return load_from_raw(path);
  }
  throw std::runtime_error("no frame sequence at " + path.string());
}

void save_sequence(const FrameSequence& seq, const std::filesystem::path& path) {
  seq.validate();
  if (path.extension() == ".piqf") {
    save_to_raw(seq, path);
  } else {
    save_to_dir(seq, path);
  }
}

PlaneF bilinear_resize(const PlaneF& in, int out_width, int out_height) {
  if (out_width <= 0 || out_height <= 0) {
    throw std::invalid_argument("bilinear_resize: output dimensions must be positive");
  }
  const int in_w = static_cast<int>(in.cols());
  const int in_h = static_cast<int>(in.rows());
  PlaneF out(out_height, out_width);
  const float sx = static_cast<float>(in_w) / static_cast<float>(out_width);
  const float sy = static_cast<float>(in_h) / static_cast<float>(out_height);
  for (int y = 0; y < out_height; ++y) {
    float fy = (static_cast<float>(y) + 0.5f) * sy - 0.5f;
    fy = std::clamp(fy, 0.0f, static_cast<float>(in_h - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, in_h - 1);
    const float wy = fy - static_cast<float>(y0);
    for (int x = 0; x < out_width; ++x) {
      float fx = (static_cast<float>(x) + 0.5f) * sx - 0.5f;
      fx = std::clamp(fx, 0.0f, static_cast<float>(in_w - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, in_w - 1);
      const float wx = fx - static_cast<float>(x0);
      const float top = (1.0f - wx) * in(y0, x0) + wx * in(y0, x1);
      const float bot = (1.0f - wx) * in(y1, x0) + wx * in(y1, x1);
      out(y, x) = (1.0f - wy) * top + wy * bot;
    }
  }
  return out;
}

FrameSequence resample_fps(const FrameSequence& seq, double fps_new,
                           std::optional<OutDims> out_dims) {
  seq.validate();
  if (!(fps_new > 0.0) || !std::isfinite(fps_new)) {
    throw std::invalid_argument("resample_fps: fps_new must be positive");
  }
  if (out_dims && (out_dims->width <= 0 || out_dims->height <= 0)) {
    throw std::invalid_argument("resample_fps: resize dimensions must be positive");
  }

  const int n = seq.frame_count();
  const double duration = seq.duration_seconds();
  // A sequence always carries at least one frame, so clamp the rounded count.
  const int n_new = static_cast<int>(std::max<long long>(1, round_count(duration * fps_new)));

  const int src_w = seq.width();
  const int src_h = seq.height();
  const int dst_w = out_dims ? out_dims->width : src_w;
  const int dst_h = out_dims ? out_dims->height : src_h;

  std::vector<Frame> out_frames;
  out_frames.reserve(n_new);
  for (int j = 0; j < n_new; ++j) {
    const double alpha =
        (n_new == 1) ? 0.0
                     : static_cast<double>(j) * static_cast<double>(n - 1) /
                           static_cast<double>(n_new - 1);
    const int i = static_cast<int>(alpha);
    const float beta = static_cast<float>(alpha - i);
    const Frame& f1 = seq.frames[i];
    const Frame& f2 = seq.frames[std::min(i + 1, n - 1)];
    Frame out(dst_w, dst_h);
    for (int c = 0; c < Frame::kChannels; ++c) {
      PlaneF blended = (1.0f - beta) * f1.channel(c).cast<float>() +
                       beta * f2.channel(c).cast<float>();
      if (out_dims) {
        blended = bilinear_resize(blended, dst_w, dst_h);
      }
      PlaneU8& dst = out.channel(c);
      for (int y = 0; y < dst_h; ++y) {
        for (int x = 0; x < dst_w; ++x) {
          dst(y, x) = quantize_u8(blended(y, x));
        }
      }
    }
    out_frames.push_back(std::move(out));
  }

  FrameSequence out(std::move(out_frames), fps_new);
  // The switch index is tied to the original rate, so it does not carry over.
  out.scenario_id = seq.scenario_id;
  return out;
}

std::pair<FrameSequence, FrameSequence> split_at_switch(const FrameSequence& seq,
                                                        const SplitSpec& spec) {
  seq.validate();
  spec.validate(seq);
  const int cond_count = spec.switch_index + 1;
  const int test_count = spec.test_frames(seq.fps);

  std::vector<Frame> cond(seq.frames.begin(), seq.frames.begin() + cond_count);
  std::vector<Frame> test(seq.frames.begin() + cond_count,
                          seq.frames.begin() + cond_count + test_count);

  FrameSequence conditioning(std::move(cond), seq.fps);
  conditioning.scenario_id = seq.scenario_id;
  conditioning.switch_index = spec.switch_index;
  FrameSequence test_seq(std::move(test), seq.fps);
  test_seq.scenario_id = seq.scenario_id;
  return {std::move(conditioning), std::move(test_seq)};
}

}  // namespace physiq
