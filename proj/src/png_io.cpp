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

#include "physiq/png_io.hpp"

#include <png.h>

#include <vector>

namespace physiq {

namespace {

std::vector<std::uint8_t> read_png_buffer(const std::filesystem::path& path,
                                          png_uint_32 format, int channels,
                                          png_image& image) {
  image = png_image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw std::runtime_error("unreadable image " + path.string() + ": " +
                             image.message);
  }
  image.format = format;
  std::vector<std::uint8_t> buffer(static_cast<std::size_t>(image.width) *
                                   image.height * channels);
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    throw std::runtime_error("unreadable image " + path.string() + ": " +
                             image.message);
  }
  return buffer;
}

}  // namespace

Frame read_png_rgb(const std::filesystem::path& path) {
  png_image image;
  std::vector<std::uint8_t> buffer = read_png_buffer(path, PNG_FORMAT_RGB, 3, image);
  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  Frame frame(w, h);
  const std::uint8_t* p = buffer.data();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      frame.r(y, x) = *p++;
      frame.g(y, x) = *p++;
      frame.b(y, x) = *p++;
    }
  }
  return frame;
}

PlaneU8 read_png_gray(const std::filesystem::path& path) {
  png_image image;
  std::vector<std::uint8_t> buffer = read_png_buffer(path, PNG_FORMAT_GRAY, 1, image);
  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  PlaneU8 plane(h, w);
  const std::uint8_t* p = buffer.data();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      plane(y, x) = *p++;
    }
  }
  return plane;
}

void write_png_rgb(const std::filesystem::path& path, const Frame& frame) {
  const int w = frame.width();
  const int h = frame.height();
  std::vector<std::uint8_t> buffer(static_cast<std::size_t>(w) * h * 3);
  std::uint8_t* p = buffer.data();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      *p++ = frame.r(y, x);
      *p++ = frame.g(y, x);
      *p++ = frame.b(y, x);
    }
  }
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, buffer.data(), 0,
                               nullptr)) {
    throw std::runtime_error("failed to write " + path.string() + ": " +
                             image.message);
  }
}

void write_png_gray(const std::filesystem::path& path, const PlaneU8& plane) {
  const int w = static_cast<int>(plane.cols());
  const int h = static_cast<int>(plane.rows());
  std::vector<std::uint8_t> buffer(static_cast<std::size_t>(w) * h);
  std::uint8_t* p = buffer.data();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      *p++ = plane(y, x);
    }
  }
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, buffer.data(), 0,
                               nullptr)) {
    throw std::runtime_error("failed to write " + path.string() + ": " +
                             image.message);
  }
}

}  // namespace physiq
