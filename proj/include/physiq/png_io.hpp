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

/// Reads an 8-bit PNG as an RGB frame (gray and RGBA inputs are converted).
/// Throws std::runtime_error when the file is missing or not decodable.
Frame read_png_rgb(const std::filesystem::path& path);

/// Reads an 8-bit PNG as a single gray plane.
PlaneU8 read_png_gray(const std::filesystem::path& path);

void write_png_rgb(const std::filesystem::path& path, const Frame& frame);
void write_png_gray(const std::filesystem::path& path, const PlaneU8& plane);

}  // namespace physiq
