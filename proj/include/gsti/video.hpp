// Copyright 2026 The GSTI Authors
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

#include <cstdint>
#include <string>
#include <vector>

namespace gsti {

// Frame rate as an exact rational, e.g. {120, 1} or {30000, 1001}.
struct Fps {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double hz() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
};

bool operator==(const Fps& a, const Fps& b);
bool operator!=(const Fps& a, const Fps& b);
bool operator<(const Fps& a, const Fps& b);
bool operator<=(const Fps& a, const Fps& b);
bool operator>(const Fps& a, const Fps& b);
bool operator>=(const Fps& a, const Fps& b);

// Parses "120" or "30000/1001". Throws std::invalid_argument on anything else.
Fps parse_fps(const std::string& text);

// Single plane of real-valued samples, row-major. Luma stays on its source
// scale (0..255 for 8-bit input); downsampling and filtering make it
// fractional. The same container carries band-pass coefficient frames.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<float> samples;

    Frame() = default;
    Frame(int w, int h, float fill = 0.0f)
        : width(w), height(h), samples(static_cast<std::size_t>(w) * h, fill) {}

    float at(int row, int col) const {
        return samples[static_cast<std::size_t>(row) * width + col];
    }
    float& at(int row, int col) {
        return samples[static_cast<std::size_t>(row) * width + col];
    }
};

struct LumaVideo {
    int width = 0;
    int height = 0;
    Fps fps;
    int source_bit_depth = 8;
    std::vector<Frame> frames;

    int frame_count() const { return static_cast<int>(frames.size()); }
};

// Pixel layouts accepted by the raw loader. Both are 8-bit; higher bit
// depths are rejected at parse time rather than truncated.
enum class PixelFormat { kYuv420p, kGray8 };

PixelFormat pixel_format_from_string(const std::string& name);
std::string pixel_format_name(PixelFormat fmt);

// Mean pooling over factor x factor blocks; trailing partial rows/columns
// are discarded. Throws when the factor exceeds either dimension.
LumaVideo spatial_downsample(const LumaVideo& video, int factor);

// Frame dropping: output frame n is input frame floor(n * fps_in / fps_out).
// Requires target_fps <= video.fps. Applied to the reference this builds the
// pseudo-reference signal; at equal rates it is the identity.
LumaVideo temporal_downsample_drop(const LumaVideo& video, Fps target_fps);

// Frame duplication with the same index rule; requires target_fps >= video.fps.
LumaVideo temporal_upsample_duplicate(const LumaVideo& video, Fps target_fps);

}  // namespace gsti
