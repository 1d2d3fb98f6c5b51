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

#include "gsti/video.hpp"

#include <stdexcept>

namespace gsti {

std::string Fps::str() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

bool operator==(const Fps& a, const Fps& b) { return a.num * b.den == b.num * a.den; }
bool operator!=(const Fps& a, const Fps& b) { return !(a == b); }
bool operator<(const Fps& a, const Fps& b) { return a.num * b.den < b.num * a.den; }
bool operator<=(const Fps& a, const Fps& b) { return a.num * b.den <= b.num * a.den; }
bool operator>(const Fps& a, const Fps& b) { return b < a; }
bool operator>=(const Fps& a, const Fps& b) { return b <= a; }

Fps parse_fps(const std::string& text) {
    const auto bad = [&] {
        return std::invalid_argument("invalid frame rate '" + text +
                                     "' (expected N or N/D)");
    };
    if (text.empty()) throw bad();
    Fps fps{0, 1};
    std::size_t pos = 0;
    try {
        fps.num = std::stoll(text, &pos);
        if (pos < text.size()) {
            if (text[pos] != '/' && text[pos] != ':') throw bad();
            std::size_t den_pos = 0;
            const std::string den_text = text.substr(pos + 1);
            fps.den = std::stoll(den_text, &den_pos);
            if (den_pos != den_text.size()) throw bad();
        }
    } catch (const std::invalid_argument&) {
        throw bad();
    } catch (const std::out_of_range&) {
        throw bad();
    }
    if (fps.num <= 0 || fps.den <= 0) throw bad();
    return fps;
}

PixelFormat pixel_format_from_string(const std::string& name) {
    if (name == "yuv420p") return PixelFormat::kYuv420p;
    if (name == "gray8" || name == "gray") return PixelFormat::kGray8;
    throw std::invalid_argument("unsupported pixel format '" + name +
                                "' (expected yuv420p or gray8)");
}

std::string pixel_format_name(PixelFormat fmt) {
    switch (fmt) {
        case PixelFormat::kYuv420p: return "yuv420p";
        case PixelFormat::kGray8: return "gray8";
    }
    return "unknown";
}

LumaVideo spatial_downsample(const LumaVideo& video, int factor) {
    if (factor < 1) throw std::invalid_argument("downsample factor must be >= 1");
    if (factor > video.width || factor > video.height)
        throw std::invalid_argument("downsample factor " + std::to_string(factor) +
                                    " exceeds video dimensions (degenerate output)");
    if (factor == 1) return video;

    const int out_w = video.width / factor;
    const int out_h = video.height / factor;
    const double inv_area = 1.0 / (static_cast<double>(factor) * factor);

    LumaVideo out;
    out.width = out_w;
    out.height = out_h;
    out.fps = video.fps;
    out.source_bit_depth = video.source_bit_depth;
    out.frames.reserve(video.frames.size());

    for (const Frame& src : video.frames) {
        Frame dst(out_w, out_h);
        for (int by = 0; by < out_h; ++by) {
            for (int bx = 0; bx < out_w; ++bx) {
                double acc = 0.0;
                for (int y = by * factor; y < (by + 1) * factor; ++y)
                    for (int x = bx * factor; x < (bx + 1) * factor; ++x)
                        acc += src.at(y, x);
                dst.at(by, bx) = static_cast<float>(acc * inv_area);
            }
        }
        out.frames.push_back(std::move(dst));
    }
    return out;
}

namespace {

// Shared index rule for both temporal resamplers: output frame n maps to
// input frame floor(n * fps_in / fps_out), in exact integer arithmetic.
LumaVideo resample_by_index(const LumaVideo& video, Fps target_fps) {
    const std::int64_t num = video.fps.num * target_fps.den;  // fps_in / fps_out
    const std::int64_t den = video.fps.den * target_fps.num;
    const std::int64_t in_count = video.frame_count();

    // Smallest n with floor(n * num / den) >= in_count.
    const std::int64_t out_count = (in_count * den + num - 1) / num;

    LumaVideo out;
    out.width = video.width;
    out.height = video.height;
    out.fps = target_fps;
    out.source_bit_depth = video.source_bit_depth;
    out.frames.reserve(static_cast<std::size_t>(out_count));
    for (std::int64_t n = 0; n < out_count; ++n) {
        const std::int64_t src = n * num / den;
        out.frames.push_back(video.frames[static_cast<std::size_t>(src)]);
    }
    return out;
}

}  // namespace

LumaVideo temporal_downsample_drop(const LumaVideo& video, Fps target_fps) {
    if (target_fps.num <= 0 || target_fps.den <= 0)
        throw std::invalid_argument("target frame rate must be positive");
    if (target_fps > video.fps)
        throw std::invalid_argument("frame dropping requires target fps <= source fps");
    return resample_by_index(video, target_fps);
}

LumaVideo temporal_upsample_duplicate(const LumaVideo& video, Fps target_fps) {
    if (target_fps.num <= 0 || target_fps.den <= 0)
        throw std::invalid_argument("target frame rate must be positive");
    if (target_fps < video.fps)
        throw std::invalid_argument("frame duplication requires target fps >= source fps");
    return resample_by_index(video, target_fps);
}

}  // namespace gsti
