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

#include <iosfwd>
#include <string>

#include "gsti/video.hpp"

namespace gsti {

struct VideoMeta {
    int width = 0;
    int height = 0;
    Fps fps;
    int frame_count = 0;
    std::string pixel_format;
};

struct Y4mVideo {
    VideoMeta meta;
    LumaVideo video;
};

// Y4M demuxer, luma only. Accepts C420 variants and Cmono at 8 bits;
// chroma bytes are skipped. Throws std::runtime_error on a malformed
// header, an unsupported colorspace tag, or a truncated frame payload.
Y4mVideo parse_y4m(std::istream& stream);
Y4mVideo load_y4m(const std::string& path);

// Headerless planar reader. The file size must be an exact multiple of the
// per-frame byte size implied by the geometry and format.
LumaVideo load_raw_yuv(const std::string& path, int width, int height, Fps fps,
                       PixelFormat format);

}  // namespace gsti
