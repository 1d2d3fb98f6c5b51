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

#include "gsti/video_io.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gsti {

namespace {

constexpr char kY4mSignature[] = "YUV4MPEG2";

std::size_t chroma_bytes_420(int width, int height) {
    const std::size_t cw = (static_cast<std::size_t>(width) + 1) / 2;
    const std::size_t ch = (static_cast<std::size_t>(height) + 1) / 2;
    return 2 * cw * ch;
}

Frame read_luma_plane(std::istream& stream, int width, int height) {
    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> buf(n);
    stream.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(stream.gcount()) != n)
        throw std::runtime_error("truncated frame payload");
    Frame frame(width, height);
    for (std::size_t i = 0; i < n; ++i) frame.samples[i] = static_cast<float>(buf[i]);
    return frame;
}

}  // namespace

Y4mVideo parse_y4m(std::istream& stream) {
    std::string header;
    if (!std::getline(stream, header))
        throw std::runtime_error("y4m: malformed header (empty stream)");
    std::istringstream tokens(header);
    std::string signature;
    tokens >> signature;
    if (signature != kY4mSignature)
        throw std::runtime_error("y4m: malformed header (missing YUV4MPEG2 signature)");

    int width = 0, height = 0;
    Fps fps{0, 0};
    std::string colorspace = "420";  // Y4M default when no C tag is present
    std::string token;
    while (tokens >> token) {
        if (token.empty()) continue;
        const std::string value = token.substr(1);
        switch (token[0]) {
            case 'W': width = std::atoi(value.c_str()); break;
            case 'H': height = std::atoi(value.c_str()); break;
            case 'F': {
                const auto colon = value.find(':');
                if (colon == std::string::npos)
                    throw std::runtime_error("y4m: malformed header (bad F token '" +
                                             token + "')");
                fps.num = std::atoll(value.substr(0, colon).c_str());
                fps.den = std::atoll(value.substr(colon + 1).c_str());
                break;
            }
            case 'C': colorspace = value; break;
            case 'I':  // interlacing: full frames either way
            case 'A':  // pixel aspect ratio: irrelevant to luma statistics
            case 'X':  // comment
                break;
            default:
                throw std::runtime_error("y4m: malformed header (unknown token '" +
                                         token + "')");
        }
    }
    if (width <= 0 || height <= 0)
        throw std::runtime_error("y4m: malformed header (missing or bad W/H)");
    if (fps.num <= 0 || fps.den <= 0)
        throw std::runtime_error("y4m: malformed header (missing or bad F)");

    bool mono = false;
    if (colorspace == "mono") {
        mono = true;
    } else if (colorspace.rfind("420", 0) == 0) {
        // C420, C420jpeg, C420paldv, C420mpeg2 are all 8-bit 4:2:0 layouts;
        // C420p10 and friends are not.
        const std::string suffix = colorspace.substr(3);
        if (suffix != "" && suffix != "jpeg" && suffix != "paldv" && suffix != "mpeg2")
            throw std::runtime_error("y4m: unsupported colorspace tag C" + colorspace);
    } else {
        throw std::runtime_error("y4m: unsupported colorspace tag C" + colorspace);
    }

    Y4mVideo out;
    out.video.width = width;
    out.video.height = height;
    out.video.fps = fps;
    out.video.source_bit_depth = 8;

    const std::size_t skip = mono ? 0 : chroma_bytes_420(width, height);
    std::string frame_line;
    while (std::getline(stream, frame_line)) {
        if (frame_line.rfind("FRAME", 0) != 0)
            throw std::runtime_error("y4m: truncated frame payload (bad FRAME marker)");
        out.video.frames.push_back(read_luma_plane(stream, width, height));
        if (skip > 0) {
            stream.ignore(static_cast<std::streamsize>(skip));
            if (static_cast<std::size_t>(stream.gcount()) != skip)
                throw std::runtime_error("y4m: truncated frame payload");
        }
    }
    if (out.video.frames.empty())
        throw std::runtime_error("y4m: truncated frame payload (no FRAME markers)");

    out.meta.width = width;
    out.meta.height = height;
    out.meta.fps = fps;
    out.meta.frame_count = out.video.frame_count();
    out.meta.pixel_format = mono ? "gray8" : "yuv420p";
    return out;
}

Y4mVideo load_y4m(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");
    return parse_y4m(file);
}

LumaVideo load_raw_yuv(const std::string& path, int width, int height, Fps fps,
                       PixelFormat format) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("raw yuv: dimensions must be positive");
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");

    const std::size_t luma = static_cast<std::size_t>(width) * height;
    const std::size_t frame_bytes =
        format == PixelFormat::kYuv420p ? luma + chroma_bytes_420(width, height) : luma;

    std::error_code ec;
    const auto file_size = std::filesystem::file_size(path, ec);
    if (ec) throw std::runtime_error("cannot stat '" + path + "'");
    if (file_size == 0 || file_size % frame_bytes != 0)
        throw std::runtime_error("raw yuv: size mismatch: " + std::to_string(file_size) +
                                 " bytes is not a multiple of the " +
                                 std::to_string(frame_bytes) + "-byte frame size");

    LumaVideo video;
    video.width = width;
    video.height = height;
    video.fps = fps;
    video.source_bit_depth = 8;

    const std::size_t frame_count = file_size / frame_bytes;
    video.frames.reserve(frame_count);
    for (std::size_t i = 0; i < frame_count; ++i) {
        video.frames.push_back(read_luma_plane(file, width, height));
        if (frame_bytes > luma)
            file.ignore(static_cast<std::streamsize>(frame_bytes - luma));
    }
    return video;
}

}  // namespace gsti
