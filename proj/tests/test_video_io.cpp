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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "gsti/video.hpp"
#include "gsti/video_io.hpp"
#include "test_support.hpp"

using gsti::Fps;
using gsti::LumaVideo;

namespace {

std::string y4m_bytes(const std::string& header, int frames, int w, int h,
                      std::uint8_t luma, std::size_t chroma_bytes) {
    std::string bytes = header;
    for (int t = 0; t < frames; ++t) {
        bytes += "FRAME\n";
        bytes.append(static_cast<std::size_t>(w) * h, static_cast<char>(luma));
        bytes.append(chroma_bytes, static_cast<char>(128));
    }
    return bytes;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("gsti_video_io_" + name);
}

}  // namespace

TEST_CASE("parse_y4m reads a minimal 4x4 C420 fixture") {
    std::istringstream stream(
        y4m_bytes("YUV4MPEG2 W4 H4 F30:1 Ip A1:1 C420\n", 1, 4, 4, 128, 8));
    const gsti::Y4mVideo y4m = gsti::parse_y4m(stream);
    CHECK(y4m.meta.width == 4);
    CHECK(y4m.meta.height == 4);
    CHECK(y4m.meta.frame_count == 1);
    CHECK(y4m.video.fps == Fps{30, 1});
    REQUIRE(y4m.video.frame_count() == 1);
    for (const float v : y4m.video.frames[0].samples) CHECK(v == 128.0f);
}

TEST_CASE("parse_y4m header-only stream is a truncated payload") {
    std::istringstream stream("YUV4MPEG2 W4 H4 F30:1\n");
    CHECK_THROWS_WITH_AS(gsti::parse_y4m(stream),
                         doctest::Contains("truncated frame payload"),
                         std::runtime_error);
}

TEST_CASE("parse_y4m picks up the header rational") {
    std::istringstream stream(
        y4m_bytes("YUV4MPEG2 W4 H2 F120:1 Cmono\n", 2, 4, 2, 7, 0));
    const gsti::Y4mVideo y4m = gsti::parse_y4m(stream);
    CHECK(y4m.video.fps == Fps{120, 1});
    CHECK(y4m.video.fps.num == 120);
    CHECK(y4m.video.fps.den == 1);
    CHECK(y4m.meta.pixel_format == "gray8");
}

TEST_CASE("parse_y4m rejects bad headers and colorspaces") {
    SUBCASE("missing signature") {
        std::istringstream stream("JUNK W4 H4 F30:1\n");
        CHECK_THROWS_WITH_AS(gsti::parse_y4m(stream), doctest::Contains("malformed"),
                             std::runtime_error);
    }
    SUBCASE("missing geometry") {
        std::istringstream stream("YUV4MPEG2 F30:1\n");
        CHECK_THROWS_AS(gsti::parse_y4m(stream), std::runtime_error);
    }
    SUBCASE("missing frame rate") {
        std::istringstream stream("YUV4MPEG2 W4 H4\nFRAME\n");
        CHECK_THROWS_AS(gsti::parse_y4m(stream), std::runtime_error);
    }
    SUBCASE("4:4:4 is unsupported") {
        std::istringstream stream(y4m_bytes("YUV4MPEG2 W4 H4 F30:1 C444\n", 1, 4, 4, 0, 32));
        CHECK_THROWS_WITH_AS(gsti::parse_y4m(stream),
                             doctest::Contains("unsupported colorspace"),
                             std::runtime_error);
    }
    SUBCASE("10-bit is an explicit error, not a truncation") {
        std::istringstream stream(y4m_bytes("YUV4MPEG2 W4 H4 F30:1 C420p10\n", 1, 4, 4, 0, 8));
        CHECK_THROWS_WITH_AS(gsti::parse_y4m(stream),
                             doctest::Contains("unsupported colorspace"),
                             std::runtime_error);
    }
    SUBCASE("chroma truncation is detected") {
        std::string bytes = y4m_bytes("YUV4MPEG2 W4 H4 F30:1 C420\n", 1, 4, 4, 0, 8);
        bytes.resize(bytes.size() - 3);
        std::istringstream stream(bytes);
        CHECK_THROWS_WITH_AS(gsti::parse_y4m(stream), doctest::Contains("truncated"),
                             std::runtime_error);
    }
}

TEST_CASE("load_raw_yuv reads frames in order and validates sizes") {
    const auto path = temp_file("raw.yuv");

    SUBCASE("single zero frame, 24 bytes of yuv420p") {
        std::ofstream(path, std::ios::binary) << std::string(24, '\0');
        const LumaVideo v = gsti::load_raw_yuv(path.string(), 4, 4, {30, 1},
                                               gsti::PixelFormat::kYuv420p);
        CHECK(v.frame_count() == 1);
        for (const float s : v.frames[0].samples) CHECK(s == 0.0f);
    }
    SUBCASE("36 bytes is not a multiple of the 24-byte frame") {
        std::ofstream(path, std::ios::binary) << std::string(36, '\0');
        CHECK_THROWS_WITH_AS(gsti::load_raw_yuv(path.string(), 4, 4, {30, 1},
                                                gsti::PixelFormat::kYuv420p),
                             doctest::Contains("size mismatch"), std::runtime_error);
    }
    SUBCASE("two frames keep file order") {
        std::string bytes(48, '\0');
        for (int i = 0; i < 16; ++i) bytes[static_cast<std::size_t>(i)] = 10;
        for (int i = 24; i < 40; ++i) bytes[static_cast<std::size_t>(i)] = 20;
        std::ofstream(path, std::ios::binary) << bytes;
        const LumaVideo v = gsti::load_raw_yuv(path.string(), 4, 4, {30, 1},
                                               gsti::PixelFormat::kYuv420p);
        REQUIRE(v.frame_count() == 2);
        CHECK(v.frames[0].at(0, 0) == 10.0f);
        CHECK(v.frames[1].at(0, 0) == 20.0f);
    }
    SUBCASE("unreadable path") {
        CHECK_THROWS_AS(gsti::load_raw_yuv("/nonexistent/file.yuv", 4, 4, {30, 1},
                                           gsti::PixelFormat::kGray8),
                        std::runtime_error);
    }
    std::filesystem::remove(path);
}

TEST_CASE("parse_y4m and load_raw_yuv agree on the same frames") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dist(0, 255);
    const LumaVideo source = testsupport::make_video(
        6, 4, 5, {60, 1}, [&](int, int, int) { return static_cast<float>(dist(rng)); });

    const auto y4m_path = temp_file("agree.y4m");
    const auto raw_path = temp_file("agree.yuv");

    for (const bool mono : {true, false}) {
        CAPTURE(mono);
        testsupport::write_y4m(y4m_path.string(), source, mono);
        testsupport::write_raw(raw_path.string(), source, !mono);
        const gsti::Y4mVideo from_y4m = gsti::load_y4m(y4m_path.string());
        const LumaVideo from_raw = gsti::load_raw_yuv(
            raw_path.string(), 6, 4, {60, 1},
            mono ? gsti::PixelFormat::kGray8 : gsti::PixelFormat::kYuv420p);
        REQUIRE(from_y4m.video.frame_count() == from_raw.frame_count());
        for (int t = 0; t < from_raw.frame_count(); ++t)
            CHECK(from_y4m.video.frames[static_cast<std::size_t>(t)].samples ==
                  from_raw.frames[static_cast<std::size_t>(t)].samples);
    }
    std::filesystem::remove(y4m_path);
    std::filesystem::remove(raw_path);
}

TEST_CASE("spatial_downsample") {
    SUBCASE("mean of a constant is the constant") {
        const LumaVideo v =
            testsupport::make_video(32, 32, 2, {30, 1}, [](int, int, int) { return 128.0f; });
        const LumaVideo d = gsti::spatial_downsample(v, 16);
        CHECK(d.width == 2);
        CHECK(d.height == 2);
        CHECK(d.fps == v.fps);
        for (const auto& f : d.frames)
            for (const float s : f.samples) CHECK(s == 128.0f);
    }
    SUBCASE("16x16 ramp 0..255 pools to its mean 127.5") {
        const LumaVideo v = testsupport::make_video(
            16, 16, 1, {30, 1},
            [](int x, int y, int) { return static_cast<float>(y * 16 + x); });
        const LumaVideo d = gsti::spatial_downsample(v, 16);
        REQUIRE(d.width == 1);
        REQUIRE(d.height == 1);
        CHECK(d.frames[0].at(0, 0) == doctest::Approx(127.5).epsilon(1e-9));
    }
    SUBCASE("factor 1 is the identity") {
        const LumaVideo v = testsupport::drifting_gradient(17, 9, 3, {30, 1});
        const LumaVideo d = gsti::spatial_downsample(v, 1);
        for (int t = 0; t < 3; ++t)
            CHECK(d.frames[static_cast<std::size_t>(t)].samples ==
                  v.frames[static_cast<std::size_t>(t)].samples);
    }
    SUBCASE("factor beyond a dimension is degenerate") {
        const LumaVideo v =
            testsupport::make_video(8, 4, 1, {30, 1}, [](int, int, int) { return 1.0f; });
        CHECK_THROWS_WITH_AS(gsti::spatial_downsample(v, 5), doctest::Contains("degenerate"),
                             std::invalid_argument);
    }
    SUBCASE("global mean of the retained region is preserved") {
        std::mt19937 rng(1234);
        std::uniform_real_distribution<float> dist(0.0f, 255.0f);
        const LumaVideo v = testsupport::make_video(
            23, 17, 2, {30, 1}, [&](int, int, int) { return dist(rng); });
        const LumaVideo d = gsti::spatial_downsample(v, 4);
        for (int t = 0; t < 2; ++t) {
            double src_mean = 0.0;
            for (int y = 0; y < 16; ++y)
                for (int x = 0; x < 20; ++x)
                    src_mean += v.frames[static_cast<std::size_t>(t)].at(y, x);
            src_mean /= 16.0 * 20.0;
            double dst_mean = 0.0;
            for (const float s : d.frames[static_cast<std::size_t>(t)].samples) dst_mean += s;
            dst_mean /= static_cast<double>(d.frames[static_cast<std::size_t>(t)].samples.size());
            CHECK(dst_mean == doctest::Approx(src_mean).epsilon(1e-5));
        }
    }
}

namespace {

LumaVideo tagged_frames(int count, Fps fps) {
    return testsupport::make_video(4, 4, count, fps,
                                   [](int, int, int t) { return static_cast<float>(t); });
}

}  // namespace

TEST_CASE("temporal_downsample_drop") {
    SUBCASE("120 to 30 fps keeps every fourth frame") {
        const LumaVideo v = tagged_frames(8, {120, 1});
        const LumaVideo d = gsti::temporal_downsample_drop(v, {30, 1});
        REQUIRE(d.frame_count() == 2);
        CHECK(d.frames[0].at(0, 0) == 0.0f);
        CHECK(d.frames[1].at(0, 0) == 4.0f);
        CHECK(d.fps == Fps{30, 1});
    }
    SUBCASE("matching rate is the identity") {
        const LumaVideo v = tagged_frames(5, {60, 1});
        const LumaVideo d = gsti::temporal_downsample_drop(v, {60, 1});
        REQUIRE(d.frame_count() == 5);
        for (int t = 0; t < 5; ++t)
            CHECK(d.frames[static_cast<std::size_t>(t)].samples ==
                  v.frames[static_cast<std::size_t>(t)].samples);
    }
    SUBCASE("60 to 30 fps keeps indices 0 2 4") {
        const LumaVideo v = tagged_frames(6, {60, 1});
        const LumaVideo d = gsti::temporal_downsample_drop(v, {30, 1});
        REQUIRE(d.frame_count() == 3);
        CHECK(d.frames[0].at(0, 0) == 0.0f);
        CHECK(d.frames[1].at(0, 0) == 2.0f);
        CHECK(d.frames[2].at(0, 0) == 4.0f);
    }
    SUBCASE("invalid targets") {
        const LumaVideo v = tagged_frames(4, {60, 1});
        CHECK_THROWS_AS(gsti::temporal_downsample_drop(v, {0, 1}), std::invalid_argument);
        CHECK_THROWS_AS(gsti::temporal_downsample_drop(v, {120, 1}), std::invalid_argument);
    }
}

TEST_CASE("temporal_upsample_duplicate") {
    SUBCASE("30 to 120 fps repeats each frame four times") {
        const LumaVideo v = tagged_frames(2, {30, 1});
        const LumaVideo u = gsti::temporal_upsample_duplicate(v, {120, 1});
        REQUIRE(u.frame_count() == 8);
        const float expect[] = {0, 0, 0, 0, 1, 1, 1, 1};
        for (int t = 0; t < 8; ++t)
            CHECK(u.frames[static_cast<std::size_t>(t)].at(0, 0) == expect[t]);
    }
    SUBCASE("matching rate is the identity") {
        const LumaVideo v = tagged_frames(3, {24, 1});
        const LumaVideo u = gsti::temporal_upsample_duplicate(v, {24, 1});
        CHECK(u.frame_count() == 3);
    }
    SUBCASE("60 to 120 fps doubles frames") {
        const LumaVideo v = tagged_frames(3, {60, 1});
        const LumaVideo u = gsti::temporal_upsample_duplicate(v, {120, 1});
        REQUIRE(u.frame_count() == 6);
        const float expect[] = {0, 0, 1, 1, 2, 2};
        for (int t = 0; t < 6; ++t)
            CHECK(u.frames[static_cast<std::size_t>(t)].at(0, 0) == expect[t]);
    }
    SUBCASE("downsampling through the duplicate op is rejected") {
        const LumaVideo v = tagged_frames(4, {120, 1});
        CHECK_THROWS_AS(gsti::temporal_upsample_duplicate(v, {60, 1}), std::invalid_argument);
    }
}

TEST_CASE("upsample then drop round-trips exactly") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> dist(0, 255);
    const LumaVideo v = testsupport::make_video(
        5, 3, 7, {24, 1}, [&](int, int, int) { return static_cast<float>(dist(rng)); });
    for (const int k : {1, 2, 3, 5}) {
        CAPTURE(k);
        const LumaVideo up = gsti::temporal_upsample_duplicate(v, {24 * k, 1});
        const LumaVideo back = gsti::temporal_downsample_drop(up, {24, 1});
        REQUIRE(back.frame_count() == v.frame_count());
        for (int t = 0; t < v.frame_count(); ++t)
            CHECK(back.frames[static_cast<std::size_t>(t)].samples ==
                  v.frames[static_cast<std::size_t>(t)].samples);
    }
}

TEST_CASE("parse_fps accepts integers and rationals only") {
    CHECK(gsti::parse_fps("120") == Fps{120, 1});
    CHECK(gsti::parse_fps("30000/1001") == Fps{30000, 1001});
    CHECK_THROWS_AS(gsti::parse_fps("29.97"), std::invalid_argument);
    CHECK_THROWS_AS(gsti::parse_fps("0"), std::invalid_argument);
    CHECK_THROWS_AS(gsti::parse_fps("-30"), std::invalid_argument);
    CHECK_THROWS_AS(gsti::parse_fps(""), std::invalid_argument);
}
