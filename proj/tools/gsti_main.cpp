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
//
// gsti: full-reference video quality toolchain.
//
//   gsti score --ref ref.y4m --dist dist.y4m --out report.json
//   gsti psnr  --ref ref.y4m --dist dist.y4m
//   gsti eval  scores.csv [--out report.json]
//   gsti hist  --ref video.y4m --subband 1 [--bins N --bin-range R]
//
// Raw planar input needs --width/--height/--pix-fmt plus the fps flags.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "gsti/eval.hpp"
#include "gsti/histogram.hpp"
#include "gsti/indices.hpp"
#include "gsti/video_io.hpp"

namespace {

constexpr int kExitProcessing = 1;
constexpr int kExitUsage = 2;

struct InputFlags {
    std::string ref_path;
    std::string dist_path;
    std::string ref_fps;
    std::string dist_fps;
    int width = 0;
    int height = 0;
    std::string pix_fmt = "yuv420p";
};

bool is_y4m(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".y4m") == 0;
}

// Loads one input; Y4M carries its own geometry, raw planar input needs the
// explicit flags. A user fps overrides the container fps.
gsti::LumaVideo load_input(const std::string& path, const InputFlags& flags,
                           const std::string& fps_flag) {
    if (is_y4m(path)) {
        gsti::Y4mVideo y4m = gsti::load_y4m(path);
        if (!fps_flag.empty()) y4m.video.fps = gsti::parse_fps(fps_flag);
        return std::move(y4m.video);
    }
    if (flags.width <= 0 || flags.height <= 0)
        throw CLI::ValidationError("--width and --height are required for raw input");
    if (fps_flag.empty())
        throw CLI::ValidationError("an fps flag is required for raw input");
    return gsti::load_raw_yuv(path, flags.width, flags.height, gsti::parse_fps(fps_flag),
                              gsti::pixel_format_from_string(flags.pix_fmt));
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    file << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GSTI video quality assessment"};
    app.require_subcommand(1);

    InputFlags in;
    gsti::PipelineConfig config;
    std::string out_path;
    bool verbose = false;
    int bins = 101;
    double bin_range = 0.0;  // 0 = span of the data

    auto add_common = [&](CLI::App* cmd, bool needs_dist) {
        cmd->add_option("--ref", in.ref_path, "reference video (.y4m or raw planar)")
            ->required();
        if (needs_dist)
            cmd->add_option("--dist", in.dist_path, "distorted video")->required();
        cmd->add_option("--ref-fps", in.ref_fps, "reference fps, N or N/D");
        if (needs_dist) cmd->add_option("--dist-fps", in.dist_fps, "distorted fps");
        cmd->add_option("--width", in.width, "raw input width");
        cmd->add_option("--height", in.height, "raw input height");
        cmd->add_option("--pix-fmt", in.pix_fmt, "raw input format: yuv420p or gray8");
        cmd->add_option("--out", out_path, "output file path");
    };

    CLI::App* score = app.add_subcommand("score", "compute the GSTI quality score");
    add_common(score, true);
    score->add_option("--levels", config.levels, "wavelet packet levels")
        ->check(CLI::Range(1, 6));
    score->add_option("--block", config.block_side, "entropy block side");
    score->add_option("--noise-var", config.noise_var, "neural noise variance");
    score->add_option("--downsample", config.downsample, "spatial downsample factor");
    score->add_option("--subband", config.primary_subband, "headline subband index");
    score->add_option("--threads", config.threads, "worker threads (output-invariant)");
    score->add_flag("--verbose", verbose, "include per-frame traces in the report");

    CLI::App* psnr = app.add_subcommand("psnr", "frame-duplication-aligned luma PSNR");
    add_common(psnr, true);

    CLI::App* eval = app.add_subcommand("eval", "correlate predictions with MOS");
    std::string csv_path;
    eval->add_option("csv", csv_path, "records: video_id,fps,predicted,subjective[,content_id]")
        ->required();
    eval->add_option("--out", out_path, "JSON report path");

    CLI::App* hist = app.add_subcommand("hist", "subband coefficient histogram CSV");
    add_common(hist, false);
    hist->add_option("--levels", config.levels, "wavelet packet levels")
        ->check(CLI::Range(1, 6));
    hist->add_option("--downsample", config.downsample, "spatial downsample factor");
    hist->add_option("--subband", config.primary_subband, "subband index k");
    hist->add_option("--bins", bins, "histogram bin count");
    hist->add_option("--bin-range", bin_range, "half range; 0 = fit to data");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (score->parsed() || hist->parsed()) {
            const int max_subband = (1 << config.levels) - 1;
            if (config.primary_subband < 1 || config.primary_subband > max_subband)
                throw CLI::ValidationError("--subband must be in [1, " +
                                           std::to_string(max_subband) + "]");
        }
        if (score->parsed()) {
            config.keep_traces = verbose;
            const gsti::LumaVideo ref = load_input(in.ref_path, in, in.ref_fps);
            const gsti::LumaVideo dist = load_input(in.dist_path, in, in.dist_fps);
            const gsti::GstiReport report = gsti::score_pipeline(ref, dist, config);
            const std::string json = gsti::report_to_json(report);
            if (!out_path.empty()) write_text_file(out_path, json);
            std::printf("%.9f\n", report.primary_score);
        } else if (psnr->parsed()) {
            const gsti::LumaVideo ref = load_input(in.ref_path, in, in.ref_fps);
            const gsti::LumaVideo dist = load_input(in.dist_path, in, in.dist_fps);
            std::printf("%.6f\n", gsti::psnr_video(ref, dist));
        } else if (eval->parsed()) {
            std::vector<gsti::EvalRecord> records;
            try {
                records = gsti::load_eval_csv_file(csv_path);
            } catch (const std::invalid_argument& e) {
                // Header/shape problems are usage errors, not processing ones.
                throw CLI::ValidationError(e.what());
            }
            const gsti::EvalReport report = gsti::eval_report(records);
            if (!out_path.empty()) write_text_file(out_path, gsti::eval_report_to_json(report));
            std::fputs(gsti::eval_report_table(report).c_str(), stdout);
        } else if (hist->parsed()) {
            const gsti::LumaVideo video = load_input(in.ref_path, in, in.ref_fps);
            const auto coeffs =
                gsti::subband_coefficients(video, config.primary_subband, config);
            double half_range = bin_range;
            if (half_range <= 0.0) {
                for (const double v : coeffs) half_range = std::max(half_range, std::abs(v));
                if (half_range == 0.0) half_range = 1.0;
            }
            const gsti::Histogram h = gsti::histogram(coeffs, bins, half_range);
            std::string csv = "bin_center,frequency\n";
            char line[64];
            for (std::size_t i = 0; i < h.centers.size(); ++i) {
                std::snprintf(line, sizeof(line), "%.9g,%.9g\n", h.centers[i],
                              h.frequency[i]);
                csv += line;
            }
            if (!out_path.empty())
                write_text_file(out_path, csv);
            else
                std::fputs(csv.c_str(), stdout);
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "gsti: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "gsti: %s\n", e.what());
        return kExitProcessing;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "gsti: %s\n", e.what());
        return kExitProcessing;
    }
    return 0;
}
