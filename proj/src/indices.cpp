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

#include "gsti/indices.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "gsti/ggd.hpp"

namespace gsti {

namespace {

// Runs fn(i) for i in [0, count) on `threads` workers over contiguous
// chunks. Workers write to disjoint, preallocated slots, so results are
// independent of the worker count and of scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::mutex error_mutex;
    std::exception_ptr error;
    auto run_chunk = [&](int begin, int end) {
        try {
            for (int i = begin; i < end; ++i) fn(i);
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads) - 1);
    const int chunk = (count + threads - 1) / threads;
    for (int w = 1; w < threads; ++w)
        pool.emplace_back(run_chunk, w * chunk, std::min(count, (w + 1) * chunk));
    run_chunk(0, std::min(count, chunk));
    for (auto& worker : pool) worker.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> block_entropies(const Frame& frame, const PipelineConfig& config) {
    const auto blocks = partition_blocks(frame, config.block_side);
    std::vector<double> out;
    out.reserve(blocks.size());
    for (const auto& block : blocks)
        out.push_back(scaled_entropy(block, config.noise_var).epsilon);
    return out;
}

void validate_block_geometry(const LumaVideo& video, const PipelineConfig& config) {
    if (config.block_side < 1) throw std::invalid_argument("block side must be >= 1");
    if (video.width < config.block_side || video.height < config.block_side)
        throw std::invalid_argument(
            "frames (" + std::to_string(video.width) + "x" + std::to_string(video.height) +
            ") are smaller than one " + std::to_string(config.block_side) + "x" +
            std::to_string(config.block_side) + " block");
}

}  // namespace

std::vector<std::vector<double>> partition_blocks(const Frame& frame, int block_side) {
    if (block_side < 1) throw std::invalid_argument("block side must be >= 1");
    if (frame.width < block_side || frame.height < block_side)
        throw std::invalid_argument("frame is smaller than one block");

    const int across = frame.width / block_side;
    const int down = frame.height / block_side;
    std::vector<std::vector<double>> blocks;
    blocks.reserve(static_cast<std::size_t>(across) * down);
    for (int by = 0; by < down; ++by) {
        for (int bx = 0; bx < across; ++bx) {
            std::vector<double> block;
            block.reserve(static_cast<std::size_t>(block_side) * block_side);
            for (int y = by * block_side; y < (by + 1) * block_side; ++y)
                for (int x = bx * block_side; x < (bx + 1) * block_side; ++x)
                    block.push_back(frame.at(y, x));
            blocks.push_back(std::move(block));
        }
    }
    return blocks;
}

EntropyField average_reference_entropies(const EntropyField& field, Fps fps_ref,
                                         Fps fps_dist) {
    if (fps_ref < fps_dist)
        throw std::invalid_argument("reference averaging requires fps_ref >= fps_dist");
    if (field.frame_count() == 0)
        throw std::invalid_argument("reference averaging produced zero output frames");

    // Source frame t' joins output group floor(t' / F), F = fps_ref/fps_dist,
    // in exact integer arithmetic; each output frame is its group mean.
    const std::int64_t a = fps_ref.den * fps_dist.num;
    const std::int64_t b = fps_ref.num * fps_dist.den;

    EntropyField out;
    out.kind = field.kind;
    out.fps = fps_dist;
    out.values.resize(field.values.size());

    const int in_frames = field.frame_count();
    const int out_frames = static_cast<int>((static_cast<std::int64_t>(in_frames - 1) * a) / b) + 1;
    for (std::size_t k = 0; k < field.values.size(); ++k) {
        const auto& src = field.values[k];
        auto& dst = out.values[k];
        dst.assign(static_cast<std::size_t>(out_frames), {});
        int t = 0;
        for (int g = 0; g < out_frames; ++g) {
            std::vector<double> acc(src[0].size(), 0.0);
            int members = 0;
            while (t < in_frames && (static_cast<std::int64_t>(t) * a) / b == g) {
                for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += src[static_cast<std::size_t>(t)][p];
                ++members;
                ++t;
            }
            for (double& v : acc) v /= members;
            dst[static_cast<std::size_t>(g)] = std::move(acc);
        }
    }
    return out;
}

double gti_frame(std::span<const double> eps_ref_avg, std::span<const double> eps_dist,
                 std::span<const double> eps_pr) {
    if (eps_ref_avg.size() != eps_dist.size() || eps_dist.size() != eps_pr.size())
        throw std::invalid_argument("gti: block-count mismatch");
    if (eps_ref_avg.empty()) throw std::invalid_argument("gti: empty block set");
    double acc = 0.0;
    for (std::size_t p = 0; p < eps_ref_avg.size(); ++p) {
        const double diff = std::abs(eps_dist[p] - eps_pr[p]);
        const double ratio = (eps_ref_avg[p] + 1.0) / (eps_pr[p] + 1.0);
        acc += std::abs((1.0 + diff) * ratio - 1.0);
    }
    return acc / static_cast<double>(eps_ref_avg.size());
}

double gsi_frame(std::span<const double> theta_ref_avg,
                 std::span<const double> theta_dist) {
    if (theta_ref_avg.size() != theta_dist.size())
        throw std::invalid_argument("gsi: block-count mismatch");
    if (theta_ref_avg.empty()) throw std::invalid_argument("gsi: empty block set");
    double acc = 0.0;
    for (std::size_t p = 0; p < theta_ref_avg.size(); ++p)
        acc += std::abs(theta_dist[p] - theta_ref_avg[p]);
    return acc / static_cast<double>(theta_ref_avg.size());
}

double gsti_frame(double gti, double gsi) { return gti * gsi; }

double pool(std::span<const double> per_frame) {
    if (per_frame.empty()) throw std::invalid_argument("pool: empty trace");
    double acc = 0.0;
    for (const double v : per_frame) acc += v;
    return acc / static_cast<double>(per_frame.size());
}

EntropyField temporal_entropy_field(const LumaVideo& video, const TemporalFilterBank& bank,
                                    const PipelineConfig& config) {
    validate_block_geometry(video, config);
    if (video.frame_count() < bank.filter_length())
        throw std::invalid_argument("too few frames for the temporal filter support");

    EntropyField field;
    field.kind = EntropyKind::kTemporal;
    field.fps = video.fps;
    field.values.resize(static_cast<std::size_t>(bank.subband_count()));
    for (int k = 0; k < bank.subband_count(); ++k) {
        const SubbandVideo subband =
            temporal_filter(video, bank.filters[static_cast<std::size_t>(k)]);
        auto& frames = field.values[static_cast<std::size_t>(k)];
        frames.resize(subband.frames.size());
        parallel_for(static_cast<int>(subband.frames.size()), config.threads, [&](int t) {
            frames[static_cast<std::size_t>(t)] =
                block_entropies(subband.frames[static_cast<std::size_t>(t)], config);
        });
    }
    return field;
}

EntropyField spatial_entropy_field(const LumaVideo& video, const PipelineConfig& config) {
    validate_block_geometry(video, config);
    if (video.frame_count() == 0) throw std::invalid_argument("empty video");

    EntropyField field;
    field.kind = EntropyKind::kSpatial;
    field.fps = video.fps;
    field.values.resize(1);
    auto& frames = field.values[0];
    frames.resize(video.frames.size());
    parallel_for(video.frame_count(), config.threads, [&](int t) {
        const Frame ms = spatial_ms(video.frames[static_cast<std::size_t>(t)]);
        frames[static_cast<std::size_t>(t)] = block_entropies(ms, config);
    });
    return field;
}

GstiReport score_pipeline(const LumaVideo& ref, const LumaVideo& dist,
                          const PipelineConfig& config) {
    if (ref.width != dist.width || ref.height != dist.height)
        throw std::invalid_argument("resolution mismatch: " + std::to_string(ref.width) +
                                    "x" + std::to_string(ref.height) + " vs " +
                                    std::to_string(dist.width) + "x" +
                                    std::to_string(dist.height));
    if (dist.fps > ref.fps)
        throw std::invalid_argument("distorted fps exceeds reference fps");

    const TemporalFilterBank bank = build_haar_packet(config.levels);
    const int subbands = bank.subband_count();
    if (config.primary_subband < 1 || config.primary_subband > subbands)
        throw std::invalid_argument("primary subband out of range");

    const LumaVideo ref_ds = spatial_downsample(ref, config.downsample);
    const LumaVideo dist_ds = spatial_downsample(dist, config.downsample);
    const LumaVideo pr = temporal_downsample_drop(ref_ds, dist.fps);

    if (dist_ds.frame_count() < bank.filter_length() ||
        pr.frame_count() < bank.filter_length())
        throw std::invalid_argument("videos too short for the temporal filter support (" +
                                    std::to_string(bank.filter_length()) + " frames)");

    // Temporal path: subband entropies for R, D and PR; reference entropies
    // averaged onto the distorted timeline; all fields truncated to their
    // shortest common frame count before differencing.
    const EntropyField eps_ref_avg = average_reference_entropies(
        temporal_entropy_field(ref_ds, bank, config), ref.fps, dist.fps);
    const EntropyField eps_dist = temporal_entropy_field(dist_ds, bank, config);
    const EntropyField eps_pr = temporal_entropy_field(pr, bank, config);

    const int temporal_frames = std::min(
        {eps_ref_avg.frame_count(), eps_dist.frame_count(), eps_pr.frame_count()});

    std::vector<std::vector<double>> gti(static_cast<std::size_t>(subbands));
    for (int k = 0; k < subbands; ++k) {
        auto& trace = gti[static_cast<std::size_t>(k)];
        trace.resize(static_cast<std::size_t>(temporal_frames));
        for (int t = 0; t < temporal_frames; ++t)
            trace[static_cast<std::size_t>(t)] =
                gti_frame(eps_ref_avg.values[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)],
                          eps_dist.values[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)],
                          eps_pr.values[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)]);
    }

    // Spatial path: mean-subtracted entropies with the same reference
    // averaging rule.
    const EntropyField theta_ref_avg = average_reference_entropies(
        spatial_entropy_field(ref_ds, config), ref.fps, dist.fps);
    const EntropyField theta_dist = spatial_entropy_field(dist_ds, config);

    const int spatial_frames =
        std::min(theta_ref_avg.frame_count(), theta_dist.frame_count());
    std::vector<double> gsi(static_cast<std::size_t>(spatial_frames));
    for (int t = 0; t < spatial_frames; ++t)
        gsi[static_cast<std::size_t>(t)] = gsi_frame(theta_ref_avg.values[0][static_cast<std::size_t>(t)],
                                                     theta_dist.values[0][static_cast<std::size_t>(t)]);

    const int common_frames = std::min(temporal_frames, spatial_frames);
    if (common_frames < 1)
        throw std::invalid_argument("no overlapping frames between temporal and spatial traces");

    GstiReport report;
    report.levels = config.levels;
    report.block_side = config.block_side;
    report.noise_var = config.noise_var;
    report.downsample = config.downsample;
    report.primary_subband = config.primary_subband;
    report.width = ref.width;
    report.height = ref.height;
    report.ref_fps = ref.fps;
    report.dist_fps = dist.fps;
    report.ref_frames = ref.frame_count();
    report.dist_frames = dist.frame_count();

    report.subband_scores.resize(static_cast<std::size_t>(subbands));
    std::vector<std::vector<double>> gsti(static_cast<std::size_t>(subbands));
    for (int k = 0; k < subbands; ++k) {
        auto& trace = gsti[static_cast<std::size_t>(k)];
        trace.resize(static_cast<std::size_t>(common_frames));
        for (int t = 0; t < common_frames; ++t)
            trace[static_cast<std::size_t>(t)] =
                gsti_frame(gti[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)],
                           gsi[static_cast<std::size_t>(t)]);
        report.subband_scores[static_cast<std::size_t>(k)] = pool(trace);
        if (!std::isfinite(report.subband_scores[static_cast<std::size_t>(k)]))
            throw std::runtime_error("non-finite subband score");
    }
    report.primary_score =
        report.subband_scores[static_cast<std::size_t>(config.primary_subband - 1)];

    if (config.keep_traces) {
        report.gti_trace = std::move(gti);
        report.gsi_trace = std::move(gsi);
        report.gsti_trace = std::move(gsti);
    }
    return report;
}

std::string report_to_json(const GstiReport& report) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["config"] = {{"levels", report.levels},
                     {"block_side", report.block_side},
                     {"noise_var", report.noise_var},
                     {"downsample", report.downsample},
                     {"primary_subband", report.primary_subband}};
    doc["input"] = {{"width", report.width},
                    {"height", report.height},
                    {"ref_fps", report.ref_fps.str()},
                    {"dist_fps", report.dist_fps.str()},
                    {"ref_frames", report.ref_frames},
                    {"dist_frames", report.dist_frames}};
    doc["scores"] = {{"subband_gsti", report.subband_scores},
                     {"primary_score", report.primary_score}};
    if (!report.gsi_trace.empty()) {
        doc["traces"] = {{"gti", report.gti_trace},
                         {"gsi", report.gsi_trace},
                         {"gsti", report.gsti_trace}};
    }
    return doc.dump(2) + "\n";
}

}  // namespace gsti
