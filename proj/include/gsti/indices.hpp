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

#include <span>
#include <string>
#include <vector>

#include "gsti/bandpass.hpp"
#include "gsti/video.hpp"

namespace gsti {

enum class EntropyKind { kTemporal, kSpatial };

// Scaled entropies indexed by (subband k, frame t, block p). Spatial fields
// use a single k slot. Every frame of a field carries the same block count.
struct EntropyField {
    EntropyKind kind = EntropyKind::kTemporal;
    Fps fps;
    std::vector<std::vector<std::vector<double>>> values;  // [k][t][p]

    int subbands() const { return static_cast<int>(values.size()); }
    int frame_count() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }
    int block_count() const {
        return frame_count() == 0 ? 0 : static_cast<int>(values[0][0].size());
    }
};

// Non-overlapping block_side x block_side tiles in raster order; trailing
// partial tiles are discarded. Throws if the frame is smaller than one tile.
std::vector<std::vector<double>> partition_blocks(const Frame& frame, int block_side);

// Temporal averaging of reference entropies onto the distorted timeline.
// With F = fps_ref / fps_dist, source frame t' (1-based) lands in output
// group floor((t'-1)/F) + 1 and each output is its group mean. Integer F
// reduces to the mean of frames (t-1)F+1 .. tF.
EntropyField average_reference_entropies(const EntropyField& field, Fps fps_ref,
                                         Fps fps_dist);

// Generalized Temporal Index for one (subband, frame):
// (1/P) sum_p | (1 + |e_D - e_PR|) * (e_R + 1) / (e_PR + 1) - 1 |.
// Zero only when D = PR = R; the ratio term keeps it nonzero when the
// distorted video is a frame-dropped copy of the reference.
double gti_frame(std::span<const double> eps_ref_avg, std::span<const double> eps_dist,
                 std::span<const double> eps_pr);

// Generalized Spatial Index for one frame: (1/P) sum_p |th_D - th_R|.
double gsi_frame(std::span<const double> theta_ref_avg,
                 std::span<const double> theta_dist);

// Per-frame spatio-temporal index.
double gsti_frame(double gti, double gsi);

// Average pooling over frames. Throws on an empty trace.
double pool(std::span<const double> per_frame);

struct PipelineConfig {
    int levels = 3;           // temporal wavelet-packet depth, 7 subbands
    int block_side = 5;       // sqrt(M)
    double noise_var = 0.1;   // sigma_W^2, native luma scale
    int downsample = 16;      // spatial mean-pool factor, both dimensions
    int primary_subband = 1;  // headline subband
    int threads = 1;          // worker count; never affects output values
    bool keep_traces = false;
};

struct GstiReport {
    // Config echo (threads excluded: parallelism never changes the bytes).
    int levels = 0;
    int block_side = 0;
    double noise_var = 0.0;
    int downsample = 0;
    int primary_subband = 0;

    int width = 0;
    int height = 0;
    Fps ref_fps, dist_fps;
    int ref_frames = 0;
    int dist_frames = 0;

    std::vector<double> subband_scores;  // pooled GSTI_k, k = 1..K
    double primary_score = 0.0;

    // Per-frame traces, populated when keep_traces is set. GTI and GSI keep
    // their natural lengths; GSTI is their product over the common prefix.
    std::vector<std::vector<double>> gti_trace;   // [k][t]
    std::vector<double> gsi_trace;                // [t]
    std::vector<std::vector<double>> gsti_trace;  // [k][t]
};

// Blockwise scaled entropies of every temporal subband of a (spatially
// downsampled) video. Exposed for tests and analysis tools.
EntropyField temporal_entropy_field(const LumaVideo& video, const TemporalFilterBank& bank,
                                    const PipelineConfig& config);

// Blockwise scaled entropies of the mean-subtracted frames.
EntropyField spatial_entropy_field(const LumaVideo& video, const PipelineConfig& config);

// Full metric: downsample both inputs, build the pseudo-reference by frame
// dropping, fit subband and MS entropies, average the reference terms onto
// the distorted timeline, and assemble GTI/GSI/GSTI with average pooling.
// Entropy fields are truncated to their shortest common frame count before
// differencing. Requires equal resolutions and dist.fps <= ref.fps.
GstiReport score_pipeline(const LumaVideo& ref, const LumaVideo& dist,
                          const PipelineConfig& config);

// Stable single-document JSON rendering of a report.
std::string report_to_json(const GstiReport& report);

}  // namespace gsti
