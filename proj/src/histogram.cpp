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

#include "gsti/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsti {

Histogram histogram(std::span<const double> values, int bins, double half_range) {
    if (bins < 1) throw std::invalid_argument("histogram needs at least 1 bin");
    if (values.empty()) throw std::invalid_argument("histogram of empty sample");
    if (!(half_range > 0.0)) throw std::invalid_argument("histogram range must be positive");

    Histogram h;
    h.centers.resize(static_cast<std::size_t>(bins));
    h.frequency.assign(static_cast<std::size_t>(bins), 0.0);
    const double width = 2.0 * half_range / bins;
    for (int i = 0; i < bins; ++i)
        h.centers[static_cast<std::size_t>(i)] = -half_range + (i + 0.5) * width;

    for (const double v : values) {
        int bin = static_cast<int>(std::floor((v + half_range) / width));
        bin = std::clamp(bin, 0, bins - 1);
        h.frequency[static_cast<std::size_t>(bin)] += 1.0;
    }
    const double inv_n = 1.0 / static_cast<double>(values.size());
    for (double& f : h.frequency) f *= inv_n;
    return h;
}

std::vector<double> subband_coefficients(const LumaVideo& video, int subband,
                                         const PipelineConfig& config) {
    const TemporalFilterBank bank = build_haar_packet(config.levels);
    if (subband < 1 || subband > bank.subband_count())
        throw std::invalid_argument("subband index " + std::to_string(subband) +
                                    " out of range [1, " +
                                    std::to_string(bank.subband_count()) + "]");
    const LumaVideo ds = spatial_downsample(video, config.downsample);
    const SubbandVideo band =
        temporal_filter(ds, bank.filters[static_cast<std::size_t>(subband - 1)]);

    std::vector<double> out;
    out.reserve(band.frames.size() * band.frames[0].samples.size());
    for (const Frame& frame : band.frames)
        for (const float v : frame.samples) out.push_back(static_cast<double>(v));
    return out;
}

}  // namespace gsti
