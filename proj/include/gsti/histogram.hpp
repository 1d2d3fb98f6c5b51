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
#include <vector>

#include "gsti/indices.hpp"
#include "gsti/video.hpp"

namespace gsti {

// Normalized histogram over [-half_range, half_range]; frequencies sum to 1
// (out-of-range values land in the end bins). An odd bin count centers one
// bin on zero.
struct Histogram {
    std::vector<double> centers;
    std::vector<double> frequency;
};

Histogram histogram(std::span<const double> values, int bins, double half_range);

// Pooled subband-k coefficients of a video under the pipeline convention:
// spatial mean-pool by config.downsample, then the level-config.levels
// packet filter for subband k, all frames and pixels flattened.
std::vector<double> subband_coefficients(const LumaVideo& video, int subband,
                                         const PipelineConfig& config);

}  // namespace gsti
