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

#include "gsti/video.hpp"

namespace gsti {

// Band-pass members of a full Haar wavelet-packet tree. filters[k-1] holds
// subband k; filters are ordered by sequency (zero-crossing count), so a
// higher k means a larger center frequency. The all-positive low-pass
// member is excluded, leaving 2^levels - 1 filters of length 2^levels.
struct TemporalFilterBank {
    int levels = 0;
    std::vector<std::vector<double>> filters;

    int filter_length() const { return 1 << levels; }
    int subband_count() const { return static_cast<int>(filters.size()); }
};

// levels in [1, 6]. Every filter sums to zero and the full packet set
// (including the dropped low-pass) is orthonormal.
TemporalFilterBank build_haar_packet(int levels);

// One subband of temporal band-pass coefficients. Output frame t is the
// valid (unpadded) response over source frames [t, t + filter_length).
struct SubbandVideo {
    int subband = 0;
    int filter_length = 0;
    std::vector<Frame> frames;
};

// Per-pixel 1D correlation along time, valid positions only:
// out[t] = sum_tau filter[tau] * frame[t + tau].
SubbandVideo temporal_filter(const LumaVideo& video, std::span<const double> filter);

// Unit-sum 1D Gaussian over offsets [-half_width, half_width].
std::vector<double> gaussian_window_1d(int half_width, double sigma);

// Mean-subtracted coefficients: pixel minus its Gaussian-weighted local
// mean, window 15x15 (half width 7, sigma 7/3, i.e. sampled out to three
// standard deviations). Borders reflect symmetrically, so a constant frame
// maps to exactly zero at every pixel, whatever the frame size.
Frame spatial_ms(const Frame& frame, int half_width = 7);

}  // namespace gsti
