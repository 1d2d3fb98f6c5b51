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

#include "gsti/bandpass.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsti {

namespace {

int sequency(const std::vector<double>& filter) {
    int crossings = 0;
    for (std::size_t i = 1; i < filter.size(); ++i)
        if ((filter[i] < 0.0) != (filter[i - 1] < 0.0)) ++crossings;
    return crossings;
}

}  // namespace

TemporalFilterBank build_haar_packet(int levels) {
    if (levels < 1 || levels > 6)
        throw std::invalid_argument("haar packet levels must be in [1, 6]");

    const double a = 1.0 / std::sqrt(2.0);

    // Equivalent analysis filters of the full packet tree. The cascade
    // "filter c, decimate by 2" at depth l contributes c(z^(2^(l-1))), so a
    // node's filter is the parent convolved with the 2-tap Haar pair
    // upsampled by 2^(l-1).
    std::vector<std::vector<double>> nodes{{1.0}};
    for (int level = 0; level < levels; ++level) {
        const std::size_t up = std::size_t{1} << level;
        std::vector<std::vector<double>> next;
        next.reserve(nodes.size() * 2);
        for (const auto& parent : nodes) {
            std::vector<double> low(parent.size() + up, 0.0);
            std::vector<double> high(parent.size() + up, 0.0);
            for (std::size_t i = 0; i < parent.size(); ++i) {
                low[i] += a * parent[i];
                low[i + up] += a * parent[i];
                high[i] += a * parent[i];
                high[i + up] -= a * parent[i];
            }
            next.push_back(std::move(low));
            next.push_back(std::move(high));
        }
        nodes = std::move(next);
    }

    // Sequency (zero-crossing count) orders the subbands by center
    // frequency; the sequency-0 node is the low-pass member and is dropped.
    std::sort(nodes.begin(), nodes.end(), [](const auto& x, const auto& y) {
        return sequency(x) < sequency(y);
    });

    TemporalFilterBank bank;
    bank.levels = levels;
    bank.filters.assign(nodes.begin() + 1, nodes.end());
    return bank;
}

SubbandVideo temporal_filter(const LumaVideo& video, std::span<const double> filter) {
    const int taps = static_cast<int>(filter.size());
    if (taps < 1) throw std::invalid_argument("temporal filter is empty");
    if (video.frame_count() < taps)
        throw std::invalid_argument("too few frames (" +
                                    std::to_string(video.frame_count()) + ") for a " +
                                    std::to_string(taps) + "-tap temporal filter");

    const int out_count = video.frame_count() - taps + 1;
    const std::size_t pixels = static_cast<std::size_t>(video.width) * video.height;

    double tap_sum = 0.0;
    for (const double w : filter) tap_sum += w;
    const bool band_pass = std::abs(tap_sum) < 1e-12;

    SubbandVideo out;
    out.filter_length = taps;
    out.frames.reserve(static_cast<std::size_t>(out_count));
    std::vector<double> acc(pixels);
    for (int t = 0; t < out_count; ++t) {
        std::fill(acc.begin(), acc.end(), 0.0);
        if (band_pass) {
            // Taps applied to differences from the window's leading frame:
            // the same response for a zero-sum filter, but a constant input
            // cancels to exact zeros.
            const float* base = video.frames[static_cast<std::size_t>(t)].samples.data();
            for (int tau = 1; tau < taps; ++tau) {
                const float* src =
                    video.frames[static_cast<std::size_t>(t + tau)].samples.data();
                const double w = filter[static_cast<std::size_t>(tau)];
                for (std::size_t i = 0; i < pixels; ++i)
                    acc[i] += w * (static_cast<double>(src[i]) - static_cast<double>(base[i]));
            }
        } else {
            for (int tau = 0; tau < taps; ++tau) {
                const float* src =
                    video.frames[static_cast<std::size_t>(t + tau)].samples.data();
                const double w = filter[static_cast<std::size_t>(tau)];
                for (std::size_t i = 0; i < pixels; ++i) acc[i] += w * src[i];
            }
        }
        Frame frame(video.width, video.height);
        for (std::size_t i = 0; i < pixels; ++i)
            frame.samples[i] = static_cast<float>(acc[i]);
        out.frames.push_back(std::move(frame));
    }
    return out;
}

std::vector<double> gaussian_window_1d(int half_width, double sigma) {
    if (half_width < 0 || sigma <= 0.0)
        throw std::invalid_argument("bad gaussian window parameters");
    std::vector<double> w(static_cast<std::size_t>(2 * half_width + 1));
    double total = 0.0;
    for (int g = -half_width; g <= half_width; ++g) {
        const double v = std::exp(-0.5 * (g / sigma) * (g / sigma));
        w[static_cast<std::size_t>(g + half_width)] = v;
        total += v;
    }
    for (double& v : w) v /= total;
    return w;
}

namespace {

// Symmetric half-sample reflection (... c b a | a b c | c b a ...) for any
// offset; a single-pixel axis degenerates to constant extension.
inline int reflect(int i, int n) {
    const int period = 2 * n;
    int m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
}

}  // namespace

Frame spatial_ms(const Frame& frame, int half_width) {
    if (frame.width < 1 || frame.height < 1)
        throw std::invalid_argument("spatial_ms: empty frame");

    const double sigma = static_cast<double>(half_width) / 3.0;
    const std::vector<double> w = gaussian_window_1d(half_width, sigma);
    const int span = 2 * half_width + 1;

    // Reflected sample positions, tabulated once per axis.
    std::vector<int> rows(static_cast<std::size_t>(frame.height) * span);
    std::vector<int> cols(static_cast<std::size_t>(frame.width) * span);
    for (int i = 0; i < frame.height; ++i)
        for (int g = 0; g < span; ++g)
            rows[static_cast<std::size_t>(i) * span + g] =
                reflect(i + g - half_width, frame.height);
    for (int j = 0; j < frame.width; ++j)
        for (int h = 0; h < span; ++h)
            cols[static_cast<std::size_t>(j) * span + h] =
                reflect(j + h - half_width, frame.width);

    // Written as a weighted sum of differences from the center pixel, which
    // is exact for unit-sum weights: a constant frame maps to zero bits.
    Frame out(frame.width, frame.height);
    for (int i = 0; i < frame.height; ++i) {
        const int* row_idx = rows.data() + static_cast<std::size_t>(i) * span;
        for (int j = 0; j < frame.width; ++j) {
            const int* col_idx = cols.data() + static_cast<std::size_t>(j) * span;
            const double center = frame.at(i, j);
            double acc = 0.0;
            for (int g = 0; g < span; ++g) {
                const float* line =
                    frame.samples.data() + static_cast<std::size_t>(row_idx[g]) * frame.width;
                double line_acc = 0.0;
                for (int h = 0; h < span; ++h)
                    line_acc += w[static_cast<std::size_t>(h)] * (center - line[col_idx[h]]);
                acc += w[static_cast<std::size_t>(g)] * line_acc;
            }
            out.at(i, j) = static_cast<float>(acc);
        }
    }
    return out;
}

}  // namespace gsti
