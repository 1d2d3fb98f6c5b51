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

#include "gsti/ggd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gsti {

namespace {

// std::lgamma writes the global signgam on glibc, which races under the
// pipeline's worker threads; lgamma_r keeps the sign local.
double log_gamma(double x) {
#ifdef __GLIBC__
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

struct BetaGrid {
    std::vector<double> beta;
    std::vector<double> kurtosis;  // strictly decreasing in beta
};

const BetaGrid& beta_grid() {
    static const BetaGrid grid = [] {
        BetaGrid g;
        const int n =
            static_cast<int>(std::llround((kBetaGridMax - kBetaGridMin) / kBetaGridStep)) + 1;
        g.beta.reserve(static_cast<std::size_t>(n));
        g.kurtosis.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double b = kBetaGridMin + i * kBetaGridStep;
            g.beta.push_back(b);
            g.kurtosis.push_back(ggd_kurtosis(b));
        }
        return g;
    }();
    return grid;
}

struct LatentMoments {
    double sigma2_raw = 0.0;  // m2 - noise_var, may be negative
    double sigma2 = 0.0;      // floored at kSigmaFloor
    double kurtosis = 0.0;    // clamped to the grid range
};

LatentMoments latent_moments(std::span<const double> block, double noise_var) {
    if (block.empty()) throw std::invalid_argument("empty coefficient block");
    if (noise_var < 0.0) throw std::invalid_argument("noise variance must be >= 0");

    double m2 = 0.0, m4 = 0.0;
    for (const double v : block) {
        const double v2 = v * v;
        m2 += v2;
        m4 += v2 * v2;
    }
    const double inv_m = 1.0 / static_cast<double>(block.size());
    m2 *= inv_m;
    m4 *= inv_m;

    LatentMoments out;
    out.sigma2_raw = m2 - noise_var;
    out.sigma2 = std::max(out.sigma2_raw, kSigmaFloor);

    const auto& grid = beta_grid();
    const double kurt_min = grid.kurtosis.back();    // beta -> grid max
    const double kurt_max = grid.kurtosis.front();   // beta -> grid min

    // Fourth-moment additivity under the independent Gaussian channel,
    // floored so the latent kurtosis never drops below the attainable range.
    const double s4 = out.sigma2 * out.sigma2;
    const double m4_latent =
        std::max(m4 - 6.0 * out.sigma2 * noise_var - 3.0 * noise_var * noise_var,
                 kurt_min * s4);
    out.kurtosis = std::clamp(m4_latent / s4, kurt_min, kurt_max);
    return out;
}

}  // namespace

double ggd_kurtosis(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("ggd shape must be positive");
    return std::exp(log_gamma(5.0 / beta) + log_gamma(1.0 / beta) -
                    2.0 * log_gamma(3.0 / beta));
}

double invert_kurtosis(double kurtosis) {
    if (std::isnan(kurtosis)) throw std::invalid_argument("kurtosis is NaN");
    const auto& grid = beta_grid();
    const double k = std::clamp(kurtosis, grid.kurtosis.back(), grid.kurtosis.front());

    // grid.kurtosis decreases with beta: binary search on the reversed order,
    // then pick the neighbor with the smaller absolute error.
    const auto it = std::lower_bound(grid.kurtosis.begin(), grid.kurtosis.end(), k,
                                     [](double cell, double target) { return cell > target; });
    std::size_t hi = static_cast<std::size_t>(it - grid.kurtosis.begin());
    if (hi == grid.kurtosis.size()) --hi;
    std::size_t best = hi;
    if (hi > 0 &&
        std::abs(grid.kurtosis[hi - 1] - k) <= std::abs(grid.kurtosis[hi] - k))
        best = hi - 1;
    return grid.beta[best];
}

double ggd_alpha(double sigma, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("ggd shape must be positive");
    if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    return sigma * std::exp(0.5 * (log_gamma(1.0 / beta) - log_gamma(3.0 / beta)));
}

double ggd_entropy(const GgdParams& params) {
    if (!(params.beta > 0.0) || !(params.alpha > 0.0))
        throw std::invalid_argument("ggd entropy needs alpha > 0 and beta > 0");
    return 1.0 / params.beta - std::log(params.beta / 2.0) + std::log(params.alpha) +
           log_gamma(1.0 / params.beta);
}

GgdParams latent_block_params(std::span<const double> block, double noise_var) {
    const LatentMoments m = latent_moments(block, noise_var);
    GgdParams params;
    params.sigma2 = m.sigma2;
    params.beta = invert_kurtosis(m.kurtosis);
    params.alpha = ggd_alpha(std::sqrt(m.sigma2), params.beta);
    return params;
}

ScaledEntropy scaled_entropy(std::span<const double> block, double noise_var) {
    const LatentMoments m = latent_moments(block, noise_var);
    GgdParams params;
    params.sigma2 = m.sigma2;
    params.beta = invert_kurtosis(m.kurtosis);
    params.alpha = ggd_alpha(std::sqrt(m.sigma2), params.beta);

    ScaledEntropy out;
    out.raw_entropy = ggd_entropy(params);
    out.gamma = std::log1p(std::max(m.sigma2_raw, 0.0));
    out.epsilon = out.gamma == 0.0 ? 0.0 : out.gamma * out.raw_entropy;
    return out;
}

}  // namespace gsti
