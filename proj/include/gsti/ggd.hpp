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

namespace gsti {

// Zero-mean generalized Gaussian model of one coefficient block.
// sigma2 = alpha^2 * Gamma(3/beta) / Gamma(1/beta) by construction.
struct GgdParams {
    double alpha = 0.0;   // scale, coefficient units
    double beta = 0.0;    // shape, dimensionless (2 = Gaussian, 1 = Laplacian)
    double sigma2 = 0.0;  // variance, coefficient units squared
};

// Scaled differential entropy of one block. epsilon = gamma * raw_entropy,
// with gamma = log(1 + latent variance); low-variance regions get small
// scaling factors, damping unstable entropy estimates.
struct ScaledEntropy {
    double epsilon = 0.0;
    double raw_entropy = 0.0;  // nats
    double gamma = 0.0;
};

// Shape-estimation grid and degenerate-block floor.
inline constexpr double kBetaGridMin = 0.05;
inline constexpr double kBetaGridMax = 10.0;
inline constexpr double kBetaGridStep = 0.001;
inline constexpr double kSigmaFloor = 1e-6;  // variance floor, native luma scale^2

// Kurtosis of a GGD with shape beta: Gamma(5/b) Gamma(1/b) / Gamma(3/b)^2.
// Strictly decreasing in beta; 3 at beta = 2, 6 at beta = 1.
double ggd_kurtosis(double beta);

// Inverse of ggd_kurtosis on the fixed grid, minimizing the absolute
// kurtosis error. Inputs outside the attainable range clamp to the grid
// ends; NaN throws.
double invert_kurtosis(double kurtosis);

// Scale from standard deviation and shape: sigma * sqrt(G(1/b) / G(3/b)).
double ggd_alpha(double sigma, double beta);

// Closed-form differential entropy in nats:
// 1/beta - log(beta / (2 alpha Gamma(1/beta))).
double ggd_entropy(const GgdParams& params);

// Fits the latent (pre-noise) GGD to an observed block under the additive
// Gaussian channel B = B~ + W, W ~ N(0, noise_var). Second and fourth
// moments are additive under independence, so
//   latent var     = m2 - noise_var            (floored at kSigmaFloor)
//   latent 4th mom = m4 - 6*var*noise_var - 3*noise_var^2
// and the latent kurtosis, clamped to the grid range, selects beta.
// Moments are the biased divide-by-M estimators about zero.
GgdParams latent_block_params(std::span<const double> block, double noise_var);

// gamma = log(1 + latent variance), epsilon = gamma * ggd_entropy(fit).
// For the scaling factor the latent variance is clamped at zero rather
// than kSigmaFloor, so a degenerate block yields gamma = epsilon = 0.
ScaledEntropy scaled_entropy(std::span<const double> block, double noise_var);

}  // namespace gsti
