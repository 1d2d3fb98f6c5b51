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

#include <algorithm>
#include <cmath>
#include <random>

#include "gsti/ggd.hpp"
#include "test_support.hpp"

using gsti::GgdParams;

TEST_CASE("ggd_kurtosis closed-form anchors") {
    CHECK(gsti::ggd_kurtosis(2.0) == doctest::Approx(3.0).epsilon(1e-12));   // Gaussian
    CHECK(gsti::ggd_kurtosis(1.0) == doctest::Approx(6.0).epsilon(1e-12));   // Laplacian
    // Gamma(10) Gamma(2) / Gamma(6)^2 = 362880 / 14400
    CHECK(gsti::ggd_kurtosis(0.5) == doctest::Approx(25.2).epsilon(1e-12));
    CHECK_THROWS_AS(gsti::ggd_kurtosis(0.0), std::invalid_argument);
    CHECK_THROWS_AS(gsti::ggd_kurtosis(-1.0), std::invalid_argument);
}

TEST_CASE("kurtosis is strictly decreasing over the estimation grid") {
    double prev = gsti::ggd_kurtosis(gsti::kBetaGridMin);
    for (double beta = gsti::kBetaGridMin + gsti::kBetaGridStep; beta <= gsti::kBetaGridMax;
         beta += gsti::kBetaGridStep) {
        const double k = gsti::ggd_kurtosis(beta);
        REQUIRE(k < prev);
        prev = k;
    }
}

TEST_CASE("invert_kurtosis anchors and clamping") {
    CHECK(gsti::invert_kurtosis(3.0) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(gsti::invert_kurtosis(6.0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(gsti::invert_kurtosis(25.2) == doctest::Approx(0.5).epsilon(1e-3));
    // Below the attainable range clamps to the flattest grid shape, above to
    // the spikiest.
    CHECK(gsti::invert_kurtosis(1.0) == doctest::Approx(gsti::kBetaGridMax));
    CHECK(gsti::invert_kurtosis(1e30) == doctest::Approx(gsti::kBetaGridMin));
    CHECK_THROWS_AS(gsti::invert_kurtosis(std::nan("")), std::invalid_argument);
}

TEST_CASE("invert_kurtosis round-trips the grid to one step") {
    for (double beta = gsti::kBetaGridMin; beta <= gsti::kBetaGridMax; beta += 0.0137) {
        const double recovered = gsti::invert_kurtosis(gsti::ggd_kurtosis(beta));
        CHECK(std::abs(recovered - beta) <= gsti::kBetaGridStep + 1e-12);
    }
    // Larger kurtosis maps to smaller beta.
    CHECK(gsti::invert_kurtosis(20.0) < gsti::invert_kurtosis(4.0));
}

TEST_CASE("ggd_alpha anchors") {
    CHECK(gsti::ggd_alpha(1.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(gsti::ggd_alpha(1.0, 1.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(gsti::ggd_alpha(0.0, 1.5) == 0.0);
    CHECK_THROWS_AS(gsti::ggd_alpha(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("ggd_entropy matches the Gaussian and Laplacian closed forms") {
    const double gaussian = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
    GgdParams g{gsti::ggd_alpha(1.0, 2.0), 2.0, 1.0};
    CHECK(gsti::ggd_entropy(g) == doctest::Approx(gaussian).epsilon(1e-9));

    GgdParams l{1.0, 1.0, 2.0};
    CHECK(gsti::ggd_entropy(l) == doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("ggd_entropy agrees with a Monte Carlo plug-in estimate at beta 0.5") {
    const double alpha = gsti::ggd_alpha(1.0, 0.5);
    GgdParams p{alpha, 0.5, 1.0};
    std::mt19937_64 rng(20260810);
    const auto samples = testsupport::sample_ggd(1'000'000, alpha, 0.5, rng);
    const double mc = testsupport::mc_entropy_oracle(samples, alpha, 0.5);
    CHECK(gsti::ggd_entropy(p) == doctest::Approx(mc).epsilon(0.01));
}

TEST_CASE("ggd_entropy is increasing in alpha at fixed beta") {
    for (const double beta : {0.7, 1.0, 2.0, 4.0}) {
        double prev = -1e300;
        for (const double alpha : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const double h = gsti::ggd_entropy(GgdParams{alpha, beta, 0.0});
            CHECK(h > prev);
            prev = h;
        }
    }
}

TEST_CASE("latent_block_params recovers a clean Gaussian with no noise") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> normal(0.0, 2.0);  // sigma^2 = 4
    std::vector<double> block(100'000);
    for (double& v : block) v = normal(rng);
    const GgdParams p = gsti::latent_block_params(block, 0.0);
    CHECK(p.beta == doctest::Approx(2.0).epsilon(0.05));
    CHECK(p.sigma2 == doctest::Approx(4.0).epsilon(0.05));
    CHECK(p.alpha == doctest::Approx(gsti::ggd_alpha(std::sqrt(p.sigma2), p.beta))
                          .epsilon(1e-12));
}

TEST_CASE("latent_block_params floors a degenerate block") {
    const std::vector<double> zeros(25, 0.0);
    const GgdParams p = gsti::latent_block_params(zeros, 0.1);
    CHECK(p.sigma2 == gsti::kSigmaFloor);
    CHECK(p.beta == doctest::Approx(gsti::kBetaGridMax));  // clamped default
    CHECK_THROWS_AS(gsti::latent_block_params({}, 0.1), std::invalid_argument);
}

TEST_CASE("latent_block_params undoes the additive Gaussian channel") {
    // Observed = latent Laplacian (sigma^2 = 2) + N(0, 0.1), the channel the
    // moment corrections are derived from.
    std::mt19937_64 rng(20260401);
    const double alpha = gsti::ggd_alpha(std::sqrt(2.0), 1.0);
    auto latent = testsupport::sample_ggd(100'000, alpha, 1.0, rng);
    std::normal_distribution<double> noise(0.0, std::sqrt(0.1));
    for (double& v : latent) v += noise(rng);

    const GgdParams p = gsti::latent_block_params(latent, 0.1);
    CHECK(p.beta == doctest::Approx(1.0).epsilon(0.10));
    CHECK(p.sigma2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("zero noise variance reduces to plain moment matching") {
    std::mt19937_64 rng(733);
    const auto block = testsupport::sample_ggd(5'000, 3.0, 1.3, rng);
    const GgdParams fit = gsti::latent_block_params(block, 0.0);

    double m2 = 0.0, m4 = 0.0;
    for (const double v : block) {
        m2 += v * v;
        m4 += v * v * v * v;
    }
    m2 /= static_cast<double>(block.size());
    m4 /= static_cast<double>(block.size());
    CHECK(fit.sigma2 == doctest::Approx(m2).epsilon(1e-12));
    CHECK(fit.beta == doctest::Approx(gsti::invert_kurtosis(m4 / (m2 * m2))).epsilon(1e-12));
}

TEST_CASE("parameter recovery tightens with sample size") {
    const double true_beta = 1.5;
    const double true_sigma2 = 3.0;
    const double alpha = gsti::ggd_alpha(std::sqrt(true_sigma2), true_beta);
    const std::size_t sizes[] = {1'000, 10'000, 100'000};
    const double beta_tol[] = {0.25, 0.12, 0.06};
    std::mt19937_64 rng(555);
    for (int i = 0; i < 3; ++i) {
        const auto block = testsupport::sample_ggd(sizes[i], alpha, true_beta, rng);
        const GgdParams p = gsti::latent_block_params(block, 0.0);
        CAPTURE(sizes[i]);
        CHECK(p.beta == doctest::Approx(true_beta).epsilon(beta_tol[i]));
        CHECK(p.sigma2 == doctest::Approx(true_sigma2).epsilon(beta_tol[i]));
    }
}

TEST_CASE("scaled_entropy of a degenerate block is exactly zero") {
    const std::vector<double> zeros(25, 0.0);
    const gsti::ScaledEntropy s = gsti::scaled_entropy(zeros, 0.1);
    CHECK(s.gamma == 0.0);
    CHECK(s.epsilon == 0.0);
}

TEST_CASE("scaled_entropy composes the scaling factor with the closed form") {
    // Gaussian-shaped block rescaled to unit sample variance: epsilon should
    // land on log(2) times the unit-Gaussian entropy.
    std::mt19937_64 rng(97);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> block(200'000);
    double m2 = 0.0;
    for (double& v : block) {
        v = normal(rng);
        m2 += v * v;
    }
    m2 /= static_cast<double>(block.size());
    for (double& v : block) v /= std::sqrt(m2);

    const gsti::ScaledEntropy s = gsti::scaled_entropy(block, 0.0);
    const double expect =
        std::log(2.0) * 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
    CHECK(s.gamma == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(s.epsilon == doctest::Approx(expect).epsilon(0.01));
    CHECK(s.epsilon == doctest::Approx(s.gamma * s.raw_entropy).epsilon(1e-12));
}

TEST_CASE("scaled_entropy is permutation invariant") {
    std::mt19937_64 rng(1001);
    auto block = testsupport::sample_ggd(25, 5.0, 1.1, rng);
    const gsti::ScaledEntropy a = gsti::scaled_entropy(block, 0.1);
    std::shuffle(block.begin(), block.end(), rng);
    const gsti::ScaledEntropy b = gsti::scaled_entropy(block, 0.1);
    CHECK(a.epsilon == doctest::Approx(b.epsilon).epsilon(1e-12));
    CHECK(a.gamma == doctest::Approx(b.gamma).epsilon(1e-12));
    CHECK(a.raw_entropy == doctest::Approx(b.raw_entropy).epsilon(1e-12));
}
