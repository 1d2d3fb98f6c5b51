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

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gsti/video.hpp"

namespace gsti {

struct EvalRecord {
    std::string video_id;
    double fps = 0.0;
    double predicted = 0.0;
    double subjective = 0.0;  // MOS
    std::string content_id;
};

// Rank and linear agreement between two equal-length series (n >= 3).
// Spearman uses average ranks for ties; Kendall is tau-a with tied pairs
// counted neither way. Zero variance in either argument throws.
double srocc(std::span<const double> xs, std::span<const double> ys);
double krocc(std::span<const double> xs, std::span<const double> ys);
double plcc(std::span<const double> xs, std::span<const double> ys);
double rmse(std::span<const double> xs, std::span<const double> ys);

// Monotone four-parameter logistic Q(s) = (t1 - t2)/(1 + exp(-(s - t3)/|t4|)) + t2
// fitted by least squares with a derivative-free simplex search.
struct LogisticFit {
    std::array<double, 4> tau{};
    double residual = 0.0;  // root mean squared fit residual
    bool converged = true;
    std::vector<double> mapped;  // Q(predicted), input to PLCC/RMSE
};

// n >= 5 and subjective must have nonzero spread. On hitting the iteration
// cap the best-so-far fit is returned with converged = false.
LogisticFit logistic_fit(std::span<const double> predicted,
                         std::span<const double> subjective);

// Evaluates Q at one score using a fitted parameter set.
double logistic_eval(const std::array<double, 4>& tau, double s);

// Frame-averaged luma PSNR, peak 255, capped at 100 dB. When the distorted
// video runs at a lower rate it is first frame-duplicated up to the
// reference rate. Requires equal resolutions.
double psnr_video(const LumaVideo& ref, const LumaVideo& dist);

struct MetricRow {
    std::string label;
    int count = 0;
    double srocc = 0.0;
    double krocc = 0.0;
    double plcc = 0.0;
    double rmse = 0.0;
};

struct EvalReport {
    MetricRow overall;
    std::vector<MetricRow> groups;  // per frame rate, ascending
    std::vector<std::string> notes;
    LogisticFit fit;  // one fit per dataset; group rows reuse its mapping
};

// Overall correlations plus the same metrics per fps group; groups with
// fewer than 3 records are skipped with a note. Requires >= 3 records.
EvalReport eval_report(const std::vector<EvalRecord>& records);

// CSV with header video_id,fps,predicted,subjective[,content_id].
std::vector<EvalRecord> load_eval_csv(std::istream& stream);
std::vector<EvalRecord> load_eval_csv_file(const std::string& path);

std::string eval_report_to_json(const EvalReport& report);
std::string eval_report_table(const EvalReport& report);

}  // namespace gsti
