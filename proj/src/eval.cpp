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

#include "gsti/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gsti {

namespace {

void check_lengths(std::span<const double> xs, std::span<const double> ys,
                   std::size_t min_n) {
    if (xs.size() != ys.size()) throw std::invalid_argument("series length mismatch");
    if (xs.size() < min_n)
        throw std::invalid_argument("need at least " + std::to_string(min_n) +
                                    " samples, got " + std::to_string(xs.size()));
}

bool has_spread(std::span<const double> v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] != v[0]) return true;
    return false;
}

// Average ranks (1-based); tied runs share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

// Pairs (i < j) with y[i] > y[j], counted by merge sort.
std::int64_t count_strict_inversions(std::vector<double> v) {
    std::vector<double> buf(v.size());
    std::int64_t inversions = 0;
    for (std::size_t width = 1; width < v.size(); width *= 2) {
        for (std::size_t lo = 0; lo + width < v.size(); lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(mid + width, v.size());
            std::size_t a = lo, b = mid, out = lo;
            while (a < mid && b < hi) {
                if (v[b] < v[a]) {
                    inversions += static_cast<std::int64_t>(mid - a);
                    buf[out++] = v[b++];
                } else {
                    buf[out++] = v[a++];
                }
            }
            while (a < mid) buf[out++] = v[a++];
            while (b < hi) buf[out++] = v[b++];
            std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
                      buf.begin() + static_cast<std::ptrdiff_t>(hi),
                      v.begin() + static_cast<std::ptrdiff_t>(lo));
        }
    }
    return inversions;
}

std::int64_t tied_pairs(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::int64_t pairs = 0;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
        const std::int64_t run = static_cast<std::int64_t>(j - i + 1);
        pairs += run * (run - 1) / 2;
        i = j + 1;
    }
    return pairs;
}

}  // namespace

double plcc(std::span<const double> xs, std::span<const double> ys) {
    check_lengths(xs, ys, 3);
    if (!has_spread(xs) || !has_spread(ys))
        throw std::invalid_argument("correlation undefined: zero variance");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

double srocc(std::span<const double> xs, std::span<const double> ys) {
    check_lengths(xs, ys, 3);
    if (!has_spread(xs) || !has_spread(ys))
        throw std::invalid_argument("correlation undefined: zero variance");
    const std::vector<double> rx = average_ranks(xs);
    const std::vector<double> ry = average_ranks(ys);
    return plcc(rx, ry);
}

double krocc(std::span<const double> xs, std::span<const double> ys) {
    check_lengths(xs, ys, 3);
    if (!has_spread(xs) || !has_spread(ys))
        throw std::invalid_argument("correlation undefined: zero variance");
    const std::size_t n = xs.size();

    // Sort by (x, y); with that ordering the strict y-inversions are exactly
    // the discordant pairs. Tau-a: tied pairs count neither way but stay in
    // the denominator.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (xs[a] != xs[b]) return xs[a] < xs[b];
        return ys[a] < ys[b];
    });
    std::vector<double> y_sorted(n);
    for (std::size_t i = 0; i < n; ++i) y_sorted[i] = ys[order[i]];

    const std::int64_t total = static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
    const std::int64_t discordant = count_strict_inversions(y_sorted);

    std::int64_t ties_x = tied_pairs(std::vector<double>(xs.begin(), xs.end()));
    std::int64_t ties_y = tied_pairs(std::vector<double>(ys.begin(), ys.end()));
    std::int64_t ties_xy = 0;
    {
        std::vector<std::pair<double, double>> pairs(n);
        for (std::size_t i = 0; i < n; ++i) pairs[i] = {xs[i], ys[i]};
        std::sort(pairs.begin(), pairs.end());
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && pairs[j + 1] == pairs[i]) ++j;
            const std::int64_t run = static_cast<std::int64_t>(j - i + 1);
            ties_xy += run * (run - 1) / 2;
            i = j + 1;
        }
    }
    const std::int64_t concordant = total - ties_x - ties_y + ties_xy - discordant;
    return static_cast<double>(concordant - discordant) / static_cast<double>(total);
}

double rmse(std::span<const double> xs, std::span<const double> ys) {
    check_lengths(xs, ys, 3);
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = xs[i] - ys[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

double logistic_eval(const std::array<double, 4>& tau, double s) {
    const double spread = std::max(std::abs(tau[3]), 1e-12);
    double z = -(s - tau[2]) / spread;
    z = std::clamp(z, -700.0, 700.0);
    return (tau[0] - tau[1]) / (1.0 + std::exp(z)) + tau[1];
}

namespace {

double logistic_sse(const std::array<double, 4>& tau, std::span<const double> predicted,
                    std::span<const double> subjective) {
    double acc = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double r = logistic_eval(tau, predicted[i]) - subjective[i];
        acc += r * r;
    }
    return acc;
}

// Nelder-Mead over the four logistic parameters. Derivative-free; restarts
// rebuild the simplex around the incumbent best point.
struct SimplexResult {
    std::array<double, 4> best{};
    double sse = 0.0;
    bool converged = false;
};

SimplexResult nelder_mead(std::array<double, 4> start, std::span<const double> predicted,
                          std::span<const double> subjective) {
    constexpr int kDim = 4;
    constexpr int kMaxIterations = 2000;
    constexpr int kRestarts = 3;
    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

    auto f = [&](const std::array<double, 4>& tau) {
        return logistic_sse(tau, predicted, subjective);
    };

    SimplexResult result;
    result.best = start;
    result.sse = f(start);

    for (int restart = 0; restart <= kRestarts; ++restart) {
        std::array<std::array<double, 4>, kDim + 1> pts;
        std::array<double, kDim + 1> val;
        pts[0] = result.best;
        val[0] = result.sse;
        for (int d = 0; d < kDim; ++d) {
            pts[static_cast<std::size_t>(d) + 1] = result.best;
            const double step = std::max(0.05 * std::abs(result.best[static_cast<std::size_t>(d)]), 0.1);
            pts[static_cast<std::size_t>(d) + 1][static_cast<std::size_t>(d)] += step;
            val[static_cast<std::size_t>(d) + 1] = f(pts[static_cast<std::size_t>(d) + 1]);
        }

        bool settled = false;
        for (int it = 0; it < kMaxIterations; ++it) {
            std::array<std::size_t, kDim + 1> idx{};
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            std::sort(idx.begin(), idx.end(),
                      [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
            const std::size_t lo = idx[0], hi = idx[kDim], next_hi = idx[kDim - 1];

            if (val[hi] - val[lo] <= 1e-15 * (1.0 + std::abs(val[lo]))) {
                settled = true;
                break;
            }

            std::array<double, 4> centroid{};
            for (std::size_t i = 0; i <= kDim; ++i) {
                if (i == hi) continue;
                for (int d = 0; d < kDim; ++d)
                    centroid[static_cast<std::size_t>(d)] += pts[i][static_cast<std::size_t>(d)];
            }
            for (int d = 0; d < kDim; ++d) centroid[static_cast<std::size_t>(d)] /= kDim;

            auto blend = [&](double coef) {
                std::array<double, 4> p;
                for (int d = 0; d < kDim; ++d)
                    p[static_cast<std::size_t>(d)] =
                        centroid[static_cast<std::size_t>(d)] +
                        coef * (centroid[static_cast<std::size_t>(d)] - pts[hi][static_cast<std::size_t>(d)]);
                return p;
            };

            const auto reflected = blend(kReflect);
            const double fr = f(reflected);
            if (fr < val[lo]) {
                const auto expanded = blend(kExpand);
                const double fe = f(expanded);
                if (fe < fr) {
                    pts[hi] = expanded;
                    val[hi] = fe;
                } else {
                    pts[hi] = reflected;
                    val[hi] = fr;
                }
            } else if (fr < val[next_hi]) {
                pts[hi] = reflected;
                val[hi] = fr;
            } else {
                const auto contracted = blend(-kContract);
                const double fc = f(contracted);
                if (fc < val[hi]) {
                    pts[hi] = contracted;
                    val[hi] = fc;
                } else {
                    for (std::size_t i = 0; i <= kDim; ++i) {
                        if (i == lo) continue;
                        for (int d = 0; d < kDim; ++d)
                            pts[i][static_cast<std::size_t>(d)] =
                                pts[lo][static_cast<std::size_t>(d)] +
                                kShrink * (pts[i][static_cast<std::size_t>(d)] -
                                           pts[lo][static_cast<std::size_t>(d)]);
                        val[i] = f(pts[i]);
                    }
                }
            }
        }

        std::size_t best_i = 0;
        for (std::size_t i = 1; i <= kDim; ++i)
            if (val[i] < val[best_i]) best_i = i;
        if (val[best_i] < result.sse) {
            result.sse = val[best_i];
            result.best = pts[best_i];
        }
        result.converged = settled;
        if (settled && restart > 0) break;
    }
    return result;
}

}  // namespace

LogisticFit logistic_fit(std::span<const double> predicted,
                         std::span<const double> subjective) {
    check_lengths(predicted, subjective, 5);
    if (!has_spread(subjective))
        throw std::invalid_argument("logistic fit: degenerate subjective spread");

    std::vector<double> sorted_pred(predicted.begin(), predicted.end());
    std::sort(sorted_pred.begin(), sorted_pred.end());
    const std::size_t n = sorted_pred.size();
    const double median = n % 2 == 1
                              ? sorted_pred[n / 2]
                              : 0.5 * (sorted_pred[n / 2 - 1] + sorted_pred[n / 2]);
    double mean = 0.0;
    for (const double v : predicted) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const double v : predicted) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);

    std::array<double, 4> start{*std::max_element(subjective.begin(), subjective.end()),
                                *std::min_element(subjective.begin(), subjective.end()),
                                median, std::max(std::sqrt(var), 1e-6)};

    const SimplexResult sr = nelder_mead(start, predicted, subjective);

    LogisticFit fit;
    fit.tau = sr.best;
    fit.residual = std::sqrt(sr.sse / static_cast<double>(n));
    fit.converged = sr.converged;
    fit.mapped.reserve(n);
    for (const double v : predicted) fit.mapped.push_back(logistic_eval(sr.best, v));
    return fit;
}

double psnr_video(const LumaVideo& ref, const LumaVideo& dist) {
    if (ref.width != dist.width || ref.height != dist.height)
        throw std::invalid_argument("psnr: resolution mismatch");
    if (ref.frame_count() == 0 || dist.frame_count() == 0)
        throw std::invalid_argument("psnr: empty video");

    if (dist.fps > ref.fps)
        throw std::invalid_argument("psnr: distorted fps exceeds the reference fps");
    const LumaVideo* aligned = &dist;
    LumaVideo upsampled;
    if (dist.fps < ref.fps) {
        upsampled = temporal_upsample_duplicate(dist, ref.fps);
        aligned = &upsampled;
    }

    constexpr double kPeak = 255.0;
    constexpr double kCapDb = 100.0;
    const int frames = std::min(ref.frame_count(), aligned->frame_count());
    const std::size_t pixels = static_cast<std::size_t>(ref.width) * ref.height;
    double total = 0.0;
    for (int t = 0; t < frames; ++t) {
        const float* a = ref.frames[static_cast<std::size_t>(t)].samples.data();
        const float* b = aligned->frames[static_cast<std::size_t>(t)].samples.data();
        double mse = 0.0;
        for (std::size_t i = 0; i < pixels; ++i) {
            const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
            mse += d * d;
        }
        mse /= static_cast<double>(pixels);
        total += mse == 0.0 ? kCapDb
                            : std::min(10.0 * std::log10(kPeak * kPeak / mse), kCapDb);
    }
    return total / static_cast<double>(frames);
}

EvalReport eval_report(const std::vector<EvalRecord>& records) {
    if (records.size() < 3)
        throw std::invalid_argument("evaluation needs at least 3 records");
    for (const auto& r : records)
        if (!std::isfinite(r.predicted) || !std::isfinite(r.subjective))
            throw std::invalid_argument("non-finite score for video '" + r.video_id + "'");

    std::vector<double> predicted, subjective;
    predicted.reserve(records.size());
    subjective.reserve(records.size());
    for (const auto& r : records) {
        predicted.push_back(r.predicted);
        subjective.push_back(r.subjective);
    }

    EvalReport report;

    // One logistic fit per dataset; every row reuses its mapping. With
    // fewer than 5 records the raw predictions stand in for the mapping.
    std::vector<double> mapped;
    if (records.size() >= 5) {
        report.fit = logistic_fit(predicted, subjective);
        mapped = report.fit.mapped;
        if (!report.fit.converged)
            report.notes.push_back("logistic fit hit the iteration cap; using best-so-far");
    } else {
        mapped = predicted;
        report.notes.push_back("logistic fit skipped (fewer than 5 records); raw scores used");
    }

    auto make_row = [&](const std::string& label, std::span<const std::size_t> idx) {
        MetricRow row;
        row.label = label;
        row.count = static_cast<int>(idx.size());
        std::vector<double> p, s, m;
        p.reserve(idx.size());
        s.reserve(idx.size());
        m.reserve(idx.size());
        for (const std::size_t i : idx) {
            p.push_back(predicted[i]);
            s.push_back(subjective[i]);
            m.push_back(mapped[i]);
        }
        row.srocc = srocc(p, s);
        row.krocc = krocc(p, s);
        row.plcc = plcc(m, s);
        row.rmse = rmse(m, s);
        return row;
    };

    std::vector<std::size_t> all(records.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    report.overall = make_row("overall", all);

    std::map<double, std::vector<std::size_t>> by_fps;
    for (std::size_t i = 0; i < records.size(); ++i)
        by_fps[records[i].fps].push_back(i);

    for (const auto& [fps, idx] : by_fps) {
        char label[64];
        std::snprintf(label, sizeof(label), "%g fps", fps);
        if (idx.size() < 3) {
            report.notes.push_back(std::string(label) + ": skipped (" +
                                   std::to_string(idx.size()) + " records < 3)");
            continue;
        }
        try {
            report.groups.push_back(make_row(label, idx));
        } catch (const std::invalid_argument& e) {
            report.notes.push_back(std::string(label) + ": skipped (" + e.what() + ")");
        }
    }
    return report;
}

std::vector<EvalRecord> load_eval_csv(std::istream& stream) {
    std::string line;
    if (!std::getline(stream, line)) throw std::invalid_argument("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool with_content = false;
    if (line == "video_id,fps,predicted,subjective,content_id")
        with_content = true;
    else if (line != "video_id,fps,predicted,subjective")
        throw std::invalid_argument(
            "csv: malformed header (expected video_id,fps,predicted,subjective[,content_id])");

    std::vector<EvalRecord> records;
    std::size_t line_no = 1;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        const std::size_t expected = with_content ? 5 : 4;
        if (fields.size() != expected)
            throw std::runtime_error("csv: line " + std::to_string(line_no) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(expected));
        EvalRecord rec;
        rec.video_id = fields[0];
        try {
            rec.fps = std::stod(fields[1]);
            rec.predicted = std::stod(fields[2]);
            rec.subjective = std::stod(fields[3]);
        } catch (const std::exception&) {
            throw std::runtime_error("csv: line " + std::to_string(line_no) +
                                     ": numeric field parse failure");
        }
        if (with_content) rec.content_id = fields[4];
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<EvalRecord> load_eval_csv_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");
    return load_eval_csv(file);
}

namespace {

nlohmann::ordered_json row_to_json(const MetricRow& row) {
    return {{"label", row.label}, {"count", row.count},   {"srocc", row.srocc},
            {"krocc", row.krocc}, {"plcc", row.plcc},     {"rmse", row.rmse}};
}

}  // namespace

std::string eval_report_to_json(const EvalReport& report) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["overall"] = row_to_json(report.overall);
    doc["groups"] = nlohmann::ordered_json::array();
    for (const auto& g : report.groups) doc["groups"].push_back(row_to_json(g));
    doc["logistic"] = {{"tau", report.fit.tau},
                       {"residual", report.fit.residual},
                       {"converged", report.fit.converged}};
    doc["notes"] = report.notes;
    return doc.dump(2) + "\n";
}

std::string eval_report_table(const EvalReport& report) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s %6s %9s %9s %9s %9s\n", "group", "n",
                  "SROCC", "KROCC", "PLCC", "RMSE");
    out += line;
    auto add_row = [&](const MetricRow& row) {
        std::snprintf(line, sizeof(line), "%-12s %6d %9.4f %9.4f %9.4f %9.4f\n",
                      row.label.c_str(), row.count, row.srocc, row.krocc, row.plcc,
                      row.rmse);
        out += line;
    };
    for (const auto& g : report.groups) add_row(g);
    add_row(report.overall);
    for (const auto& note : report.notes) out += "note: " + note + "\n";
    return out;
}

}  // namespace gsti
